#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cullenrec/baker.hpp"
#include "cullenrec/errors.hpp"
#include "cullenrec/io.hpp"
#include "cullenrec/reduction.hpp"
#include "cullenrec/search.hpp"

namespace {

using namespace cullenrec;

// 0 success, 1 bad input, 2 hypothesis failure, 3 precision exhausted,
// 4 reduction scale cap, 5 expectation mismatch.
constexpr int kExitInput = 1;
constexpr int kExitHypotheses = 2;
constexpr int kExitPrecision = 3;
constexpr int kExitScaleCap = 4;
constexpr int kExitMismatch = 5;

mpz_class parse_mpz(const std::string& text, const char* what) {
	try {
		return mpz_class(text);
	} catch (const std::invalid_argument&) {
		throw InvalidSpec(std::string(what) + " is not a decimal integer: " + text);
	}
}

mpfr_prec_t resolve_precision(long flag_bits) {
	long bits = flag_bits;
	if (bits == 0) {
		if (const char* raw = std::getenv("CULLENREC_PRECISION")) {
			char* end = nullptr;
			bits = std::strtol(raw, &end, 10);
			if (!end || *end != '\0') bits = -1;
		} else {
			return kDefaultPrecision;
		}
	}
	if (bits < 64 || bits > kPrecisionCap)
		throw InvalidSpec("precision must be an integer in [64, 8192]");
	return static_cast<mpfr_prec_t>(bits);
}

void emit(const std::string& text, const std::string& path) {
	if (path.empty()) {
		std::cout << text << "\n";
		return;
	}
	std::ofstream out(path);
	if (!out) throw InvalidSpec("cannot write output file " + path);
	out << text << "\n";
}

ProblemInstance instance_from_flags(const std::string& spec_path, const std::string& x_text,
                                    int k, const std::string& q_text) {
	if (spec_path.empty()) throw InvalidSpec("general target needs --spec");
	ProblemInstance instance;
	instance.spec = load_recurrence(spec_path);
	instance.shift = parse_poly(q_text);
	instance.base = parse_mpz(x_text, "--x");
	instance.terms = k;
	instance.validate();
	return instance;
}

void ledger_table(const BoundLedger& ledger) {
	std::cerr << "mode " << to_string(ledger.mode) << ", " << ledger.entries.size()
	          << " constants\n";
	for (const auto& e : ledger.entries)
		std::cerr << "  " << e.name << " = [" << e.value.lo_string(6) << ", "
		          << e.value.hi_string(6) << "]\n";
	for (const auto& s : ledger.stage_bounds) {
		std::cerr << "  " << s.target << " <= " << s.coefficient.hi_string(6);
		if (s.log_x_power) std::cerr << " (log x)^" << s.log_x_power;
		if (s.log_n_power) std::cerr << " (log n_1)^" << s.log_n_power;
		if (s.resolved) std::cerr << ", resolved " << s.resolved->get_str();
		std::cerr << "\n";
	}
}

void campaign_table(const CampaignReport& report) {
	std::cerr << (report.certified ? "certified" : "replay") << " campaign, initial n_1 <= "
	          << report.initial_bound.get_str() << ", ell <= " << report.initial_ell.get_str()
	          << "\n";
	for (const auto& s : report.stages)
		std::cerr << "  " << s.name << ": " << s.subproblems << " subproblems -> "
		          << s.bound.get_str() << " (attempts <= " << s.max_attempts_seen << ")\n";
	std::cerr << "  final: n_1 - n_2 <= " << report.gap_bound.get_str() << ", n_1 <= "
	          << report.absolute_bound.get_str() << "\n";
}

} // namespace

int main(int argc, char** argv) {
	CLI::App app{"bound chains, lattice reduction and exhaustive search for\n"
	             "U_{n_1} + ... + U_{n_k} = ell x^ell + Q(x)"};
	app.require_subcommand(1);

	const std::map<std::string, BoundMode> mode_names{{"replay", BoundMode::Replay},
	                                                  {"rigorous", BoundMode::Rigorous}};
	std::string target, spec_path, q_text = "0", x_text = "2", output;
	std::string gap_text, n1_text, ell_text, expect_path;
	BoundMode mode = BoundMode::Rigorous;
	int workers = 1, k = 1, terms = 2, stage = 0;
	long n1_max = 0, ell_max = 0, k_max = 10000, precision_flag = 0;

	const auto add_common = [&](CLI::App* cmd) {
		cmd->add_option("--precision", precision_flag, "working precision in bits [64, 8192]");
		cmd->add_option("-o,--output", output, "write JSON here instead of stdout");
	};
	const auto add_instance = [&](CLI::App* cmd) {
		cmd->add_option("target", target, "fib preset or general")
		    ->required()
		    ->check(CLI::IsMember({"fib", "general"}));
		cmd->add_option("--spec", spec_path, "recurrence JSON (general target)");
		cmd->add_option("--x", x_text, "base x >= 2 (general target)");
		cmd->add_option("--k", k, "number of terms (general target)");
		cmd->add_option("--q", q_text, "shift polynomial Q(x) (general target)");
	};
	const auto add_mode = [&](CLI::App* cmd) {
		cmd->add_option("--mode", mode, "replay or rigorous")
		    ->transform(CLI::CheckedTransformer(mode_names, CLI::ignore_case));
	};

	CLI::App* bound = app.add_subcommand("bound", "run the bound chain, print the ledger");
	add_instance(bound);
	add_mode(bound);
	add_common(bound);

	CLI::App* reduce = app.add_subcommand("reduce", "run lattice reduction stages");
	reduce->add_option("target", target, "only the fib preset reduces")
	    ->required()
	    ->check(CLI::IsMember({"fib"}));
	reduce->add_option("--stage", stage, "1 = gap only, 2 = absolute only (needs --gap)")
	    ->check(CLI::Range(1, 2));
	reduce->add_option("--gap", gap_text, "gap bound fed into stage 2");
	reduce->add_option("--n1-bound", n1_text, "override the chain's absolute bound");
	reduce->add_option("--ell-bound", ell_text, "override the chain's ell bound");
	reduce->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
	add_mode(reduce);
	add_common(reduce);

	CLI::App* search = app.add_subcommand("search", "enumerate all solutions in a box");
	add_instance(search);
	search->add_option("--ell-max", ell_max, "largest exponent ell")->required();
	search->add_option("--n1-max", n1_max, "largest index n_1")->required();
	search->add_option("--terms", terms, "fib preset term count (1 or 2)");
	search->add_option("--expect", expect_path, "solution-list JSON; exit 5 unless equal as sets");
	add_common(search);

	CLI::App* verify = app.add_subcommand(
	    "verify-counterexample", "certify the order-3 recurrence that defeats growth arguments");
	verify->add_option("--k-max", k_max, "verify the families 6k+1, 6k+2 for k <= this");
	add_common(verify);

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError& err) {
		const int code = app.exit(err);
		return code == 0 ? 0 : kExitInput;
	}

	try {
		const mpfr_prec_t precision = resolve_precision(precision_flag);

		if (bound->parsed()) {
			BoundLedger ledger;
			if (target == "fib") {
				if (!spec_path.empty())
					throw InvalidSpec("the fib preset takes no --spec");
				ledger = fibonacci_bound_chain(mode, precision);
			} else {
				ledger = bound_chain(instance_from_flags(spec_path, x_text, k, q_text), mode,
				                     precision);
			}
			emit(ledger_to_json(ledger), output);
			ledger_table(ledger);
			return 0;
		}

		if (reduce->parsed()) {
			if (stage == 0) {
				CampaignReport report = fibonacci_reduction_campaign(mode, workers, precision);
				emit(campaign_to_json(report), output);
				campaign_table(report);
				return 0;
			}
			mpz_class n1_bound, ell_bound;
			if (!n1_text.empty() && !ell_text.empty()) {
				n1_bound = parse_mpz(n1_text, "--n1-bound");
				ell_bound = parse_mpz(ell_text, "--ell-bound");
			} else if (n1_text.empty() && ell_text.empty()) {
				BoundLedger led = fibonacci_bound_chain(mode, precision);
				n1_bound = *led.stage("absolute")->resolved;
				ell_bound = *led.stage("ell")->resolved;
			} else {
				throw InvalidSpec("--n1-bound and --ell-bound go together");
			}
			CampaignReport report;
			report.certified = (mode == BoundMode::Rigorous);
			report.initial_bound = n1_bound;
			report.initial_ell = ell_bound;
			if (stage == 1) {
				report.stages.push_back(
				    fibonacci_gap_stage(n1_bound, ell_bound, mode, workers, precision));
				report.gap_bound = report.stages.back().bound;
				report.absolute_bound = n1_bound;
			} else {
				if (gap_text.empty())
					throw InvalidSpec("stage 2 needs --gap from a stage 1 run");
				mpz_class gap_bound = parse_mpz(gap_text, "--gap");
				report.stages.push_back(fibonacci_absolute_stage(n1_bound, ell_bound, gap_bound,
				                                                 mode, workers, precision));
				report.gap_bound = gap_bound;
				report.absolute_bound = report.stages.back().bound;
			}
			report.notes.push_back("single-stage run; bounds outside this stage are inputs");
			emit(campaign_to_json(report), output);
			campaign_table(report);
			return 0;
		}

		if (search->parsed()) {
			ProblemInstance instance;
			std::vector<SolutionTuple> solutions;
			if (target == "fib") {
				if (terms != 1 && terms != 2)
					throw InvalidSpec("the fib preset searches 1 or 2 terms");
				instance = fibonacci_instance();
				instance.terms = terms;
				solutions = terms == 2 ? search_fibonacci(ell_max, n1_max)
				                       : search_general(instance, n1_max, ell_max);
			} else {
				instance = instance_from_flags(spec_path, x_text, k, q_text);
				solutions = search_general(instance, n1_max, ell_max);
			}
			for (const auto& tuple : solutions)
				if (!certify_solution(instance, tuple))
					throw Error("internal: search produced an uncertifiable tuple");
			emit(solutions_to_json(solutions), output);
			std::cerr << solutions.size() << " solutions in the box\n";
			if (!expect_path.empty()) {
				std::vector<SolutionTuple> expected = load_solutions(expect_path, instance.base);
				std::sort(expected.begin(), expected.end());
				std::vector<SolutionTuple> got = solutions;
				std::sort(got.begin(), got.end());
				if (got != expected) {
					std::cerr << "expected " << expected.size() << " solutions, found "
					          << got.size() << " (or the tuples differ)\n";
					return kExitMismatch;
				}
			}
			return 0;
		}

		if (verify->parsed()) {
			CounterexampleCertificate cert = verify_counterexample(counterexample_spec(), k_max);
			emit(certificate_to_json(cert), output);
			if (!cert.valid()) {
				std::cerr << "counterexample certificate is incomplete\n";
				return kExitMismatch;
			}
			std::cerr << "certificate complete: families verified for k <= "
			          << cert.verified_k_range << "\n";
			return 0;
		}
	} catch (const HypothesisFailure& err) {
		std::cerr << "hypothesis failure: " << err.what() << "\n";
		return kExitHypotheses;
	} catch (const DegenerateDominantCoefficient& err) {
		std::cerr << "hypothesis failure: " << err.what() << "\n";
		return kExitHypotheses;
	} catch (const PrecisionExhausted& err) {
		std::cerr << "precision exhausted: " << err.what() << "\n";
		return kExitPrecision;
	} catch (const ScaleCapExceeded& err) {
		std::cerr << "reduction failed: " << err.what() << "\n";
		return kExitScaleCap;
	} catch (const std::exception& err) {
		std::cerr << "error: " << err.what() << "\n";
		return kExitInput;
	}
	return kExitInput;
}
