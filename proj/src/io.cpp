#include "cullenrec/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cullenrec/errors.hpp"

namespace cullenrec {

namespace {

using nlohmann::json;

constexpr int kDigits = 20;

std::string slurp(const std::string& path) {
	std::ifstream in(path);
	if (!in) throw InvalidSpec("cannot read file " + path);
	std::ostringstream text;
	text << in.rdbuf();
	return text.str();
}

json parse_json(const std::string& text, const char* what) {
	try {
		return json::parse(text);
	} catch (const json::parse_error& err) {
		throw InvalidSpec(std::string(what) + " is not valid JSON: " + err.what());
	}
}

mpz_class integer_field(const json& v, const char* what) {
	if (v.is_number_integer()) return mpz_class(v.get<long>());
	if (v.is_string()) {
		try {
			return mpz_class(v.get<std::string>());
		} catch (const std::invalid_argument&) {
			throw InvalidSpec(std::string(what) + " is not a decimal integer");
		}
	}
	throw InvalidSpec(std::string(what) + " must be an integer or a decimal string");
}

std::vector<mpz_class> integer_list(const json& v, const char* what) {
	if (!v.is_array()) throw InvalidSpec(std::string(what) + " must be an array");
	std::vector<mpz_class> out;
	out.reserve(v.size());
	for (const auto& item : v) out.push_back(integer_field(item, what));
	return out;
}

long long_field(const json& v, const char* what) {
	mpz_class z = integer_field(v, what);
	if (!z.fits_slong_p()) throw InvalidSpec(std::string(what) + " is out of range");
	return z.get_si();
}

json interval_fields(const RealInterval& value) {
	return {{"lo", value.lo_string(kDigits)}, {"hi", value.hi_string(kDigits)}};
}

SolutionTuple tuple_from_json(const json& v, const mpz_class& default_x) {
	SolutionTuple tuple;
	tuple.x = default_x;
	if (v.is_array()) {
		// bare [n_1, ..., n_k, ell]
		if (v.size() < 2) throw InvalidSpec("bare solution tuples need indices and ell");
		for (size_t i = 0; i + 1 < v.size(); ++i)
			tuple.indices.push_back(long_field(v[i], "solution index"));
		tuple.ell = long_field(v[v.size() - 1], "solution ell");
		return tuple;
	}
	if (!v.is_object() || !v.contains("indices") || !v.contains("ell"))
		throw InvalidSpec("solutions must be objects with indices and ell, or bare tuples");
	if (!v["indices"].is_array()) throw InvalidSpec("solution indices must be an array");
	for (const auto& item : v["indices"])
		tuple.indices.push_back(long_field(item, "solution index"));
	tuple.ell = long_field(v["ell"], "solution ell");
	if (v.contains("x")) tuple.x = integer_field(v["x"], "solution x");
	return tuple;
}

} // namespace

RecurrenceSpec parse_recurrence(const std::string& text) {
	json doc = parse_json(text, "recurrence spec");
	if (!doc.is_object()) throw InvalidSpec("recurrence spec must be a JSON object");
	if (!doc.contains("order") || !doc.contains("coefficients") || !doc.contains("initials"))
		throw InvalidSpec("recurrence spec needs order, coefficients and initials");
	RecurrenceSpec spec;
	long order = long_field(doc["order"], "order");
	if (order < 1 || order > 64) throw InvalidSpec("order is out of range");
	spec.order = static_cast<int>(order);
	spec.coefficients = integer_list(doc["coefficients"], "coefficients");
	spec.initials = integer_list(doc["initials"], "initials");
	spec.validate();
	return spec;
}

RecurrenceSpec load_recurrence(const std::string& path) {
	return parse_recurrence(slurp(path));
}

IntPoly parse_poly(const std::string& text) {
	std::vector<mpz_class> coeffs;
	size_t i = 0;
	const size_t n = text.size();
	auto ws = [&] {
		while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
	};
	auto digits = [&] {
		std::string out;
		while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) out += text[i++];
		return out;
	};
	ws();
	if (i == n) throw InvalidSpec("empty polynomial");
	bool first = true;
	while (i < n) {
		int sign = 1;
		if (text[i] == '+' || text[i] == '-') {
			sign = text[i] == '-' ? -1 : 1;
			++i;
			ws();
		} else if (!first) {
			throw InvalidSpec("expected + or - between polynomial terms");
		}
		first = false;
		const std::string num = digits();
		ws();
		long exp = 0;
		bool has_var = false;
		if (i < n && text[i] == '*') {
			if (num.empty()) throw InvalidSpec("dangling * in polynomial");
			++i;
			ws();
		}
		if (i < n && (text[i] == 'x' || text[i] == 'X')) {
			has_var = true;
			exp = 1;
			++i;
			ws();
			if (i < n && text[i] == '^') {
				++i;
				ws();
				const std::string e = digits();
				if (e.empty() || e.size() > 4) throw InvalidSpec("bad exponent in polynomial");
				exp = std::stol(e);
				ws();
			}
		}
		if (num.empty() && !has_var) throw InvalidSpec("expected a coefficient or x");
		if (static_cast<size_t>(exp) >= coeffs.size()) coeffs.resize(exp + 1, mpz_class(0));
		coeffs[exp] += sign * (num.empty() ? mpz_class(1) : mpz_class(num));
		ws();
	}
	return IntPoly(std::move(coeffs));
}

std::vector<SolutionTuple> parse_solutions(const std::string& text, const mpz_class& default_x) {
	json doc = parse_json(text, "solution list");
	if (!doc.is_array()) throw InvalidSpec("solution list must be a JSON array");
	std::vector<SolutionTuple> out;
	out.reserve(doc.size());
	for (const auto& item : doc) out.push_back(tuple_from_json(item, default_x));
	return out;
}

std::vector<SolutionTuple> load_solutions(const std::string& path, const mpz_class& default_x) {
	return parse_solutions(slurp(path), default_x);
}

std::string ledger_to_json(const BoundLedger& ledger, int indent) {
	json doc;
	doc["mode"] = to_string(ledger.mode);
	doc["entries"] = json::array();
	for (const auto& entry : ledger.entries) {
		json e = interval_fields(entry.value);
		e["name"] = entry.name;
		e["mode"] = to_string(entry.mode);
		e["provenance"] = entry.provenance;
		doc["entries"].push_back(std::move(e));
	}
	doc["stage_bounds"] = json::array();
	for (const auto& stage : ledger.stage_bounds) {
		json s;
		s["target"] = stage.target;
		s["coefficient"] = interval_fields(stage.coefficient);
		s["log_x_power"] = stage.log_x_power;
		s["log_n_power"] = stage.log_n_power;
		if (stage.resolved) s["resolved"] = stage.resolved->get_str();
		doc["stage_bounds"].push_back(std::move(s));
	}
	doc["notes"] = ledger.notes;
	return doc.dump(indent);
}

std::string campaign_to_json(const CampaignReport& report, int indent) {
	json doc;
	doc["certified"] = report.certified;
	doc["initial_bound"] = report.initial_bound.get_str();
	doc["initial_ell"] = report.initial_ell.get_str();
	doc["gap_bound"] = report.gap_bound.get_str();
	doc["absolute_bound"] = report.absolute_bound.get_str();
	doc["stages"] = json::array();
	for (const auto& stage : report.stages) {
		doc["stages"].push_back({{"name", stage.name},
		                         {"subproblems", stage.subproblems},
		                         {"bound", stage.bound.get_str()},
		                         {"max_attempts_seen", stage.max_attempts_seen}});
	}
	doc["notes"] = report.notes;
	return doc.dump(indent);
}

std::string solutions_to_json(const std::vector<SolutionTuple>& solutions, int indent) {
	json doc = json::array();
	for (const auto& tuple : solutions)
		doc.push_back(
		    {{"indices", tuple.indices}, {"ell", tuple.ell}, {"x", tuple.x.get_str()}});
	return doc.dump(indent);
}

std::string certificate_to_json(const CounterexampleCertificate& cert, int indent) {
	json doc;
	doc["base_period_checks"] = cert.base_period_checks;
	doc["factorization_ok"] = cert.factorization_ok;
	doc["dominant_coefficient_zero"] = cert.dominant_coefficient_zero;
	doc["hypotheses_reject"] = cert.hypotheses_reject;
	doc["family_values_ok"] = cert.family_values_ok;
	doc["verified_k_range"] = cert.verified_k_range;
	doc["valid"] = cert.valid();
	return doc.dump(indent);
}

} // namespace cullenrec
