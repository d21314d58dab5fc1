#pragma once

// JSON import of recurrence specs and expected-solution lists, a small
// polynomial parser for shift terms given on the command line, and JSON
// export of ledgers, campaign reports, solution lists, and certificates.
// Big integers travel as decimal strings so nothing is squeezed through a
// double.

#include <string>
#include <vector>

#include "cullenrec/baker.hpp"
#include "cullenrec/polynomial.hpp"
#include "cullenrec/recurrence.hpp"
#include "cullenrec/reduction.hpp"
#include "cullenrec/search.hpp"

namespace cullenrec {

// {"order": 2, "coefficients": ["1", "1"], "initials": ["0", "1"]}; plain
// JSON integers are accepted wherever a decimal string is.  Throws
// InvalidSpec on malformed input.
RecurrenceSpec parse_recurrence(const std::string& text);
RecurrenceSpec load_recurrence(const std::string& path);

// Integer polynomials like "x+1", "-1", "2x^3 - x + 5" (also 2*x^3).
IntPoly parse_poly(const std::string& text);

// Solution lists: either [{"indices": [14, 6], "ell": 6, "x": "2"}, ...] or
// bare tuples [[14, 6, 6], ...] whose last entry is ell; x defaults to
// default_x when absent.
std::vector<SolutionTuple> parse_solutions(const std::string& text, const mpz_class& default_x = 2);
std::vector<SolutionTuple> load_solutions(const std::string& path, const mpz_class& default_x = 2);

std::string ledger_to_json(const BoundLedger& ledger, int indent = 2);
std::string campaign_to_json(const CampaignReport& report, int indent = 2);
std::string solutions_to_json(const std::vector<SolutionTuple>& solutions, int indent = 2);
std::string certificate_to_json(const CounterexampleCertificate& cert, int indent = 2);

} // namespace cullenrec
