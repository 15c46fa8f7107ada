#pragma once

// Command-line frontend: canonical group and ring computations, the axiom
// harness, exact sequence windows, and a benchmark suite that evaluates
// element expressions through the computed isomorphisms with wall-clock
// timings. Exit codes: 0 all-pass, 1 mismatch or failed check, 2 usage or
// parse error.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "cohom/cup.hpp"
#include "cohom/sequences.hpp"

namespace cohom {

// One benchmark case: evaluate expression inside H^degree(space, coeff) and
// optionally compare against expected canonical coordinates.
struct BenchCase {
    std::string space;
    std::string coeff;  // Z or Z/m
    long degree = 0;
    std::string expression;
    std::optional<std::vector<Int>> expected;
    std::string note;

    nlohmann::json to_json() const;
    static BenchCase from_json(const nlohmann::json& j);
    bool operator==(const BenchCase&) const = default;
};

struct BenchResult {
    BenchCase input;
    bool ok = false;       // evaluated without error
    bool matched = true;   // against expected, when given
    std::string value;     // rendered coordinates, or the error text
    std::vector<Int> coords;
    double elapsed_ms = 0.0;

    nlohmann::json to_json() const;
    static BenchResult from_json(const nlohmann::json& j);
    bool operator==(const BenchResult&) const = default;
};

// Results in suite order, one entry per case, timings informational only.
struct RunReport {
    std::vector<BenchResult> results;

    bool all_passed() const;
    std::string render() const;
    nlohmann::json to_json() const;
    static RunReport from_json(const nlohmann::json& j);
    bool operator==(const RunReport&) const = default;
};

// Every benchmark table row plus the torus-versus-wedge cup pair and the
// projective plane square.
std::vector<BenchCase> builtin_suite();

// Runs cases (concurrently when COHOM_THREADS > 1); a case that throws
// reports its error text instead of aborting the suite.
RunReport run_bench(const std::vector<BenchCase>& suite);

// expression := term (('+'|'-') term)*
// term       := factor (('cup'|'*') factor)*
// factor     := '-' factor | '(' expression ')' | gen
// gen        := 'g' [index] ['(' degree ')']
// Generator indices count within one degree; the degree defaults to the
// case degree. The result must land in degree `degree`; parse and generator
// errors throw std::invalid_argument with the offending position.
GroupElement eval_bench_expression(const GradedRing& ring, long degree, std::string_view text);

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cohom
