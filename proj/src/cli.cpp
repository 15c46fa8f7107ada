#include "cohom/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace cohom {

namespace {

// maps to exit code 2; everything the user typed wrong lands here
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

SpaceId parse_space(const std::string& text) {
    auto id = SpaceId::parse(text);
    if (!id) throw UsageError(fmt::format("unknown space '{}'", text));
    return *id;
}

FgAbGroup parse_coeff(const std::string& text) {
    auto g = FgAbGroup::parse(text);
    if (!g) throw UsageError(fmt::format("cannot parse coefficient group '{}'", text));
    return *g;
}

// ring and bench coefficients are one cyclic group: Z or Z/m
Int ring_modulus(const std::string& text) {
    FgAbGroup g = parse_coeff(text);
    if (g.free_rank == 1 && g.torsion.empty()) return 0;
    if (g.free_rank == 0 && g.torsion.size() == 1) return g.torsion[0];
    throw UsageError(fmt::format("ring coefficients must be Z or Z/m, got '{}'", text));
}

std::string render_modulus(const Int& m) {
    return m == 0 ? "Z" : fmt::format("Z/{}", m.str());
}

std::string render_coords(const std::vector<Int>& coords) {
    if (coords.empty()) return "0";
    if (coords.size() == 1) return coords[0].str();
    std::string out = "(";
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (i) out += ", ";
        out += coords[i].str();
    }
    return out + ")";
}

nlohmann::json coords_json(const std::vector<Int>& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : v) arr.push_back(c.convert_to<long long>());
    return arr;
}

std::vector<Int> coords_from_json(const nlohmann::json& j) {
    std::vector<Int> out;
    for (const auto& e : j) out.emplace_back(e.get<long long>());
    return out;
}

const SequenceSlot* find_node(const LongExactSequence& s, const std::string& name) {
    for (const auto& nd : s.nodes)
        if (nd.name == name) return &nd;
    return nullptr;
}

// where an expression lives: one group per degree plus generator products
struct ExprScope {
    long max_deg = 0;
    std::function<const FgAbGroup&(long)> group_of;
    std::function<GroupElement(long, std::size_t, long, std::size_t)> product_of;
};

struct ExprValue {
    long degree = 0;
    GroupElement elem;
};

// recursive descent over the grammar documented in the header
class ExprParser {
public:
    ExprParser(const ExprScope& scope, long default_degree, std::string_view text)
        : scope_(scope), default_degree_(default_degree), text_(text) {}

    ExprValue run() {
        ExprValue v = expression();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw std::invalid_argument(fmt::format("position {}: {}", pos_, why));
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool eat_word(std::string_view w) {
        skip_ws();
        if (text_.substr(pos_, w.size()) != w) return false;
        std::size_t end = pos_ + w.size();
        if (end < text_.size() && std::isalnum(static_cast<unsigned char>(text_[end]))) return false;
        pos_ = end;
        return true;
    }

    // digits at the cursor, no whitespace skip
    std::optional<long> digits() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) return std::nullopt;
        return std::stol(std::string(text_.substr(start, pos_ - start)));
    }

    ExprValue expression() {
        ExprValue v = term();
        for (;;) {
            if (eat('+'))
                combine(v, term(), false);
            else if (eat('-'))
                combine(v, term(), true);
            else
                return v;
        }
    }

    void combine(ExprValue& v, const ExprValue& rhs, bool subtract) {
        if (rhs.degree != v.degree)
            fail(fmt::format("cannot add a degree {} class to a degree {} class", rhs.degree,
                             v.degree));
        v.elem = subtract ? sub(v.elem, rhs.elem) : add(v.elem, rhs.elem);
    }

    ExprValue term() {
        ExprValue v = factor();
        for (;;) {
            if (eat('*') || eat_word("cup"))
                v = product(v, factor());
            else
                return v;
        }
    }

    ExprValue factor() {
        if (eat('-')) {
            ExprValue v = factor();
            v.elem = neg(v.elem);
            return v;
        }
        if (eat('(')) {
            ExprValue v = expression();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        return generator();
    }

    ExprValue generator() {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != 'g') fail("expected a generator");
        ++pos_;
        std::size_t index = static_cast<std::size_t>(digits().value_or(0));
        long degree = default_degree_;
        if (eat('(')) {
            skip_ws();
            auto d = digits();
            if (!d) fail("expected a degree");
            degree = *d;
            if (!eat(')')) fail("expected ')'");
        }
        if (degree < 0 || degree > scope_.max_deg)
            fail(fmt::format("degree {} is outside the computed window", degree));
        const FgAbGroup& g = scope_.group_of(degree);
        if (index >= g.gens())
            fail(fmt::format("no generator {} in degree {} ({} available)", index, degree,
                             g.gens()));
        return {degree, GroupElement::generator(g, index)};
    }

    // bilinear expansion over generator coordinates of both sides
    ExprValue product(const ExprValue& a, const ExprValue& b) {
        long d = a.degree + b.degree;
        if (d > scope_.max_deg)
            fail(fmt::format("product lands in degree {}, outside the computed window", d));
        GroupElement acc = GroupElement::zero(scope_.group_of(d));
        for (std::size_t i = 0; i < a.elem.coords.size(); ++i) {
            if (a.elem.coords[i] == 0) continue;
            for (std::size_t j = 0; j < b.elem.coords.size(); ++j) {
                if (b.elem.coords[j] == 0) continue;
                acc = add(acc, scale(a.elem.coords[i] * b.elem.coords[j],
                                     scope_.product_of(a.degree, i, b.degree, j)));
            }
        }
        return {d, acc};
    }

    const ExprScope& scope_;
    long default_degree_;
    std::string_view text_;
    std::size_t pos_ = 0;
};

ExprScope ring_scope(const GradedRing& ring) {
    return {ring.max_deg(),
            [&ring](long d) -> const FgAbGroup& { return ring.group(d); },
            [&ring](long p, std::size_t i, long q, std::size_t j) {
                return ring.product(RingGenerator{p, i, {}}, RingGenerator{q, j, {}});
            }};
}

GroupElement eval_in_scope(const ExprScope& scope, long degree, std::string_view text) {
    ExprValue v = ExprParser(scope, degree, text).run();
    if (v.degree != degree)
        throw std::invalid_argument(
            fmt::format("expression lands in degree {}, the case degree is {}", v.degree, degree));
    return v.elem;
}

// The stable projective space has no finite model; its groups come from the
// solved line-bundle window and every H^d is Z/2 generated by e^d, so the
// product of the degree p and q generators is the degree p+q generator.
GroupElement eval_rpinf_case(const BenchCase& c, const Int& m) {
    if (m != 2)
        throw UsageError("rpinf goes through its line-bundle window, which needs coefficients Z/2");
    if (c.degree < 0) throw UsageError("rpinf cases need a nonnegative degree");
    SolveOutcome won = solve(gysin_preset_rpinf(std::max<long>(c.degree, 1)));
    std::vector<FgAbGroup> piece;
    for (long d = 0; d <= std::max<long>(c.degree, 1); ++d) {
        const SequenceSlot* slot = find_node(won.sequence, fmt::format("H^{}(B)", d));
        if (!slot || !slot->group) throw std::logic_error("line-bundle window did not close");
        piece.push_back(*slot->group);
    }
    FgAbGroup trivial = FgAbGroup::trivial();
    ExprScope scope{c.degree,
                    [&](long d) -> const FgAbGroup& {
                        return d >= 0 && d < long(piece.size()) ? piece[std::size_t(d)] : trivial;
                    },
                    [&](long p, std::size_t, long q, std::size_t) {
                        return GroupElement::generator(piece[std::size_t(p + q)], 0);
                    }};
    return eval_in_scope(scope, c.degree, c.expression);
}

BenchResult run_case(const BenchCase& c) {
    BenchResult r;
    r.input = c;
    auto start = std::chrono::steady_clock::now();
    try {
        GroupElement value = [&] {
            Int m = ring_modulus(c.coeff);
            if (c.space == "rpinf") return eval_rpinf_case(c, m);
            SpaceId id = parse_space(c.space);
            if (!has_simplicial(id))
                throw UsageError(fmt::format("no triangulation for '{}'", c.space));
            GradedRing ring(simplicial(id), m, c.degree);
            return eval_in_scope(ring_scope(ring), c.degree, c.expression);
        }();
        r.ok = true;
        r.coords = value.coords;
        r.value = render_coords(value.coords);
        if (c.expected) r.matched = GroupElement::make(value.group, *c.expected) == value;
    } catch (const std::exception& e) {
        r.ok = false;
        r.matched = false;
        r.value = e.what();
    }
    r.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return r;
}

}  // namespace

GroupElement eval_bench_expression(const GradedRing& ring, long degree, std::string_view text) {
    return eval_in_scope(ring_scope(ring), degree, text);
}

nlohmann::json BenchCase::to_json() const {
    nlohmann::json j{{"space", space},
                     {"coeff", coeff},
                     {"degree", degree},
                     {"expression", expression},
                     {"note", note}};
    j["expected"] = expected ? coords_json(*expected) : nlohmann::json();
    return j;
}

BenchCase BenchCase::from_json(const nlohmann::json& j) {
    BenchCase c;
    c.space = j.at("space").get<std::string>();
    c.coeff = j.value("coeff", std::string("Z"));
    c.degree = j.at("degree").get<long>();
    c.expression = j.at("expression").get<std::string>();
    if (j.contains("expected") && !j.at("expected").is_null())
        c.expected = coords_from_json(j.at("expected"));
    c.note = j.value("note", std::string());
    return c;
}

nlohmann::json BenchResult::to_json() const {
    return {{"case", input.to_json()}, {"ok", ok},
            {"matched", matched},      {"value", value},
            {"coords", coords_json(coords)}, {"elapsed_ms", elapsed_ms}};
}

BenchResult BenchResult::from_json(const nlohmann::json& j) {
    BenchResult r;
    r.input = BenchCase::from_json(j.at("case"));
    r.ok = j.at("ok").get<bool>();
    r.matched = j.at("matched").get<bool>();
    r.value = j.at("value").get<std::string>();
    r.coords = coords_from_json(j.at("coords"));
    r.elapsed_ms = j.at("elapsed_ms").get<double>();
    return r;
}

bool RunReport::all_passed() const {
    return std::all_of(results.begin(), results.end(),
                       [](const BenchResult& r) { return r.ok && r.matched; });
}

std::string RunReport::render() const {
    std::string out;
    std::size_t passed = 0;
    for (const auto& r : results) {
        const char* status = !r.ok ? "FAIL" : (r.matched ? "ok" : "DIFF");
        if (r.ok && r.matched) ++passed;
        std::string expect;
        if (r.ok && !r.matched && r.input.expected)
            expect = fmt::format(" (expected {})", render_coords(*r.input.expected));
        out += fmt::format("{:>4}  {:<16} {:<6} deg {}  {:<32} -> {}{}  [{:.2f} ms]{}\n", status,
                           r.input.space, r.input.coeff, r.input.degree, r.input.expression,
                           r.value, expect, r.elapsed_ms,
                           r.input.note.empty() ? "" : fmt::format("  ({})", r.input.note));
    }
    out += fmt::format("{} of {} cases passed\n", passed, results.size());
    return out;
}

nlohmann::json RunReport::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : results) arr.push_back(r.to_json());
    return {{"results", arr}};
}

RunReport RunReport::from_json(const nlohmann::json& j) {
    RunReport rep;
    for (const auto& e : j.at("results")) rep.results.push_back(BenchResult::from_json(e));
    return rep;
}

std::vector<BenchCase> builtin_suite() {
    auto row = [](std::string space, std::string coeff, long deg, std::string expr,
                  std::vector<long long> expected, std::string note = "") {
        std::vector<Int> e;
        e.reserve(expected.size());
        for (long long v : expected) e.emplace_back(v);
        return BenchCase{std::move(space),           std::move(coeff), deg, std::move(expr),
                         std::optional(std::move(e)), std::move(note)};
    };
    return {
        row("s1", "Z", 1, "g", {1}),
        row("s1", "Z", 1, "g + g", {2}),
        row("s1", "Z", 1, "-g", {-1}),
        row("s1", "Z/2", 1, "g", {1}),
        row("s1", "Z/2", 1, "g + g", {0}),
        row("s1", "Z/2", 1, "-g", {1}),
        row("s2", "Z", 2, "g", {1}),
        row("s2", "Z", 2, "g + g", {2}),
        row("s2", "Z", 2, "-g", {-1}),
        row("s2", "Z/2", 2, "g", {1}),
        row("s2", "Z/2", 2, "g + g", {0}),
        row("s2", "Z/2", 2, "-g", {1}),
        row("s3", "Z", 3, "g", {1}),
        row("s3", "Z", 3, "g + g", {2}),
        row("s3", "Z", 3, "-g", {-1}),
        row("s3", "Z/2", 3, "g", {1}),
        row("s3", "Z/2", 3, "g + g", {0}),
        row("s3", "Z/2", 3, "-g", {1}),
        row("torus", "Z", 1, "g0 + g1", {1, 1}),
        row("torus", "Z", 1, "g0 - g1", {1, -1}),
        row("torus", "Z/2", 1, "g0 + g1", {1, 1}),
        row("torus", "Z/2", 1, "g0 - g1", {1, 1}),
        row("torus", "Z", 2, "g", {1}),
        row("torus", "Z", 2, "g0(1) cup g1(1)", {1}, "orientation class"),
        row("torus", "Z", 2, "(g0(1) + g0(1)) cup g1(1)", {2}),
        row("torus", "Z/2", 2, "g", {1}),
        row("torus", "Z/2", 2, "g0(1) cup g1(1)", {1}),
        row("torus", "Z/2", 2, "(g0(1) + g0(1)) cup g1(1)", {0}),
        row("wedge:s2,s1,s1", "Z", 1, "g0 + g1", {1, 1}),
        row("wedge:s2,s1,s1", "Z", 1, "g0 - g1", {1, -1}),
        row("wedge:s2,s1,s1", "Z/2", 1, "g0 + g1", {1, 1}),
        row("wedge:s2,s1,s1", "Z/2", 1, "g0 - g1", {1, 1}),
        row("wedge:s2,s1,s1", "Z", 2, "g", {1}),
        row("wedge:s2,s1,s1", "Z", 2, "g0(1) cup g1(1)", {0},
            "distinguishes the wedge from the torus"),
        row("wedge:s2,s1,s1", "Z", 2, "(g0(1) + g0(1)) cup g1(1)", {0}),
        row("wedge:s2,s1,s1", "Z/2", 2, "g", {1}),
        row("wedge:s2,s1,s1", "Z/2", 2, "g0(1) cup g1(1)", {0}),
        row("wedge:s2,s1,s1", "Z/2", 2, "(g0(1) + g0(1)) cup g1(1)", {0}),
        row("rp2", "Z/2", 1, "g", {1}),
        row("rp2", "Z/2", 1, "g + g", {0}),
        row("rp2", "Z/2", 1, "-g", {1}),
        row("rp2", "Z", 2, "g", {1}),
        row("rp2", "Z", 2, "g + g", {0}, "order two"),
        row("rp2", "Z", 2, "-g", {1}),
        row("rp2", "Z/2", 2, "g", {1}),
        row("rp2", "Z/2", 2, "g(1) cup g(1)", {1}, "square generates"),
        row("klein", "Z", 1, "g", {1}),
        row("klein", "Z", 1, "g + g", {2}),
        row("klein", "Z", 1, "-g", {-1}),
        row("klein", "Z/2", 1, "g0 + g1", {1, 1}),
        row("klein", "Z/2", 1, "g0 - g1", {1, 1}),
        row("klein", "Z", 2, "g", {1}),
        row("klein", "Z", 2, "g(1) cup g(1)", {0}, "the free class squares to zero"),
        row("klein", "Z/2", 2, "g", {1}),
        row("klein", "Z/2", 2, "g0(1) cup g1(1)", {1}),
        row("klein", "Z/2", 2, "(g0(1) + g0(1)) cup g1(1)", {0}),
        row("rpinf", "Z/2", 1, "g", {1}, "stable class through the line-bundle window"),
        row("rpinf", "Z/2", 1, "g + g", {0}),
        row("rpinf", "Z/2", 1, "-g", {1}),
    };
}

RunReport run_bench(const std::vector<BenchCase>& suite) {
    RunReport report;
    report.results.resize(suite.size());
    if (suite.empty()) return report;
    std::size_t threads = 1;
    if (const char* env = std::getenv("COHOM_THREADS")) {
        char* end = nullptr;
        unsigned long parsed = std::strtoul(env, &end, 10);
        if (end != env && parsed > 0) threads = parsed;
    }
    threads = std::min<std::size_t>(threads, suite.size());
    if (threads <= 1) {
        for (std::size_t i = 0; i < suite.size(); ++i) report.results[i] = run_case(suite[i]);
        return report;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= suite.size()) return;
                report.results[i] = run_case(suite[i]);
            }
        });
    for (auto& th : pool) th.join();
    return report;
}

namespace {

RingPresentation parse_claim(const std::string& text) {
    try {
        return RingPresentation::parse(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(fmt::format("bad claim: {}", e.what()));
    }
}

// Presentations in the literature leave generator degrees to context. When a
// claim declares every generator in the default degree 1 and the computed
// ring has exactly one positive-degree generator per claim generator, regrade
// the claim by the ring's generator degrees (in claim order) and recompute
// relation degrees; returns nothing when that changes nothing or breaks
// homogeneity. The caller only keeps the regrade if it then matches.
std::optional<RingPresentation> regrade_by_ring(const RingPresentation& pres,
                                                const GradedRing& ring) {
    if (pres.gen_names.empty()) return std::nullopt;
    for (long d : pres.gen_degrees)
        if (d != 1) return std::nullopt;
    std::vector<long> degrees;
    for (const auto& g : ring.generators())
        if (g.degree > 0) degrees.push_back(g.degree);
    if (degrees.size() != pres.gen_names.size()) return std::nullopt;
    if (std::all_of(degrees.begin(), degrees.end(), [](long d) { return d == 1; }))
        return std::nullopt;
    RingPresentation adj = pres;
    adj.gen_degrees = degrees;
    for (auto& r : adj.relations) {
        if (r.terms.empty()) continue;
        r.degree = adj.term_degree(r.terms.front());
        for (const auto& t : r.terms)
            if (adj.term_degree(t) != r.degree) return std::nullopt;
    }
    return adj;
}

int cmd_group(const std::string& space_text, const std::string& coeff, long deg, bool json,
              std::ostream& out) {
    SpaceId id = parse_space(space_text);
    FgAbGroup g = parse_coeff(coeff);
    FgAbGroup h = cohomology(cellular(id), deg, g).group;
    if (json)
        out << nlohmann::json{{"space", id.str()},
                              {"coeff", g.render()},
                              {"degree", deg},
                              {"group", h.render()}}
                   .dump(2)
            << "\n";
    else
        out << h.render() << "\n";
    return 0;
}

// cp2 and rpinf have no triangulation; their rings are certified by solving
// the bundle window, whose cup-e rules say the euler class powers generate.
int cmd_ring_window(const std::string& space_text, const Int& m, std::optional<long> max_deg,
                    const std::optional<std::string>& claim_text, bool json, std::ostream& out) {
    bool cp2 = space_text == "cp2";
    if (cp2 && m != 0)
        throw UsageError("the cp2 ring is certified through its circle-bundle window, which needs coefficients Z");
    if (!cp2 && m != 2)
        throw UsageError("the rpinf ring is certified through its line-bundle window, which needs coefficients Z/2");
    if (cp2 && max_deg && *max_deg > 4)
        throw UsageError("the cp2 window closes at degree 4");
    long window = cp2 ? max_deg.value_or(4) : std::max<long>(max_deg.value_or(5), 1);
    long euler_deg = cp2 ? 2 : 1;
    SolveOutcome won = solve(cp2 ? gysin_preset_cp2() : gysin_preset_rpinf(window));

    std::vector<FgAbGroup> piece;
    std::vector<std::string> certificates;
    for (long d = 0; d <= window; ++d) {
        const SequenceSlot* slot = find_node(won.sequence, fmt::format("H^{}(B)", d));
        if (!slot || !slot->group) throw std::logic_error("bundle window did not close");
        piece.push_back(*slot->group);
        if (!slot->rule.empty())
            certificates.push_back(fmt::format("H^{}({}): {}", d, space_text, slot->rule));
    }

    bool matched = true;
    std::string detail;
    if (claim_text) {
        RingPresentation adj = parse_claim(*claim_text);
        if (adj.modulus != m) {
            matched = false;
            detail = fmt::format("claim coefficients {} differ from {}",
                                 render_modulus(adj.modulus), render_modulus(m));
        } else if (adj.gen_names.size() != 1) {
            matched = false;
            detail = "the window certifies a single generator (the euler class)";
        } else {
            // an unannotated generator defaults to degree 1; the euler class
            // fixes the true degree, so regrade the claim accordingly
            if (adj.gen_degrees[0] == 1 && euler_deg != 1) {
                adj.gen_degrees[0] = euler_deg;
                for (auto& r : adj.relations)
                    if (!r.terms.empty()) r.degree = adj.term_degree(r.terms.front());
            }
            if (adj.gen_degrees[0] != euler_deg) {
                matched = false;
                detail = fmt::format("the euler class sits in degree {}, not {}", euler_deg,
                                     adj.gen_degrees[0]);
            } else {
                for (long d = 0; d <= window && matched; ++d) {
                    FgAbGroup want = adj.graded_piece(d);
                    if (!(want == piece[std::size_t(d)])) {
                        matched = false;
                        detail = fmt::format("degree {} piece of the claim is {}, computed {}", d,
                                             want.render(), piece[std::size_t(d)].render());
                    }
                }
                if (matched)
                    detail = fmt::format(
                        "{} = e, the euler class in degree {}; its powers generate through degree {}",
                        adj.gen_names[0], euler_deg, window);
            }
        }
    }

    if (json) {
        nlohmann::json degrees = nlohmann::json::array();
        for (long d = 0; d <= window; ++d)
            degrees.push_back({{"degree", d}, {"group", piece[std::size_t(d)].render()}});
        nlohmann::json j{{"space", space_text},
                         {"coeff", render_modulus(m)},
                         {"degrees", degrees},
                         {"certificates", certificates}};
        if (claim_text) j["claim"] = {{"text", *claim_text}, {"matched", matched}, {"detail", detail}};
        out << j.dump(2) << "\n";
    } else {
        for (long d = 0; d <= window; ++d)
            out << fmt::format("H^{}({}) = {}\n", d, space_text, piece[std::size_t(d)].render());
        for (const auto& c : certificates) out << "  " << c << "\n";
        if (claim_text) out << fmt::format("match: {} ({})\n", matched, detail);
    }
    return matched ? 0 : 1;
}

int cmd_ring(const std::string& space_text, const std::string& coeff, std::optional<long> max_deg,
             const std::optional<std::string>& claim_text, bool json, std::ostream& out) {
    Int m = ring_modulus(coeff);
    if (space_text == "rpinf") return cmd_ring_window(space_text, m, max_deg, claim_text, json, out);
    SpaceId id = parse_space(space_text);
    if (id.kind == SpaceId::Kind::Cp2)
        return cmd_ring_window(space_text, m, max_deg, claim_text, json, out);
    if (!has_simplicial(id))
        throw UsageError(fmt::format(
            "cup products for '{}' need a triangulation; cp2 and rpinf go through their bundle windows",
            space_text));
    GradedRing ring(simplicial(id), m, max_deg);
    std::optional<MatchWitness> witness;
    if (claim_text) {
        RingPresentation pres = parse_claim(*claim_text);
        witness = match_presentation(ring, pres, max_deg);
        if (!witness->matched) {
            if (auto adj = regrade_by_ring(pres, ring)) {
                MatchWitness retry = match_presentation(ring, *adj, max_deg);
                if (retry.matched) {
                    std::string inferred;
                    for (std::size_t i = 0; i < adj->gen_names.size(); ++i)
                        inferred += fmt::format("{}{} in degree {}", i ? ", " : "",
                                                adj->gen_names[i], adj->gen_degrees[i]);
                    retry.detail += fmt::format(" ({})", inferred);
                    witness = retry;
                }
            }
        }
    }
    if (json) {
        nlohmann::json degrees = nlohmann::json::array();
        for (long d = 0; d <= ring.max_deg(); ++d)
            degrees.push_back({{"degree", d}, {"group", ring.group(d).render()}});
        nlohmann::json gens = nlohmann::json::array();
        for (const auto& gen : ring.generators())
            gens.push_back({{"label", gen.label}, {"degree", gen.degree}, {"index", gen.index}});
        nlohmann::json j{{"space", space_text},
                         {"coeff", render_modulus(m)},
                         {"degrees", degrees},
                         {"generators", gens}};
        if (witness)
            j["claim"] = {{"text", *claim_text}, {"matched", witness->matched},
                          {"detail", witness->detail}};
        out << j.dump(2) << "\n";
    } else {
        out << ring.render();
        if (witness) out << fmt::format("match: {} ({})\n", witness->matched, witness->detail);
    }
    return (!witness || witness->matched) ? 0 : 1;
}

int cmd_axioms(const std::string& space_text, const std::string& coeff, bool json,
               std::ostream& out) {
    SpaceId id = parse_space(space_text);
    FgAbGroup g = parse_coeff(coeff);
    AxiomReport r = axiom_suite(id, g);
    if (json) {
        out << nlohmann::json{{"space", id.str()},         {"coeff", g.render()},
                              {"additivity", r.additivity}, {"suspension", r.suspension},
                              {"dimension", r.dimension},   {"exactness", r.exactness},
                              {"notes", r.notes},           {"passed", r.all_pass()}}
                   .dump(2)
            << "\n";
    } else {
        auto line = [&](const char* name, bool ok) {
            out << fmt::format("{}: {}\n", name, ok ? "pass" : "FAIL");
        };
        line("additivity", r.additivity);
        line("suspension", r.suspension);
        line("dimension", r.dimension);
        line("exactness", r.exactness);
        for (const auto& n : r.notes) out << "  note: " << n << "\n";
        int passed = int(r.additivity) + int(r.suspension) + int(r.dimension) + int(r.exactness);
        out << fmt::format("{}/4 axioms pass\n", passed);
    }
    return r.all_pass() ? 0 : 1;
}

int cmd_bench(const std::optional<std::string>& suite_path, bool json, std::ostream& out) {
    std::vector<BenchCase> suite;
    if (!suite_path || *suite_path == "builtin") {
        suite = builtin_suite();
    } else {
        std::ifstream in(*suite_path);
        if (!in) throw UsageError(fmt::format("cannot open suite file '{}'", *suite_path));
        try {
            nlohmann::json j;
            in >> j;
            for (const auto& cj : j) suite.push_back(BenchCase::from_json(cj));
        } catch (const std::exception& e) {
            throw UsageError(fmt::format("bad suite file: {}", e.what()));
        }
    }
    RunReport report = run_bench(suite);
    if (json)
        out << report.to_json().dump(2) << "\n";
    else
        out << report.render();
    return report.all_passed() ? 0 : 1;
}

int cmd_sequence_mv(const std::string& space_text, const std::string& coeff, long max_deg,
                    bool reduced, bool json, std::ostream& out) {
    SpaceId id = parse_space(space_text);
    FgAbGroup g = parse_coeff(coeff);
    std::optional<CoveringPair> cover;
    try {
        cover = covering_pair(id);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    LongExactSequence seq = mayer_vietoris(cover->total, cover->a, cover->b, g, max_deg, reduced);
    ExactnessReport rep = check_exact(seq);
    if (json) {
        out << nlohmann::json{{"space", id.str()},   {"coeff", g.render()},
                              {"max_deg", max_deg},  {"reduced", reduced},
                              {"sequence", seq.to_json()}, {"exact_at", rep.exact_at},
                              {"all_exact", rep.all_exact()}}
                   .dump(2)
            << "\n";
    } else {
        out << seq.render() << "\n";
        if (rep.all_exact())
            out << fmt::format("exact at all {} checked nodes\n", rep.exact_at.size());
        else
            for (std::size_t k = 0; k < rep.exact_at.size(); ++k)
                if (!rep.exact_at[k])
                    out << fmt::format("NOT exact at {}\n", seq.nodes[k + 1].name);
    }
    return rep.all_exact() ? 0 : 1;
}

int cmd_sequence_gysin(const std::string& preset, std::optional<long> max_deg, bool json,
                       std::ostream& out) {
    LongExactSequence seq = [&] {
        if (preset == "cp2") return gysin_preset_cp2();
        if (preset == "rpinf") return gysin_preset_rpinf(std::max<long>(max_deg.value_or(5), 1));
        throw UsageError(fmt::format("unknown preset '{}' (expected cp2 or rpinf)", preset));
    }();
    SolveOutcome won = solve(seq);
    if (json) {
        out << nlohmann::json{{"preset", preset},
                              {"sequence", won.sequence.to_json()},
                              {"solved", won.solved},
                              {"indeterminate", won.indeterminate},
                              {"complete", won.complete()}}
                   .dump(2)
            << "\n";
    } else {
        out << won.sequence.render() << "\n";
        out << fmt::format("{} slots solved, {} indeterminate\n", won.solved.size(),
                           won.indeterminate.size());
    }
    return won.complete() ? 0 : 1;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact cellular cohomology: groups, rings, axioms, exact sequences, benchmarks"};
    app.name("cohom");
    bool json = false;

    std::string space;
    std::string coeff = "Z";
    long deg = 0;
    std::optional<long> max_deg;
    std::optional<std::string> claim;
    std::optional<std::string> suite_path;
    std::string preset;
    bool reduced = false;

    auto add_json = [&json](CLI::App* cmd) {
        cmd->add_flag("--json", json, "machine-readable output");
    };

    auto* grp = app.add_subcommand("group", "canonical cohomology group H^deg(space, coeff)");
    grp->add_option("--space", space,
                    "space id: s0, s1, ..., torus, klein, rp2, rpN:k, cp2, wedge:..., susp:...")
        ->required();
    grp->add_option("--coeff", coeff, "coefficient group, e.g. Z, Z/2, Z^2+Z/4");
    grp->add_option("--deg", deg, "degree")->required();
    add_json(grp);

    auto* ring = app.add_subcommand("ring", "graded ring: groups, generators, products");
    ring->add_option("--space", space,
                     "triangulated space, or cp2/rpinf through their bundle windows")
        ->required();
    ring->add_option("--coeff", coeff, "Z or Z/m");
    ring->add_option("--max-deg", max_deg, "top degree of the window");
    ring->add_option("--claim", claim, "presentation to verify, e.g. \"Z/2[x]/(x^3)\"");
    add_json(ring);

    auto* ax = app.add_subcommand("axioms", "additivity, suspension, dimension, exactness checks");
    ax->add_option("--space", space, "space id")->required();
    ax->add_option("--coeff", coeff, "coefficient group");
    add_json(ax);

    auto* bench = app.add_subcommand("bench", "evaluate element expressions with timings");
    bench->add_option("--suite", suite_path, "JSON suite file (default: builtin suite)");
    add_json(bench);

    auto* seq = app.add_subcommand("sequence", "long exact sequence windows");
    seq->require_subcommand(1);
    auto* mv = seq->add_subcommand("mv", "Mayer-Vietoris window of a fixture cover");
    mv->add_option("--space", space, "covered space: s1, s2, s3, torus, rp2, klein")->required();
    mv->add_option("--coeff", coeff, "coefficient group");
    mv->add_option("--max-deg", max_deg, "window top degree (default 2)");
    mv->add_flag("--reduced", reduced, "use reduced cohomology");
    add_json(mv);
    auto* gy = seq->add_subcommand("gysin", "sphere bundle window presets");
    gy->add_option("--preset", preset, "cp2 or rpinf")->required();
    gy->add_option("--max-deg", max_deg, "window top degree (rpinf preset, default 5)");
    add_json(gy);

    app.require_subcommand(1);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    if (*grp) return cmd_group(space, coeff, deg, json, out);
    if (*ring) return cmd_ring(space, coeff, max_deg, claim, json, out);
    if (*ax) return cmd_axioms(space, coeff, json, out);
    if (*bench) return cmd_bench(suite_path, json, out);
    if (*mv) return cmd_sequence_mv(space, coeff, max_deg.value_or(2), reduced, json, out);
    if (*gy) return cmd_sequence_gysin(preset, max_deg, json, out);
    return 2;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return dispatch(args, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace cohom
