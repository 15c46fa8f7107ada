#include "cohom/cup.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

namespace cohom {

namespace {

Int reduce_coeff(const Int& v, const Int& m) {
    if (m == 0) return v;
    Int r = v % m;
    if (r < 0) r += m;
    return r;
}

void check_compatible(const Cochain& a, const Cochain& b, const char* what) {
    if (!(a.complex == b.complex))
        throw std::invalid_argument(fmt::format("{} of cochains on different complexes", what));
    if (a.modulus != b.modulus)
        throw std::invalid_argument(fmt::format("{} of cochains with different moduli", what));
}

}  // namespace

Cochain Cochain::zero(SimplicialComplex x, long degree, Int modulus) {
    if (degree < 0) throw std::invalid_argument("cochain degree must be nonnegative");
    if (modulus < 0 || modulus == 1)
        throw std::invalid_argument("cochain modulus must be 0 or at least 2");
    std::size_t n = x.simplices(static_cast<std::size_t>(degree)).size();
    return Cochain{std::move(x), degree, std::move(modulus), std::vector<Int>(n, Int(0))};
}

Cochain Cochain::unit(SimplicialComplex x, Int modulus) {
    Cochain out = zero(std::move(x), 0, std::move(modulus));
    for (auto& v : out.values) v = 1;
    return out;
}

Cochain Cochain::make(SimplicialComplex x, long degree, Int modulus, std::vector<Int> values) {
    Cochain out = zero(std::move(x), degree, std::move(modulus));
    if (values.size() != out.values.size())
        throw std::invalid_argument(
            fmt::format("cochain needs {} values, got {}", out.values.size(), values.size()));
    for (std::size_t i = 0; i < values.size(); ++i)
        out.values[i] = reduce_coeff(values[i], out.modulus);
    return out;
}

IntMatrix Cochain::column() const { return IntMatrix::col_vector(values); }

bool Cochain::is_zero() const {
    return std::all_of(values.begin(), values.end(), [](const Int& v) { return v == 0; });
}

Cochain add(const Cochain& a, const Cochain& b) {
    check_compatible(a, b, "sum");
    if (a.degree != b.degree)
        throw std::invalid_argument("sum of cochains of different degrees");
    Cochain out = a;
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = reduce_coeff(a.values[i] + b.values[i], a.modulus);
    return out;
}

Cochain sub(const Cochain& a, const Cochain& b) { return add(a, scale(-1, b)); }

Cochain scale(const Int& k, const Cochain& a) {
    Cochain out = a;
    for (auto& v : out.values) v = reduce_coeff(k * v, a.modulus);
    return out;
}

Cochain coboundary(const Cochain& a) {
    Cochain out = Cochain::zero(a.complex, a.degree + 1, a.modulus);
    std::size_t d = static_cast<std::size_t>(a.degree) + 1;
    const auto& tops = a.complex.simplices(d);
    for (std::size_t s = 0; s < tops.size(); ++s) {
        Int v = 0;
        for (std::size_t i = 0; i <= d; ++i) {
            std::vector<std::size_t> face;
            for (std::size_t t = 0; t <= d; ++t)
                if (t != i) face.push_back(tops[s][t]);
            const Int& c = a.values[*a.complex.index_of(face)];
            v += i % 2 == 0 ? c : -c;
        }
        out.values[s] = reduce_coeff(v, a.modulus);
    }
    return out;
}

bool is_cocycle(const Cochain& a) { return coboundary(a).is_zero(); }

Cochain aw_cup(const Cochain& a, const Cochain& b) {
    check_compatible(a, b, "cup product");
    std::size_t p = static_cast<std::size_t>(a.degree);
    Cochain out = Cochain::zero(a.complex, a.degree + b.degree, a.modulus);
    const auto& tops = a.complex.simplices(p + static_cast<std::size_t>(b.degree));
    for (std::size_t s = 0; s < tops.size(); ++s) {
        const auto& v = tops[s];
        std::vector<std::size_t> front(v.begin(), v.begin() + static_cast<long>(p) + 1);
        std::vector<std::size_t> back(v.begin() + static_cast<long>(p), v.end());
        out.values[s] = reduce_coeff(
            a.values[*a.complex.index_of(front)] * b.values[*a.complex.index_of(back)],
            a.modulus);
    }
    return out;
}

namespace {

// greedy descent over the coboundary lattice towards a sparse representative;
// only lattice vectors are subtracted, so the class never moves
IntMatrix tidy_rep(IntMatrix rep, const IntMatrix& denom, const Int& m) {
    auto reduce_all = [&](IntMatrix& r) {
        if (m == 0) return;
        for (std::size_t i = 0; i < r.rows(); ++i) r.at(i, 0) = reduce_coeff(r.at(i, 0), m);
    };
    auto measure = [&](const IntMatrix& r) {
        std::size_t support = 0;
        Int l1 = 0;
        for (std::size_t i = 0; i < r.rows(); ++i) {
            Int v = r.at(i, 0);
            if (m != 0 && v > m - v) v = m - v;  // distance to 0 mod m
            if (v < 0) v = -v;
            if (v != 0) ++support;
            l1 += v;
        }
        return std::pair<std::size_t, Int>(support, l1);
    };
    reduce_all(rep);
    auto best = measure(rep);
    for (int round = 0; round < 8; ++round) {
        bool improved = false;
        for (std::size_t c = 0; c < denom.cols(); ++c)
            for (int k : {1, -1, 2, -2, 3, -3}) {
                IntMatrix cand = rep;
                for (std::size_t i = 0; i < cand.rows(); ++i)
                    cand.at(i, 0) += Int(k) * denom.at(i, c);
                reduce_all(cand);
                auto score = measure(cand);
                if (score < best) {
                    rep = std::move(cand);
                    best = score;
                    improved = true;
                }
            }
        if (!improved) break;
    }
    return rep;
}

}  // namespace

GradedRing::GradedRing(SimplicialComplex x, Int modulus, std::optional<long> max_deg)
    : complex_(std::move(x)), modulus_(std::move(modulus)) {
    if (modulus_ < 0 || modulus_ == 1)
        throw std::invalid_argument("ring modulus must be 0 or at least 2");
    CellComplex chain = complex_.chain_complex();
    max_deg_ = max_deg.value_or(static_cast<long>(chain.dim()));
    if (max_deg_ < 0) throw std::invalid_argument("max degree must be nonnegative");
    for (long d = 0; d <= max_deg_; ++d)
        degrees_.push_back(cyclic_cohomology(chain, d, modulus_));

    static const char* letters[] = {"x", "y", "z", "w", "u", "v", "t", "r"};
    Cochain one = Cochain::unit(complex_, modulus_);
    std::size_t next_letter = 0;
    for (long d = 0; d <= max_deg_; ++d) {
        const auto& cc = degrees_[static_cast<std::size_t>(d)];
        for (std::size_t j = 0; j < cc.group.gens(); ++j) {
            RingGenerator gen{d, j, ""};
            if (d == 0 && cc.group.gens() == 1 &&
                cc.coords(one.column()) == GroupElement::generator(cc.group, 0))
                gen.label = "1";
            else if (next_letter < std::size(letters))
                gen.label = letters[next_letter++];
            else
                gen.label = fmt::format("g{}", generators_.size());
            generators_.push_back(std::move(gen));
        }
    }

    for (const auto& gen : generators_) {
        const auto& cc = degrees_[static_cast<std::size_t>(gen.degree)];
        IntMatrix rep = tidy_rep(cc.rep(gen.index), chain.coboundary(gen.degree - 1), modulus_);
        if (!(cc.coords(rep) == GroupElement::generator(cc.group, gen.index)))
            throw std::logic_error("generator representative left its class");
        reduced_reps_.push_back(std::move(rep));
    }

    for (std::size_t i = 0; i < generators_.size(); ++i)
        for (std::size_t j = 0; j < generators_.size(); ++j) {
            long dsum = generators_[i].degree + generators_[j].degree;
            if (dsum > max_deg_) continue;
            Cochain prod = aw_cup(rep(generators_[i]), rep(generators_[j]));
            table_.emplace(std::pair{i, j},
                           degrees_[static_cast<std::size_t>(dsum)].coords(prod.column()));
        }
}

const FgAbGroup& GradedRing::group(long d) const {
    static const FgAbGroup none = FgAbGroup::trivial();
    if (d < 0 || d > max_deg_) return none;
    return degrees_[static_cast<std::size_t>(d)].group;
}

std::size_t GradedRing::position_of(long degree, std::size_t index) const {
    for (std::size_t k = 0; k < generators_.size(); ++k)
        if (generators_[k].degree == degree && generators_[k].index == index) return k;
    throw std::out_of_range(fmt::format("no ring generator {} in degree {}", index, degree));
}

Cochain GradedRing::rep(long degree, std::size_t index) const {
    return Cochain::make(complex_, degree, modulus_,
                         reduced_reps_[position_of(degree, index)].col_vec(0));
}

GroupElement GradedRing::coords(const Cochain& cocycle) const {
    if (!(cocycle.complex == complex_))
        throw std::invalid_argument("cochain lives on a different complex");
    if (cocycle.modulus != modulus_)
        throw std::invalid_argument("cochain modulus differs from the ring's");
    if (cocycle.degree < 0 || cocycle.degree > max_deg_)
        throw std::invalid_argument(
            fmt::format("degree {} outside the computed range 0..{}", cocycle.degree, max_deg_));
    return degrees_[static_cast<std::size_t>(cocycle.degree)].coords(cocycle.column());
}

GroupElement GradedRing::product(const RingGenerator& a, const RingGenerator& b) const {
    long dsum = a.degree + b.degree;
    if (dsum > max_deg_) return GroupElement::zero(FgAbGroup::trivial());
    auto it = table_.find(std::pair{position_of(a.degree, a.index), position_of(b.degree, b.index)});
    return it->second;
}

namespace {

std::string render_combination(const std::vector<Int>& coords,
                               const std::vector<std::string>& labels) {
    std::string out;
    for (std::size_t j = 0; j < coords.size(); ++j) {
        if (coords[j] == 0) continue;
        Int c = coords[j];
        if (out.empty()) {
            if (c < 0) out += '-';
        } else {
            out += c < 0 ? " - " : " + ";
        }
        if (c < 0) c = -c;
        if (c != 1) out += fmt::format("{}*", c.str());
        out += labels[j];
    }
    return out.empty() ? "0" : out;
}

}  // namespace

std::string GradedRing::render() const {
    std::string out = fmt::format("coefficients {}\n",
                                  modulus_ == 0 ? std::string("Z")
                                                : fmt::format("Z/{}", modulus_.str()));
    std::vector<std::vector<std::string>> labels(static_cast<std::size_t>(max_deg_) + 1);
    for (const auto& gen : generators_)
        labels[static_cast<std::size_t>(gen.degree)].push_back(gen.label);
    for (long d = 0; d <= max_deg_; ++d) {
        out += fmt::format("H^{} = {}", d, group(d).render());
        const auto& ls = labels[static_cast<std::size_t>(d)];
        if (!ls.empty()) out += fmt::format("  [{}]", fmt::join(ls, ", "));
        out += '\n';
    }
    if (!table_.empty()) out += "products:\n";
    for (const auto& [key, value] : table_) {
        const auto& a = generators_[key.first];
        const auto& b = generators_[key.second];
        out += fmt::format("  {}*{} = {}\n", a.label, b.label,
                           render_combination(value.coords,
                                              labels[static_cast<std::size_t>(a.degree + b.degree)]));
    }
    return out;
}

GradedRing cohomology_ring(const SimplicialComplex& x, const Int& modulus,
                           std::optional<long> max_deg) {
    return GradedRing(x, modulus, max_deg);
}

namespace {

struct PresLexer {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= text.size();
    }
    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c))
            throw std::invalid_argument(
                fmt::format("ring presentation: expected '{}' at offset {}", c, pos));
    }
    std::optional<Int> number() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) return std::nullopt;
        return Int(std::string(text.substr(start, pos - start)));
    }
    std::string name() {
        skip_ws();
        std::size_t start = pos;
        auto head = [](char c) {
            return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
        };
        auto body = [&](char c) {
            return head(c) || std::isdigit(static_cast<unsigned char>(c));
        };
        if (pos < text.size() && head(text[pos])) {
            ++pos;
            while (pos < text.size() && body(text[pos])) ++pos;
        }
        return std::string(text.substr(start, pos - start));
    }
};

std::size_t small_exponent(const Int& e) {
    if (e < 0 || e > 64)
        throw std::invalid_argument("ring presentation: exponent out of range");
    return static_cast<std::size_t>(e.convert_to<long>());
}

}  // namespace

long RingPresentation::term_degree(const Term& t) const {
    long d = 0;
    for (std::size_t i = 0; i < t.exponents.size(); ++i)
        d += static_cast<long>(t.exponents[i]) * gen_degrees[i];
    return d;
}

RingPresentation RingPresentation::parse(std::string_view text) {
    PresLexer lx{text, 0};
    RingPresentation p;

    if (lx.name() != "Z")
        throw std::invalid_argument("ring presentation: coefficients must be Z or Z/m");
    {
        std::size_t save = lx.pos;
        if (lx.eat('/')) {
            if (auto m = lx.number()) {
                if (*m < 2)
                    throw std::invalid_argument("ring presentation: modulus must be at least 2");
                p.modulus = *m;
            } else {
                lx.pos = save;  // the '/' opened the relation list instead
            }
        }
    }

    if (lx.eat('[')) {
        if (!lx.eat(']')) {
            while (true) {
                std::string nm = lx.name();
                if (nm.empty())
                    throw std::invalid_argument("ring presentation: expected generator name");
                long deg = 1;
                if (lx.eat(':')) {
                    auto n = lx.number();
                    if (!n) throw std::invalid_argument("ring presentation: expected degree");
                    deg = static_cast<long>(small_exponent(*n));
                }
                p.gen_names.push_back(std::move(nm));
                p.gen_degrees.push_back(deg);
                if (lx.eat(']')) break;
                lx.expect(',');
            }
        }
    }
    for (std::size_t i = 0; i < p.gen_names.size(); ++i)
        for (std::size_t j = i + 1; j < p.gen_names.size(); ++j)
            if (p.gen_names[i] == p.gen_names[j])
                throw std::invalid_argument(
                    fmt::format("ring presentation: duplicate generator {}", p.gen_names[i]));

    // longest declared generator name at the cursor
    auto match_gen = [&p](PresLexer& l) -> std::optional<std::size_t> {
        l.skip_ws();
        std::size_t best = p.gen_names.size();
        std::size_t best_len = 0;
        for (std::size_t i = 0; i < p.gen_names.size(); ++i) {
            const auto& nm = p.gen_names[i];
            if (nm.size() > best_len && l.text.substr(l.pos).starts_with(nm)) {
                best = i;
                best_len = nm.size();
            }
        }
        if (best == p.gen_names.size()) return std::nullopt;
        l.pos += best_len;
        return best;
    };

    // factor sequences in written order; canonicalization waits until the
    // generator degrees are final (trailing deg annotations may change them)
    struct RawTerm {
        Int coeff;
        std::vector<std::pair<std::size_t, std::size_t>> factors;
    };
    auto parse_term = [&](PresLexer& l) -> RawTerm {
        RawTerm t{1, {}};
        bool any = false;
        if (auto n = l.number()) {
            t.coeff = *n;
            any = true;
        }
        while (true) {
            std::size_t save = l.pos;
            l.eat('*');
            auto g = match_gen(l);
            if (!g) {
                l.pos = save;
                break;
            }
            std::size_t e = 1;
            if (l.eat('^')) {
                auto n = l.number();
                if (!n) throw std::invalid_argument("ring presentation: expected exponent");
                e = small_exponent(*n);
            }
            t.factors.emplace_back(*g, e);
            any = true;
        }
        if (!any) throw std::invalid_argument("ring presentation: empty term");
        return t;
    };

    auto parse_poly = [&](PresLexer& l) -> std::vector<RawTerm> {
        std::vector<RawTerm> poly;
        bool neg = l.eat('-');
        while (true) {
            RawTerm t = parse_term(l);
            if (neg) t.coeff = -t.coeff;
            poly.push_back(std::move(t));
            if (l.eat('+'))
                neg = false;
            else if (l.eat('-'))
                neg = true;
            else
                break;
        }
        return poly;
    };

    std::vector<std::vector<RawTerm>> raw_relations;
    if (lx.eat('/')) {
        lx.expect('(');
        if (!lx.eat(')')) {
            while (true) {
                raw_relations.push_back(parse_poly(lx));
                if (lx.eat(')')) break;
                lx.expect(',');
            }
        }
    }

    while (lx.eat(';')) {
        if (lx.name() != "deg")
            throw std::invalid_argument("ring presentation: expected 'deg' annotation");
        std::string nm = lx.name();
        auto it = std::find(p.gen_names.begin(), p.gen_names.end(), nm);
        if (it == p.gen_names.end())
            throw std::invalid_argument(
                fmt::format("ring presentation: unknown generator {}", nm));
        lx.expect('=');
        auto n = lx.number();
        if (!n) throw std::invalid_argument("ring presentation: expected degree");
        long deg = static_cast<long>(small_exponent(*n));
        if (deg < 1) throw std::invalid_argument("ring presentation: degree must be positive");
        p.gen_degrees[static_cast<std::size_t>(it - p.gen_names.begin())] = deg;
    }
    if (!lx.done())
        throw std::invalid_argument(
            fmt::format("ring presentation: trailing input at offset {}", lx.pos));

    for (long deg : p.gen_degrees)
        if (deg < 1) throw std::invalid_argument("ring presentation: degree must be positive");

    for (const auto& raw : raw_relations) {
        Relation rel;
        for (const auto& rt : raw) {
            Term t{rt.coeff, std::vector<std::size_t>(p.gen_names.size(), 0)};
            for (auto [g, e] : rt.factors) {
                // reorder into canonical generator order: each new odd factor
                // crosses the odd factors already placed to its right
                if (p.gen_degrees[g] % 2 != 0) {
                    std::size_t crossings = 0;
                    for (std::size_t k = g + 1; k < p.gen_names.size(); ++k)
                        if (p.gen_degrees[k] % 2 != 0) crossings += t.exponents[k];
                    if ((crossings * e) % 2 != 0) t.coeff = -t.coeff;
                }
                t.exponents[g] += e;
            }
            rel.terms.push_back(std::move(t));
        }
        p.relations.push_back(std::move(rel));
    }

    for (auto& r : p.relations) {
        r.degree = p.term_degree(r.terms.front());
        for (const auto& t : r.terms)
            if (p.term_degree(t) != r.degree)
                throw std::invalid_argument("ring presentation: relation is not homogeneous");
        if (r.degree < 1)
            throw std::invalid_argument("ring presentation: constant relation");
        // combine like terms
        std::map<std::vector<std::size_t>, Int> combined;
        for (const auto& t : r.terms) combined[t.exponents] += t.coeff;
        r.terms.clear();
        for (auto& [exps, coeff] : combined)
            if (coeff != 0) r.terms.push_back(Term{coeff, exps});
    }
    return p;
}

std::string RingPresentation::str() const {
    std::string out = modulus == 0 ? "Z" : fmt::format("Z/{}", modulus.str());
    out += '[';
    for (std::size_t i = 0; i < gen_names.size(); ++i) {
        if (i) out += ',';
        out += gen_names[i];
        if (gen_degrees[i] != 1) out += fmt::format(":{}", gen_degrees[i]);
    }
    out += ']';
    if (relations.empty()) return out;
    out += "/(";
    for (std::size_t r = 0; r < relations.size(); ++r) {
        if (r) out += ',';
        const auto& rel = relations[r];
        if (rel.terms.empty()) out += '0';
        for (std::size_t t = 0; t < rel.terms.size(); ++t) {
            const auto& term = rel.terms[t];
            Int c = term.coeff;
            if (t == 0) {
                if (c < 0) out += '-';
            } else {
                out += c < 0 ? '-' : '+';
            }
            if (c < 0) c = -c;
            std::string factors;
            for (std::size_t g = 0; g < term.exponents.size(); ++g) {
                if (term.exponents[g] == 0) continue;
                if (!factors.empty()) factors += '*';
                factors += gen_names[g];
                if (term.exponents[g] > 1) factors += fmt::format("^{}", term.exponents[g]);
            }
            if (factors.empty())
                out += c.str();
            else if (c != 1)
                out += fmt::format("{}*{}", c.str(), factors);
            else
                out += factors;
        }
    }
    out += ')';
    return out;
}

std::vector<std::vector<std::size_t>> RingPresentation::monomials(long d) const {
    std::vector<std::vector<std::size_t>> out;
    if (d < 0) return out;
    std::vector<std::size_t> current(gen_names.size(), 0);
    auto rec = [&](auto&& self, std::size_t i, long remaining) -> void {
        if (i == gen_names.size()) {
            if (remaining == 0) out.push_back(current);
            return;
        }
        for (long e = 0; e * gen_degrees[i] <= remaining; ++e) {
            current[i] = static_cast<std::size_t>(e);
            self(self, i + 1, remaining - e * gen_degrees[i]);
        }
        current[i] = 0;
    };
    rec(rec, 0, d);
    return out;
}

namespace {

// sign of reordering the concatenation a.b into canonical generator order
int koszul_sign(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b,
                const std::vector<long>& degrees) {
    std::size_t crossings = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
        if (degrees[j] % 2 == 0 || b[j] == 0) continue;
        std::size_t behind = 0;
        for (std::size_t k = j + 1; k < a.size(); ++k)
            if (degrees[k] % 2 != 0) behind += a[k];
        crossings += b[j] * behind;
    }
    return crossings % 2 == 0 ? 1 : -1;
}

}  // namespace

FgAbGroup RingPresentation::graded_piece(long d) const {
    auto mons = monomials(d);
    if (mons.empty()) return FgAbGroup::trivial();
    std::map<std::vector<std::size_t>, std::size_t> index;
    for (std::size_t i = 0; i < mons.size(); ++i) index[mons[i]] = i;

    std::vector<std::vector<Int>> cols;
    auto zero_col = [&] { return std::vector<Int>(mons.size(), Int(0)); };
    if (modulus > 0)
        for (std::size_t i = 0; i < mons.size(); ++i) {
            auto c = zero_col();
            c[i] = modulus;
            cols.push_back(std::move(c));
        }
    // graded commutativity forces 2*g^2 = 0 for odd-degree generators
    for (std::size_t g = 0; g < gen_names.size(); ++g) {
        if (gen_degrees[g] % 2 == 0) continue;
        for (const auto& nu : monomials(d - 2 * gen_degrees[g])) {
            auto target = nu;
            target[g] += 2;
            auto c = zero_col();
            c[index.at(target)] = 2;
            cols.push_back(std::move(c));
        }
    }
    for (const auto& rel : relations) {
        for (const auto& nu : monomials(d - rel.degree)) {
            auto c = zero_col();
            for (const auto& t : rel.terms) {
                std::vector<std::size_t> target(gen_names.size());
                for (std::size_t g = 0; g < target.size(); ++g)
                    target[g] = t.exponents[g] + nu[g];
                c[index.at(target)] += t.coeff * koszul_sign(t.exponents, nu, gen_degrees);
            }
            cols.push_back(std::move(c));
        }
    }

    IntMatrix rel_mat(mons.size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < mons.size(); ++i) rel_mat.at(i, j) = cols[j][i];
    return from_presentation(mons.size(), rel_mat).group;
}

namespace {

std::vector<GroupElement> candidate_elements(const FgAbGroup& g) {
    std::vector<GroupElement> out;
    std::set<std::vector<Int>> seen;
    auto push = [&](GroupElement e) {
        if (!e.is_zero() && seen.insert(e.coords).second) out.push_back(std::move(e));
    };
    if (g.free_rank == 0) {
        Int order = 1;
        for (const auto& t : g.torsion) {
            order *= t;
            if (order > 256) break;
        }
        if (order <= 256) {
            std::vector<Int> coords(g.gens(), 0);
            auto rec = [&](auto&& self, std::size_t i) -> void {
                if (i == g.torsion.size()) {
                    push(GroupElement::make(g, coords));
                    return;
                }
                for (Int c = 0; c < g.torsion[i]; ++c) {
                    coords[i] = c;
                    self(self, i + 1);
                }
                coords[i] = 0;
            };
            rec(rec, 0);
            return out;
        }
    }
    for (std::size_t j = 0; j < g.gens(); ++j)
        for (int s : {1, -1}) push(scale(s, GroupElement::generator(g, j)));
    for (std::size_t i = 0; i < g.gens(); ++i)
        for (std::size_t j = i + 1; j < g.gens(); ++j)
            for (int si : {1, -1})
                for (int sj : {1, -1})
                    push(add(scale(si, GroupElement::generator(g, i)),
                             scale(sj, GroupElement::generator(g, j))));
    return out;
}

Cochain realize(const GradedRing& ring, long degree, const GroupElement& e) {
    Cochain acc = Cochain::zero(ring.complex(), degree, ring.modulus());
    for (std::size_t j = 0; j < e.coords.size(); ++j)
        if (e.coords[j] != 0) acc = add(acc, scale(e.coords[j], ring.rep(degree, j)));
    return acc;
}

Cochain eval_monomial(const GradedRing& ring, const std::vector<Cochain>& assigned,
                      const std::vector<std::size_t>& exps) {
    Cochain acc = Cochain::unit(ring.complex(), ring.modulus());
    for (std::size_t i = 0; i < exps.size(); ++i)
        for (std::size_t e = 0; e < exps[i]; ++e) acc = aw_cup(acc, assigned[i]);
    return acc;
}

std::string render_in_ring(const GradedRing& ring, long degree, const GroupElement& e) {
    std::vector<std::string> labels;
    for (const auto& gen : ring.generators())
        if (gen.degree == degree) labels.push_back(gen.label);
    return render_combination(e.coords, labels);
}

}  // namespace

MatchWitness match_presentation(const GradedRing& ring, const RingPresentation& claim,
                                std::optional<long> max_deg_opt) {
    if (claim.modulus != ring.modulus())
        throw std::invalid_argument("claim coefficient ring differs from the computed ring's");
    long max_deg = max_deg_opt.value_or(ring.max_deg());
    if (max_deg < 0 || max_deg > ring.max_deg())
        throw std::invalid_argument(
            fmt::format("match degree {} outside the computed range 0..{}", max_deg,
                        ring.max_deg()));

    MatchWitness w;
    for (long d = 0; d <= max_deg; ++d) {
        FgAbGroup piece = claim.graded_piece(d);
        if (!(piece == ring.group(d))) {
            w.detail = fmt::format("graded piece mismatch in degree {}: claimed {}, computed {}",
                                   d, piece.render(), ring.group(d).render());
            return w;
        }
    }

    std::vector<std::vector<GroupElement>> cands;
    for (std::size_t i = 0; i < claim.gen_names.size(); ++i) {
        long d = claim.gen_degrees[i];
        if (d > max_deg) {
            w.detail = fmt::format("generator {} has degree {} beyond the checked range",
                                   claim.gen_names[i], d);
            return w;
        }
        cands.push_back(candidate_elements(ring.group(d)));
        if (cands.back().empty()) {
            w.detail = fmt::format("no candidate classes for generator {} in degree {}",
                                   claim.gen_names[i], d);
            return w;
        }
    }

    std::vector<std::size_t> pick(claim.gen_names.size(), 0);
    while (true) {
        std::vector<Cochain> assigned;
        std::vector<GroupElement> elems;
        for (std::size_t i = 0; i < pick.size(); ++i) {
            elems.push_back(cands[i][pick[i]]);
            assigned.push_back(realize(ring, claim.gen_degrees[i], elems.back()));
        }

        bool ok = true;
        for (const auto& rel : claim.relations) {
            if (rel.degree > max_deg) continue;  // products beyond max_deg vanish identically
            Cochain acc = Cochain::zero(ring.complex(), rel.degree, ring.modulus());
            for (const auto& t : rel.terms)
                acc = add(acc, scale(t.coeff, eval_monomial(ring, assigned, t.exponents)));
            if (!ring.coords(acc).is_zero()) {
                ok = false;
                break;
            }
        }
        if (ok) {
            for (long d = 0; d <= max_deg && ok; ++d) {
                auto mons = claim.monomials(d);
                IntMatrix span(ring.group(d).gens(), mons.size());
                for (std::size_t m = 0; m < mons.size(); ++m) {
                    auto cls = ring.coords(eval_monomial(ring, assigned, mons[m]));
                    for (std::size_t i = 0; i < cls.coords.size(); ++i)
                        span.at(i, m) = cls.coords[i];
                }
                GroupHom span_hom =
                    make_hom(FgAbGroup::free_group(mons.size()), ring.group(d), span);
                if (!same_subgroup(span_hom, identity_hom(ring.group(d)))) ok = false;
            }
        }
        if (ok) {
            w.matched = true;
            std::vector<std::string> parts;
            for (std::size_t i = 0; i < pick.size(); ++i) {
                w.assignment.emplace_back(claim.gen_names[i], elems[i]);
                parts.push_back(fmt::format("{} = {}", claim.gen_names[i],
                                            render_in_ring(ring, claim.gen_degrees[i], elems[i])));
            }
            w.detail = parts.empty() ? "no generators to assign" : fmt::format("{}", fmt::join(parts, ", "));
            return w;
        }

        std::size_t i = 0;
        for (; i < pick.size(); ++i) {
            if (++pick[i] < cands[i].size()) break;
            pick[i] = 0;
        }
        if (i == pick.size()) break;
    }
    w.detail = "no generator assignment satisfies the relations and spans the ring";
    return w;
}

}  // namespace cohom
