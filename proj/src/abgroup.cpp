#include "cohom/abgroup.hpp"

#include <boost/multiprecision/integer.hpp>

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace cohom {

namespace {

Int gcd_int(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
Int lcm_int(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

Int reduce_coord(const Int& v, const Int& order) {
    if (order == 0) return v;
    Int r = v % order;
    if (r < 0) r += order;
    return r;
}

}  // namespace

FgAbGroup FgAbGroup::cyclic(const Int& n) {
    Int m = abs(n);
    if (m == 0) return free_group(1);
    if (m == 1) return trivial();
    return {0, {m}};
}

Int FgAbGroup::gen_order(std::size_t i) const {
    return i < free_rank ? Int(0) : torsion[i - free_rank];
}

Int FgAbGroup::order() const {
    if (free_rank > 0) return 0;
    Int n = 1;
    for (const Int& d : torsion) n *= d;
    return n;
}

IntMatrix FgAbGroup::relation_matrix() const {
    IntMatrix r(gens(), torsion.size());
    for (std::size_t i = 0; i < torsion.size(); ++i) r.at(free_rank + i, i) = torsion[i];
    return r;
}

std::string FgAbGroup::render() const {
    if (is_trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    auto sep = [&] {
        if (!first) os << " + ";
        first = false;
    };
    if (free_rank == 1) {
        sep();
        os << "Z";
    } else if (free_rank > 1) {
        sep();
        os << "Z^" << free_rank;
    }
    for (const Int& d : torsion) {
        sep();
        os << "Z/" << d;
    }
    return os.str();
}

std::optional<FgAbGroup> FgAbGroup::parse(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) return std::nullopt;
    if (s == "0") return trivial();

    std::vector<Int> orders;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t next = s.find('+', pos);
        std::string tok = s.substr(pos, next == std::string::npos ? next : next - pos);
        pos = next == std::string::npos ? s.size() : next + 1;
        if (tok.empty() || tok[0] != 'Z') return std::nullopt;
        try {
            if (tok == "Z") {
                orders.push_back(0);
            } else if (tok[1] == '^') {
                long long r = std::stoll(tok.substr(2));
                if (r < 0) return std::nullopt;
                for (long long i = 0; i < r; ++i) orders.push_back(0);
            } else if (tok[1] == '/') {
                Int d(tok.substr(2));
                if (d < 1) return std::nullopt;
                orders.push_back(d);
            } else {
                return std::nullopt;
            }
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }
    return canonical_from_orders(orders);
}

FgAbGroup canonical_from_orders(const std::vector<Int>& orders) {
    std::vector<Int> diag;
    for (const Int& d : orders) diag.push_back(abs(d));
    IntMatrix rel = IntMatrix::diagonal(diag, diag.size(), diag.size());
    return from_presentation(diag.size(), rel).group;
}

GroupElement GroupElement::zero(const FgAbGroup& g) { return {g, std::vector<Int>(g.gens())}; }

GroupElement GroupElement::generator(const FgAbGroup& g, std::size_t i) {
    if (i >= g.gens()) throw std::invalid_argument("generator index out of range");
    auto e = zero(g);
    e.coords[i] = 1;
    return e;
}

GroupElement GroupElement::make(const FgAbGroup& g, std::vector<Int> coords) {
    if (coords.size() != g.gens()) throw std::invalid_argument("element coordinate length mismatch");
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = reduce_coord(coords[i], g.gen_order(i));
    return {g, std::move(coords)};
}

bool GroupElement::is_zero() const {
    return std::all_of(coords.begin(), coords.end(), [](const Int& v) { return v == 0; });
}

GroupElement add(const GroupElement& a, const GroupElement& b) {
    if (a.group != b.group) throw std::invalid_argument("add: mixed groups");
    std::vector<Int> c(a.coords);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coords[i];
    return GroupElement::make(a.group, std::move(c));
}

GroupElement neg(const GroupElement& a) {
    std::vector<Int> c(a.coords);
    for (Int& v : c) v = -v;
    return GroupElement::make(a.group, std::move(c));
}

GroupElement sub(const GroupElement& a, const GroupElement& b) { return add(a, neg(b)); }

GroupElement scale(const Int& k, const GroupElement& a) {
    std::vector<Int> c(a.coords);
    for (Int& v : c) v *= k;
    return GroupElement::make(a.group, std::move(c));
}

Int element_order(const GroupElement& a) {
    Int ord = 1;
    for (std::size_t i = 0; i < a.coords.size(); ++i) {
        if (a.coords[i] == 0) continue;
        Int d = a.group.gen_order(i);
        if (d == 0) return 0;
        ord = lcm_int(ord, d / gcd_int(d, a.coords[i]));
    }
    return ord;
}

GroupHom make_hom(FgAbGroup source, FgAbGroup target, IntMatrix matrix) {
    if (matrix.rows() != target.gens() || matrix.cols() != source.gens())
        throw std::invalid_argument("make_hom: matrix shape mismatch");
    for (std::size_t j = 0; j < source.gens(); ++j) {
        Int dj = source.gen_order(j);
        if (dj == 0) continue;
        for (std::size_t i = 0; i < target.gens(); ++i) {
            Int ei = target.gen_order(i);
            Int v = dj * matrix.at(i, j);
            bool ok = (ei == 0) ? v == 0 : v % ei == 0;
            if (!ok) throw std::invalid_argument("make_hom: not well defined on torsion");
        }
    }
    for (std::size_t i = 0; i < target.gens(); ++i) {
        Int ei = target.gen_order(i);
        if (ei == 0) continue;
        for (std::size_t j = 0; j < source.gens(); ++j)
            matrix.at(i, j) = reduce_coord(matrix.at(i, j), ei);
    }
    return {std::move(source), std::move(target), std::move(matrix)};
}

GroupHom identity_hom(const FgAbGroup& g) { return make_hom(g, g, IntMatrix::identity(g.gens())); }

GroupHom zero_hom(const FgAbGroup& source, const FgAbGroup& target) {
    return make_hom(source, target, IntMatrix(target.gens(), source.gens()));
}

GroupHom mul_hom(const FgAbGroup& g, const Int& n) {
    IntMatrix m = IntMatrix::identity(g.gens()).scaled(n);
    return make_hom(g, g, std::move(m));
}

GroupElement eval(const GroupHom& f, const GroupElement& x) {
    if (x.group != f.source) throw std::invalid_argument("eval: element not in the source");
    return GroupElement::make(f.target, f.matrix.apply(x.coords));
}

GroupHom compose(const GroupHom& g, const GroupHom& f) {
    if (f.target != g.source) throw std::invalid_argument("compose: middle group mismatch");
    return make_hom(f.source, g.target, g.matrix * f.matrix);
}

GroupHom hom_add(const GroupHom& f, const GroupHom& g) {
    if (f.source != g.source || f.target != g.target)
        throw std::invalid_argument("hom_add: endpoint mismatch");
    return make_hom(f.source, f.target, f.matrix + g.matrix);
}

GroupHom hom_neg(const GroupHom& f) { return make_hom(f.source, f.target, -f.matrix); }

Presentation from_presentation(std::size_t n_gens, const IntMatrix& relations) {
    if (relations.rows() != n_gens)
        throw std::invalid_argument("from_presentation: relation rows must match generators");
    SmithDecomposition sd = smith(relations);
    const std::size_t k = std::min(n_gens, relations.cols());

    std::vector<std::size_t> free_idx, torsion_idx;
    std::vector<Int> torsion;
    for (std::size_t i = 0; i < n_gens; ++i) {
        Int d = i < k ? sd.diag.at(i, i) : Int(0);
        if (d == 0) {
            free_idx.push_back(i);
        } else if (d >= 2) {
            torsion_idx.push_back(i);
            torsion.push_back(d);
        }
    }

    FgAbGroup group{free_idx.size(), torsion};
    std::vector<std::size_t> sel = free_idx;
    sel.insert(sel.end(), torsion_idx.begin(), torsion_idx.end());

    IntMatrix proj = sd.left.rows_selected(sel);
    IntMatrix section(n_gens, sel.size());
    for (std::size_t j = 0; j < sel.size(); ++j)
        for (std::size_t i = 0; i < n_gens; ++i) section.at(i, j) = sd.left_inv.at(i, sel[j]);

    return Presentation{group, make_hom(FgAbGroup::free_group(n_gens), group, proj), section};
}

namespace {

// lattice L (columns of gens) containing the relation lattice rel;
// returns the canonical form of L / rel together with the generator lift
struct LatticeQuotient {
    Presentation pres;
    IntMatrix basis;  // ambient x b
};

LatticeQuotient lattice_quotient(const IntMatrix& gens, const IntMatrix& rel) {
    IntMatrix basis = lattice_basis(gens);
    auto expressed = solve_all(basis, rel);
    if (!expressed) throw std::logic_error("lattice_quotient: relations escape the lattice");
    return {from_presentation(basis.cols(), *expressed), basis};
}

}  // namespace

SubgroupPart kernel(const GroupHom& f) {
    const std::size_t a_gens = f.source.gens();
    IntMatrix rel_a = f.source.relation_matrix();
    IntMatrix big = IntMatrix::hstack(f.matrix, f.target.relation_matrix());
    IntMatrix k = kernel_basis(big);

    std::vector<std::size_t> top(a_gens);
    for (std::size_t i = 0; i < a_gens; ++i) top[i] = i;
    IntMatrix x = k.rows_selected(top);

    auto lq = lattice_quotient(IntMatrix::hstack(x, rel_a), rel_a);
    IntMatrix incl = lq.basis * lq.pres.section;
    return {lq.pres.group, make_hom(lq.pres.group, f.source, incl)};
}

SubgroupPart image(const GroupHom& f) {
    IntMatrix rel_c = f.target.relation_matrix();
    auto lq = lattice_quotient(IntMatrix::hstack(f.matrix, rel_c), rel_c);
    IntMatrix incl = lq.basis * lq.pres.section;
    return {lq.pres.group, make_hom(lq.pres.group, f.target, incl)};
}

QuotientPart cokernel(const GroupHom& f) {
    IntMatrix rel = IntMatrix::hstack(f.matrix, f.target.relation_matrix());
    Presentation pres = from_presentation(f.target.gens(), rel);
    GroupHom proj = make_hom(f.target, pres.group, pres.projection.matrix);
    return {pres.group, proj, pres.section};
}

SubgroupPart torsion_sub(const FgAbGroup& g, const Int& n) { return kernel(mul_hom(g, n)); }

QuotientPart quotient_by_n(const FgAbGroup& g, const Int& n) { return cokernel(mul_hom(g, n)); }

namespace {

std::vector<Int> cyclic_factors(const FgAbGroup& g) {
    std::vector<Int> f(g.free_rank, Int(0));
    f.insert(f.end(), g.torsion.begin(), g.torsion.end());
    return f;
}

}  // namespace

FgAbGroup tensor(const FgAbGroup& g, const FgAbGroup& h) {
    std::vector<Int> orders;
    for (const Int& a : cyclic_factors(g))
        for (const Int& b : cyclic_factors(h)) {
            if (a == 0 && b == 0)
                orders.push_back(0);
            else if (a == 0)
                orders.push_back(b);
            else if (b == 0)
                orders.push_back(a);
            else
                orders.push_back(gcd_int(a, b));
        }
    return canonical_from_orders(orders);
}

FgAbGroup hom_group(const FgAbGroup& g, const FgAbGroup& h) {
    std::vector<Int> orders;
    for (const Int& a : cyclic_factors(g))
        for (const Int& b : cyclic_factors(h)) {
            if (a == 0)
                orders.push_back(b);  // Hom(Z, C) = C
            else if (b == 0)
                continue;  // Hom(Z/a, Z) = 0
            else
                orders.push_back(gcd_int(a, b));
        }
    return canonical_from_orders(orders);
}

FgAbGroup ext_group(const FgAbGroup& g, const FgAbGroup& h) {
    std::vector<Int> orders;
    for (const Int& a : cyclic_factors(g)) {
        if (a == 0) continue;  // Ext(Z, C) = 0
        for (const Int& b : cyclic_factors(h))
            orders.push_back(b == 0 ? a : gcd_int(a, b));  // Ext(Z/a, C) = C/a
    }
    return canonical_from_orders(orders);
}

FgAbGroup direct_sum(const std::vector<FgAbGroup>& parts) {
    std::vector<Int> orders;
    for (const auto& p : parts) {
        auto f = cyclic_factors(p);
        orders.insert(orders.end(), f.begin(), f.end());
    }
    return canonical_from_orders(orders);
}

DirectSum direct_sum_with_maps(const std::vector<FgAbGroup>& parts) {
    std::size_t total = 0;
    for (const auto& p : parts) total += p.gens();

    std::vector<Int> orders;
    orders.reserve(total);
    for (const auto& p : parts)
        for (std::size_t i = 0; i < p.gens(); ++i) orders.push_back(p.gen_order(i));

    IntMatrix rel(total, 0);
    {
        std::vector<std::size_t> torsion_pos;
        for (std::size_t i = 0; i < total; ++i)
            if (orders[i] != 0) torsion_pos.push_back(i);
        rel = IntMatrix(total, torsion_pos.size());
        for (std::size_t c = 0; c < torsion_pos.size(); ++c)
            rel.at(torsion_pos[c], c) = orders[torsion_pos[c]];
    }

    Presentation pres = from_presentation(total, rel);
    DirectSum out{pres.group, {}, {}, pres.section, pres.projection.matrix};

    std::size_t off = 0;
    for (const auto& p : parts) {
        std::vector<std::size_t> block(p.gens());
        for (std::size_t i = 0; i < p.gens(); ++i) block[i] = off + i;
        out.inclusions.push_back(make_hom(p, pres.group, pres.projection.matrix.cols_selected(block)));
        out.projections.push_back(make_hom(pres.group, p, pres.section.rows_selected(block)));
        off += p.gens();
    }
    return out;
}

std::optional<GroupElement> preimage(const GroupHom& f, const GroupElement& y) {
    if (y.group != f.target) throw std::invalid_argument("preimage: element not in the target");
    IntMatrix big = IntMatrix::hstack(f.matrix, f.target.relation_matrix());
    auto sol = solve(big, y.coords);
    if (!sol) return std::nullopt;
    std::vector<Int> x(sol->begin(), sol->begin() + f.source.gens());
    return GroupElement::make(f.source, std::move(x));
}

std::optional<GroupHom> factor_through(const GroupHom& f, const GroupHom& through) {
    if (f.target != through.target) throw std::invalid_argument("factor_through: target mismatch");
    IntMatrix m(through.source.gens(), f.source.gens());
    for (std::size_t j = 0; j < f.source.gens(); ++j) {
        auto p = preimage(through, eval(f, GroupElement::generator(f.source, j)));
        if (!p) return std::nullopt;
        for (std::size_t i = 0; i < m.rows(); ++i) m.at(i, j) = p->coords[i];
    }
    try {
        return make_hom(f.source, through.source, std::move(m));
    } catch (const std::invalid_argument&) {
        // generator lifts exist but do not assemble; only possible when
        // `through` is not injective
        return std::nullopt;
    }
}

bool same_subgroup(const GroupHom& f, const GroupHom& g) {
    if (f.target != g.target) return false;
    auto contained = [](const GroupHom& a, const GroupHom& b) {
        for (std::size_t j = 0; j < a.source.gens(); ++j)
            if (!preimage(b, eval(a, GroupElement::generator(a.source, j)))) return false;
        return true;
    };
    return contained(f, g) && contained(g, f);
}

}  // namespace cohom
