#pragma once

// Finitely generated abelian groups in invariant-factor canonical form.
//
// A group is Z^free_rank + Z/d_1 + ... + Z/d_t with every d_i >= 2 and
// d_i | d_{i+1}. Canonical coordinates list the free generators first and
// then the torsion generators; torsion coordinates are reduced into [0, d_i).
// Two groups are isomorphic exactly when their canonical fields are equal.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cohom/intmat.hpp"

namespace cohom {

struct FgAbGroup {
    std::size_t free_rank = 0;
    std::vector<Int> torsion;

    static FgAbGroup trivial() { return {}; }
    static FgAbGroup free_group(std::size_t r) { return {r, {}}; }
    static FgAbGroup cyclic(const Int& n);  // n = 0 gives Z, n >= 2 gives Z/n

    std::size_t gens() const { return free_rank + torsion.size(); }
    bool is_trivial() const { return gens() == 0; }
    // 0 for a free generator, d_i for a torsion generator
    Int gen_order(std::size_t i) const;
    // group order; 0 when infinite
    Int order() const;

    // n x t matrix whose columns are the torsion relations d_i * e_{free_rank+i}
    IntMatrix relation_matrix() const;

    std::string render() const;  // "0", "Z", "Z^2 + Z/2 + Z/6", ...
    // accepts the render grammar: summands Z, Z^r, Z/d joined by '+';
    // non-canonical sums are canonicalized
    static std::optional<FgAbGroup> parse(std::string_view text);

    bool operator==(const FgAbGroup&) const = default;
};

inline bool is_isomorphic(const FgAbGroup& a, const FgAbGroup& b) { return a == b; }

// canonical form of + over a list of cyclic orders (0 = Z, n >= 2 = Z/n;
// entries of 1 are dropped)
FgAbGroup canonical_from_orders(const std::vector<Int>& orders);

struct GroupElement {
    FgAbGroup group;
    std::vector<Int> coords;

    static GroupElement zero(const FgAbGroup& g);
    static GroupElement generator(const FgAbGroup& g, std::size_t i);
    static GroupElement make(const FgAbGroup& g, std::vector<Int> coords);

    bool is_zero() const;
    bool operator==(const GroupElement&) const = default;
};

GroupElement add(const GroupElement& a, const GroupElement& b);
GroupElement neg(const GroupElement& a);
GroupElement sub(const GroupElement& a, const GroupElement& b);
GroupElement scale(const Int& k, const GroupElement& a);
// smallest k >= 1 with k*a = 0; 0 when a has infinite order
Int element_order(const GroupElement& a);

// Homomorphism given on canonical generators: column j is the image of
// source generator j. Construction validates well-definedness (torsion
// orders map compatibly) and reduces rows into the target's ranges.
struct GroupHom {
    FgAbGroup source;
    FgAbGroup target;
    IntMatrix matrix;  // target.gens() x source.gens()

    bool operator==(const GroupHom&) const = default;
};

GroupHom make_hom(FgAbGroup source, FgAbGroup target, IntMatrix matrix);
GroupHom identity_hom(const FgAbGroup& g);
GroupHom zero_hom(const FgAbGroup& source, const FgAbGroup& target);
GroupHom mul_hom(const FgAbGroup& g, const Int& n);  // x -> n*x
GroupElement eval(const GroupHom& f, const GroupElement& x);
GroupHom compose(const GroupHom& g, const GroupHom& f);  // g after f
GroupHom hom_add(const GroupHom& f, const GroupHom& g);
GroupHom hom_neg(const GroupHom& f);

// Presentation cokernel Z^n / colspan(relations) in canonical form.
// projection maps presentation coordinates onto canonical ones; section
// lifts each canonical generator back: evaluating projection on section
// column j gives generator j (the matrix product is the identity only
// modulo torsion orders, since projection rows are stored reduced).
struct Presentation {
    FgAbGroup group;
    GroupHom projection;  // from free_group(n)
    IntMatrix section;    // n x group.gens()
};

Presentation from_presentation(std::size_t n_gens, const IntMatrix& relations);

struct SubgroupPart {
    FgAbGroup group;
    GroupHom inclusion;  // into the ambient group
};

struct QuotientPart {
    FgAbGroup group;
    GroupHom projection;  // from the ambient group
    IntMatrix section;    // ambient.gens() x group.gens(), lifts generators
};

SubgroupPart kernel(const GroupHom& f);
SubgroupPart image(const GroupHom& f);
QuotientPart cokernel(const GroupHom& f);

// {x : n*x = 0} with its inclusion, and g / n*g with its projection;
// n = 0 gives the whole group and g itself
SubgroupPart torsion_sub(const FgAbGroup& g, const Int& n);
QuotientPart quotient_by_n(const FgAbGroup& g, const Int& n);

FgAbGroup tensor(const FgAbGroup& g, const FgAbGroup& h);
FgAbGroup hom_group(const FgAbGroup& g, const FgAbGroup& h);
FgAbGroup ext_group(const FgAbGroup& g, const FgAbGroup& h);

struct DirectSum {
    FgAbGroup group;
    std::vector<GroupHom> inclusions;
    std::vector<GroupHom> projections;
    // lifts canonical generators of the sum to concatenated coordinates
    IntMatrix section;
    // maps concatenated coordinates onto the canonical sum
    IntMatrix assembly;
};

FgAbGroup direct_sum(const std::vector<FgAbGroup>& parts);
DirectSum direct_sum_with_maps(const std::vector<FgAbGroup>& parts);

// some x with f(x) = y, if any
std::optional<GroupElement> preimage(const GroupHom& f, const GroupElement& y);
// g with through ∘ g = f, if any (used for subgroup comparisons)
std::optional<GroupHom> factor_through(const GroupHom& f, const GroupHom& through);
// im(f) == im(g) as subgroups of their common target
bool same_subgroup(const GroupHom& f, const GroupHom& g);

}  // namespace cohom
