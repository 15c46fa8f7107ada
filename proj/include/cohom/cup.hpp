#pragma once

// Cup products on simplicial cochains via the front-face/back-face formula,
// cohomology rings extracted as structure constants over chosen generator
// cocycles, and verification of claimed generator/relation presentations.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cohom/complex.hpp"
#include "cohom/spaces.hpp"

namespace cohom {

// One coefficient per simplex of the degree, indexed like
// complex.simplices(degree); entries reduced into [0, m) when m > 0.
struct Cochain {
    SimplicialComplex complex;
    long degree = 0;
    Int modulus = 0;  // 0 means integer coefficients
    std::vector<Int> values;

    static Cochain zero(SimplicialComplex x, long degree, Int modulus);
    // the constant-1 vertex cochain (augmentation unit)
    static Cochain unit(SimplicialComplex x, Int modulus);
    static Cochain make(SimplicialComplex x, long degree, Int modulus, std::vector<Int> values);

    IntMatrix column() const;
    bool is_zero() const;
    bool operator==(const Cochain&) const = default;
};

Cochain add(const Cochain& a, const Cochain& b);
Cochain sub(const Cochain& a, const Cochain& b);
Cochain scale(const Int& k, const Cochain& a);
// (delta a)(s) = sum_i (-1)^i a(s omit vertex i)
Cochain coboundary(const Cochain& a);
bool is_cocycle(const Cochain& a);
// Alexander-Whitney product: (a cup b)(v0..v_{p+q}) = a(v0..vp) * b(vp..v_{p+q})
Cochain aw_cup(const Cochain& a, const Cochain& b);

struct RingGenerator {
    long degree = 0;
    std::size_t index = 0;  // position inside the degree-d group
    std::string label;
};

// Cohomology of a fixed triangulation in all degrees through max_deg, with
// representative cocycles for the canonical generators and the table of all
// pairwise generator products expressed in canonical coordinates.
class GradedRing {
public:
    GradedRing(SimplicialComplex x, Int modulus, std::optional<long> max_deg = std::nullopt);

    const SimplicialComplex& complex() const { return complex_; }
    const Int& modulus() const { return modulus_; }
    long max_deg() const { return max_deg_; }
    // trivial outside [0, max_deg]
    const FgAbGroup& group(long d) const;
    const std::vector<RingGenerator>& generators() const { return generators_; }
    Cochain rep(long degree, std::size_t index) const;
    Cochain rep(const RingGenerator& g) const { return rep(g.degree, g.index); }
    // class of a cocycle in its degree group
    GroupElement coords(const Cochain& cocycle) const;
    // entry of the structure-constant table
    GroupElement product(const RingGenerator& a, const RingGenerator& b) const;
    std::string render() const;

private:
    std::size_t position_of(long degree, std::size_t index) const;

    SimplicialComplex complex_;
    Int modulus_;
    long max_deg_ = 0;
    std::vector<CyclicCohomology> degrees_;
    std::vector<IntMatrix> reduced_reps_;  // one column per generator
    std::vector<RingGenerator> generators_;
    std::map<std::pair<std::size_t, std::size_t>, GroupElement> table_;
};

GradedRing cohomology_ring(const SimplicialComplex& x, const Int& modulus,
                           std::optional<long> max_deg = std::nullopt);

// Claimed presentation R[x,y,..]/(relations) of a graded-commutative ring.
// Text grammar: `Z[x,y]/(2y,x^2,y^2,x*y)` or `Z/2[x]/(x^3)`; generator
// degrees default to 1 and are given inline (`[x:1,y:2]`) or as trailing
// annotations (`; deg y=2`). Relations must be homogeneous.
struct RingPresentation {
    struct Term {
        Int coeff;
        std::vector<std::size_t> exponents;  // one per generator, canonical order
        bool operator==(const Term&) const = default;
    };
    struct Relation {
        std::vector<Term> terms;
        long degree = 0;
        bool operator==(const Relation&) const = default;
    };

    Int modulus = 0;
    std::vector<std::string> gen_names;
    std::vector<long> gen_degrees;
    std::vector<Relation> relations;

    static RingPresentation parse(std::string_view text);
    std::string str() const;
    long term_degree(const Term& t) const;
    // exponent vectors of all monomials of total degree d
    std::vector<std::vector<std::size_t>> monomials(long d) const;
    // degree-d piece of the presented graded-commutative ring
    FgAbGroup graded_piece(long d) const;

    bool operator==(const RingPresentation&) const = default;
};

struct MatchWitness {
    bool matched = false;
    std::string detail;  // assignment on success, first obstruction on failure
    std::vector<std::pair<std::string, GroupElement>> assignment;
};

// True iff some assignment of claim generators to classes of the matching
// degree makes every claim relation vanish, the claim monomials span every
// graded piece, and the presented graded pieces agree with the computed
// groups, all through max_deg.
MatchWitness match_presentation(const GradedRing& ring, const RingPresentation& claim,
                                std::optional<long> max_deg = std::nullopt);

}  // namespace cohom
