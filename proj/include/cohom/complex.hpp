#pragma once

// Finite cell complexes given by cell counts and integer boundary matrices,
// with integral homology, cohomology with finitely generated coefficients
// (computed at cochain level per cyclic coefficient factor and cross-checked
// against the universal-coefficient assembly), reduced cohomology, and the
// standard constructions: suspension, wedge, cofiber, tensor product.

#include <optional>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "cohom/abgroup.hpp"
#include "cohom/intmat.hpp"

namespace cohom {

// boundary(n) maps n-chains to (n-1)-chains; d(n-1) * d(n) = 0 is enforced
// at construction. Degrees outside [0, dim] have zero cells, and boundary
// matrices there are empty-shaped zero maps.
class CellComplex {
public:
    CellComplex(std::vector<std::size_t> cells, std::vector<IntMatrix> boundaries,
                std::optional<std::size_t> basepoint = std::nullopt);

    std::size_t dim() const { return cells_.empty() ? 0 : cells_.size() - 1; }
    const std::vector<std::size_t>& cell_counts() const { return cells_; }
    std::size_t cells(long n) const;
    IntMatrix boundary(long n) const;    // cells(n-1) x cells(n)
    IntMatrix coboundary(long n) const;  // boundary(n+1) transposed
    std::optional<std::size_t> basepoint() const { return basepoint_; }
    CellComplex with_basepoint(std::size_t p) const;
    Int euler_characteristic() const;

    nlohmann::json to_json() const;
    static CellComplex from_json(const nlohmann::json& j);

    bool operator==(const CellComplex&) const = default;

private:
    std::vector<std::size_t> cells_;
    std::vector<IntMatrix> boundaries_;  // boundaries_[k] = boundary(k+1)
    std::optional<std::size_t> basepoint_;
};

// Chain map: component(n) sends source n-chains to target n-chains; the
// chain condition d_target * f_n = f_{n-1} * d_source is enforced at
// construction. Missing trailing components are zero maps.
class CellularMap {
public:
    CellularMap(CellComplex source, CellComplex target, std::vector<IntMatrix> components);

    const CellComplex& source() const { return source_; }
    const CellComplex& target() const { return target_; }
    IntMatrix component(long n) const;  // zero map out of range

    static CellularMap identity(const CellComplex& x);
    // sends every 0-cell to the target's basepoint, everything above to zero
    static CellularMap to_basepoint(const CellComplex& x, const CellComplex& y);

private:
    CellComplex source_;
    CellComplex target_;
    std::vector<IntMatrix> components_;
};

// H_n(x; Z) = ker boundary(n) / im boundary(n+1); trivial out of range.
FgAbGroup homology(const CellComplex& x, long n);

// Degree-n cochain cohomology with coefficients Z/modulus (modulus 0 means
// Z), carrying the cocycle lattice, representative cocycles for the
// canonical generators, and a coordinatization of arbitrary cocycles.
// reduced augments the complex, which only affects degree 0.
struct CyclicCohomology {
    Int modulus;
    long degree = 0;
    bool reduced = false;
    FgAbGroup group;
    IntMatrix cocycles;  // cells(n) x k basis of {z : delta z = 0 mod modulus}
    Presentation pres;   // group presented on the cocycle basis
    IntMatrix reps;      // cells(n) x gens(group), integer representative cocycles

    IntMatrix rep(std::size_t j) const;  // column j of reps
    // class of the cocycle z (a cells(n) x 1 column); throws if z is not a
    // cocycle for this modulus
    GroupElement coords(const IntMatrix& z) const;
};

CyclicCohomology cyclic_cohomology(const CellComplex& x, long n, const Int& modulus,
                                   bool reduced = false);

// Hom induced on cohomology by a cochain-level map z -> cochain_map * z that
// commutes with the coboundaries modulo the (common) modulus.
GroupHom induced_hom(const CyclicCohomology& src, const CyclicCohomology& dst,
                     const IntMatrix& cochain_map);

// cyclic factors of g as moduli: one 0 per free generator, then the
// invariant factors in order
std::vector<Int> cyclic_moduli(const FgAbGroup& g);

// Degree-n cohomology with coefficients in g, one cyclic cochain computation
// per coefficient factor, assembled by direct sum. Construction verifies the
// result against Hom(H_n, g) + Ext(H_{n-1}, g) and refuses to disagree.
struct CohomologyResult {
    long degree = 0;
    FgAbGroup coefficients;
    FgAbGroup group;
    std::vector<CyclicCohomology> factors;  // one per cyclic factor of coefficients
    DirectSum sum;                          // assembles factor groups into group

    // representative of canonical generator j: one integer cochain per
    // coefficient factor
    std::vector<IntMatrix> rep(std::size_t j) const;
    // class of a factor-wise cocycle tuple
    GroupElement coords(const std::vector<IntMatrix>& z) const;
};

CohomologyResult cohomology(const CellComplex& x, long n, const FgAbGroup& g);

// dim over Z/p of H^n(x, Z/p), from mod-p ranks of the boundaries alone.
std::size_t cohomology_direct_mod_p(const CellComplex& x, long n, const Int& p);

// Cohomology of the augmented complex; requires a basepoint. Agrees with
// cohomology for n >= 1 and drops one g summand at n = 0.
FgAbGroup reduced_cohomology(const CellComplex& x, long n, const FgAbGroup& g);

// One 0-cell, one (n+1)-cell per non-basepoint n-cell; requires a basepoint.
CellComplex suspension(const CellComplex& x);
// Identifies all basepoints; requires one per summand.
CellComplex wedge(const std::vector<CellComplex>& xs);
// Mapping cone of f: the target plus a cone on the source; the cone tip is
// the result's basepoint.
CellComplex cofiber(const CellularMap& f);
// Tensor product of cellular chain complexes, d(a ox b) =
// da ox b + (-1)^|a| a ox db; pointed when both inputs are.
CellComplex tensor_complex(const CellComplex& x, const CellComplex& y);

}  // namespace cohom
