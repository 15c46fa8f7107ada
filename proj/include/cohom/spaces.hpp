#pragma once

// Catalog of built-in spaces: fixed cellular models for every space name,
// plus embedded fixture triangulations (with covering pairs) for the spaces
// whose cup products and Mayer-Vietoris sequences are computed simplicially.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "cohom/complex.hpp"

namespace cohom {

// Space names: s0, s1, ... (spheres), torus, klein, rp2, rp3, rpN:k, cp2,
// wedge:<id>,<id>,..., susp:<id>.
struct SpaceId {
    enum class Kind { Sphere, Torus, Klein, Rp, Cp2, Wedge, Susp };

    Kind kind = Kind::Sphere;
    std::size_t param = 0;       // sphere or rp dimension
    std::vector<SpaceId> parts;  // wedge summands, or the suspended space

    static std::optional<SpaceId> parse(std::string_view text);
    static SpaceId sphere(std::size_t n);
    static SpaceId named(Kind k, std::size_t param = 0);
    std::string str() const;

    bool operator==(const SpaceId&) const = default;
};

// Simplices are stored per dimension as sorted vertex lists in lexicographic
// order; orientation is increasing vertex order, boundary sign (-1)^i on the
// face omitting vertex i. Subcomplexes keep the ambient vertex labels, so a
// vertex may belong to no simplex.
class SimplicialComplex {
public:
    SimplicialComplex(std::size_t vertices, std::vector<std::vector<std::size_t>> facets);

    std::size_t vertices() const { return vertices_; }
    std::size_t dim() const { return by_dim_.empty() ? 0 : by_dim_.size() - 1; }
    const std::vector<std::vector<std::size_t>>& facets() const { return facets_; }
    const std::vector<std::vector<std::size_t>>& simplices(std::size_t d) const;
    std::optional<std::size_t> index_of(const std::vector<std::size_t>& simplex) const;
    // cellular chain complex of the derived simplices; the basepoint names a
    // vertex, which must belong to the complex
    CellComplex chain_complex(std::optional<std::size_t> basepoint_vertex = std::nullopt) const;

    nlohmann::json to_json() const;
    static SimplicialComplex from_json(const nlohmann::json& j);

    bool operator==(const SimplicialComplex&) const = default;

private:
    std::size_t vertices_ = 0;
    std::vector<std::vector<std::size_t>> facets_;
    std::vector<std::vector<std::vector<std::size_t>>> by_dim_;
};

// cochain restriction from an ambient complex onto a subcomplex in degree d:
// picks the ambient coordinate of each subcomplex simplex
IntMatrix restriction_matrix(const SimplicialComplex& ambient, const SimplicialComplex& sub,
                             std::size_t d);

// subcomplex of all simplices lying in both arguments (same vertex labels)
SimplicialComplex intersect_complexes(const SimplicialComplex& a, const SimplicialComplex& b);

struct CoveringPair {
    SimplicialComplex total;
    SimplicialComplex a;
    SimplicialComplex b;
    SimplicialComplex intersection;
    std::size_t basepoint_vertex;  // common vertex, lies in the intersection
};

// fixed cellular model of any space id
CellComplex cellular(const SpaceId& id);
// embedded fixture triangulation (spheres up to dim 3, torus, rp2, klein,
// wedges of these); validated against the cellular model at load
SimplicialComplex simplicial(const SpaceId& id);
bool has_simplicial(const SpaceId& id);
// two subcomplexes covering the fixture, with their intersection
CoveringPair covering_pair(const SpaceId& id);
// the spaces every acceptance and axiom sweep runs over
std::vector<SpaceId> catalog();

}  // namespace cohom
