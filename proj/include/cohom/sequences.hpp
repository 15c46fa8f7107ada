#pragma once

// Long exact sequences as finite windows: Mayer-Vietoris assembled from the
// snake lemma on the cochain cover sequence of a simplicial cover, Gysin
// windows for sphere bundles, a generic exactness checker, a deliberately
// conservative two-rule solver for unknown slots, and the axiom harness
// (additivity, suspension, dimension, exactness) over the space catalog.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "cohom/spaces.hpp"

namespace cohom {

// One node of a sequence window: a named group, possibly not yet known.
// Slots sharing a name denote the same group; solve() keeps them in sync.
// rule records how a solved slot was deduced and stays empty otherwise.
struct SequenceSlot {
    std::string name;
    std::optional<FgAbGroup> group;
    std::string rule;

    static SequenceSlot known(std::string name, FgAbGroup g);
    static SequenceSlot unknown(std::string name);
    bool is_known() const { return group.has_value(); }

    bool operator==(const SequenceSlot&) const = default;
};

// Finite window of an exact sequence. edges[i] maps nodes[i] to nodes[i+1]
// and may be absent when only the groups are known; edge_labels[i] names the
// map regardless. Exactness at interior nodes is the represented contract;
// the truncation flags say the ambient sequence continues past the window.
struct LongExactSequence {
    std::vector<SequenceSlot> nodes;
    std::vector<std::optional<GroupHom>> edges;
    std::vector<std::string> edge_labels;
    bool truncated_left = true;
    bool truncated_right = true;

    // validates counts and that every present edge matches its endpoint groups
    static LongExactSequence make(std::vector<SequenceSlot> nodes,
                                  std::vector<std::optional<GroupHom>> edges,
                                  std::vector<std::string> edge_labels, bool truncated_left = true,
                                  bool truncated_right = true);

    // copy with node idx forgotten (group and rule cleared, adjacent edges
    // dropped); the starting point for solver round trips
    LongExactSequence with_unknown(std::size_t idx) const;

    std::string render() const;
    nlohmann::json to_json() const;
};

// image(in-edge) == kernel(out-edge) at each interior node; requires every
// node known and every edge present
struct ExactnessReport {
    std::vector<bool> exact_at;  // entry k covers node k+1
    bool all_exact() const;
};
ExactnessReport check_exact(const LongExactSequence& seq);

// Fills unknown slots by exactly two deduction rules, repeated to a fixed
// point together with name propagation:
//   (a) 0 -> A -> ? -> 0 or 0 -> ? -> C -> 0 forces the isomorphism
//   (b) 0 -> ? -> 0 forces the trivial group
// Anything else stays indeterminate; the solver never guesses.
struct SolveOutcome {
    LongExactSequence sequence;
    std::vector<std::size_t> solved;
    std::vector<std::size_t> indeterminate;
    bool complete() const { return indeterminate.empty(); }
};
SolveOutcome solve(const LongExactSequence& seq);

// Mayer-Vietoris window for a cover x = a union b (facets of x split between
// a and b, all on the ambient vertex set), running
//   0 -> H^0(x) -> H^0(a)+H^0(b) -> H^0(a&b) -> H^1(x) -> ...
// through degrees 0..max_deg and closing at H^{max_deg+1}(x). The maps come
// from cochain restrictions and the snake connecting map of the cover
// sequence 0 -> C(x) -> C(a)+C(b) -> C(a&b) -> 0, one cyclic coefficient
// factor at a time, assembled by direct sum. reduced augments every complex
// (the intersection must be nonempty), which only changes degree 0.
LongExactSequence mayer_vietoris(const SimplicialComplex& x, const SimplicialComplex& a,
                                 const SimplicialComplex& b, const FgAbGroup& g, long max_deg,
                                 bool reduced = false);

// Optional concrete maps for a Gysin window, keyed by degree i:
//   cup_e:       H^i(B) -> H^{i+n}(B)
//   pi_star:     H^i(B) -> H^i(E)
//   integration: H^i(E) -> H^{i+1-n}(B)
struct GysinMaps {
    std::map<long, GroupHom> cup_e;
    std::map<long, GroupHom> pi_star;
    std::map<long, GroupHom> integration;
};

// Gysin window of a sphere bundle with fiber S^{n-1}, total space groups
// total[i] = H^i(E) and base slots base[i] = H^i(B) (absent = unknown):
//   H^0(B) -> H^0(E) -> H^{1-n}(B) -> H^1(B) -> H^1(E) -> ...
// through degree max_deg; negative-degree base slots are the zero group.
// Provided maps are placed on their edges and must match the slot groups.
LongExactSequence gysin(const std::vector<std::optional<FgAbGroup>>& base,
                        const std::vector<FgAbGroup>& total, const GysinMaps& maps, long n,
                        long max_deg);

// Circle bundle S^1 -> S^5 -> CP^2 with integer coefficients, degrees 0..4:
// solving the window forces H^2 and H^4 isomorphic to Z via the cup-e edges,
// so e and e^2 generate.
LongExactSequence gysin_preset_cp2();

// Line bundle S^0 -> (contractible) -> RP^inf with Z/2 coefficients through
// degree max_deg. The window head replaces the degree-0 entry of the total
// space by coker(pi*), which vanishes because pi* hits the unit; solving then
// walks cup-e isomorphisms up every degree.
LongExactSequence gysin_preset_rpinf(long max_deg);

// The cellular maps whose cofiber sequences the exactness axiom is run on:
// identity, constant self-map, constant map to S^2, and per space extras
// (degree two on S^1, the torus collapse onto S^2, wedge part inclusions).
std::vector<std::pair<std::string, CellularMap>> exactness_maps(const SpaceId& id);

// Runs the four axiom checks for one space and coefficient group, degrees
// <= 3: additivity over wedge summands, suspension shift, dimension on S^0
// for n in [-2,4] minus {0} (the value at 0 is reported, not judged), and
// cofiber exactness for exactness_maps(id).
struct AxiomReport {
    bool additivity = false;
    bool suspension = false;
    bool dimension = false;
    bool exactness = false;
    std::vector<std::string> notes;

    bool all_pass() const { return additivity && suspension && dimension && exactness; }
};
AxiomReport axiom_suite(const SpaceId& id, const FgAbGroup& g);

}  // namespace cohom
