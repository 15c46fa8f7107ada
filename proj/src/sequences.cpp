#include "cohom/sequences.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace cohom {

SequenceSlot SequenceSlot::known(std::string name, FgAbGroup g) {
    return SequenceSlot{std::move(name), std::move(g), ""};
}

SequenceSlot SequenceSlot::unknown(std::string name) {
    return SequenceSlot{std::move(name), std::nullopt, ""};
}

LongExactSequence LongExactSequence::make(std::vector<SequenceSlot> nodes,
                                          std::vector<std::optional<GroupHom>> edges,
                                          std::vector<std::string> edge_labels,
                                          bool truncated_left, bool truncated_right) {
    if (nodes.size() < 2) throw std::invalid_argument("a sequence window needs at least two nodes");
    if (edges.size() + 1 != nodes.size() || edge_labels.size() != edges.size())
        throw std::invalid_argument("node, edge, and label counts disagree");
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (!edges[i]) continue;
        if (!nodes[i].is_known() || !nodes[i + 1].is_known())
            throw std::invalid_argument("a concrete map needs known endpoint groups");
        if (edges[i]->source != *nodes[i].group || edges[i]->target != *nodes[i + 1].group)
            throw std::invalid_argument(
                fmt::format("edge {} does not match its endpoint groups", i));
    }
    return LongExactSequence{std::move(nodes), std::move(edges), std::move(edge_labels),
                             truncated_left, truncated_right};
}

LongExactSequence LongExactSequence::with_unknown(std::size_t idx) const {
    if (idx >= nodes.size()) throw std::invalid_argument("node index out of range");
    LongExactSequence out = *this;
    out.nodes[idx].group.reset();
    out.nodes[idx].rule.clear();
    if (idx > 0) out.edges[idx - 1].reset();
    if (idx < out.edges.size()) out.edges[idx].reset();
    return out;
}

std::string LongExactSequence::render() const {
    std::string out = truncated_left ? "... -> " : "";
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (i > 0)
            out += edge_labels[i - 1].empty() ? " -> "
                                              : fmt::format(" --{}--> ", edge_labels[i - 1]);
        if (nodes[i].name == "0" && nodes[i].is_known() && nodes[i].group->is_trivial())
            out += "0";
        else
            out += fmt::format("{} = {}", nodes[i].name,
                               nodes[i].is_known() ? nodes[i].group->render() : "?");
    }
    if (truncated_right) out += " -> ...";
    for (const auto& nd : nodes)
        if (!nd.rule.empty()) out += fmt::format("\n  {}: {}", nd.name, nd.rule);
    return out;
}

nlohmann::json LongExactSequence::to_json() const {
    nlohmann::json nj = nlohmann::json::array();
    for (const auto& nd : nodes)
        nj.push_back({{"name", nd.name},
                      {"group", nd.is_known() ? nlohmann::json(nd.group->render())
                                              : nlohmann::json(nullptr)},
                      {"rule", nd.rule}});
    nlohmann::json ej = nlohmann::json::array();
    for (std::size_t i = 0; i < edges.size(); ++i)
        ej.push_back({{"label", edge_labels[i]},
                      {"matrix", edges[i] ? matrix_to_json(edges[i]->matrix)
                                          : nlohmann::json(nullptr)}});
    return {{"nodes", nj},
            {"edges", ej},
            {"truncated_left", truncated_left},
            {"truncated_right", truncated_right}};
}

bool ExactnessReport::all_exact() const {
    return std::all_of(exact_at.begin(), exact_at.end(), [](bool b) { return b; });
}

ExactnessReport check_exact(const LongExactSequence& seq) {
    for (const auto& nd : seq.nodes)
        if (!nd.is_known())
            throw std::invalid_argument("exactness check needs every group known");
    for (const auto& e : seq.edges)
        if (!e) throw std::invalid_argument("exactness check needs every map present");
    ExactnessReport report;
    for (std::size_t k = 1; k + 1 < seq.nodes.size(); ++k)
        report.exact_at.push_back(same_subgroup(image(*seq.edges[k - 1]).inclusion,
                                                kernel(*seq.edges[k]).inclusion));
    return report;
}

SolveOutcome solve(const LongExactSequence& seq) {
    SolveOutcome out{seq, {}, {}};
    auto& s = out.sequence;
    const std::size_t n = s.nodes.size();
    auto trivial_at = [&](std::size_t k) {
        return s.nodes[k].is_known() && s.nodes[k].group->is_trivial();
    };
    auto label_text = [&](std::size_t e) {
        return s.edge_labels[e].empty() ? std::string("the adjacent map") : s.edge_labels[e];
    };
    // filling a slot fills every slot of the same name: they denote one group
    auto fill = [&](std::size_t k, const FgAbGroup& g, const std::string& rule) {
        const std::string name = s.nodes[k].name;
        for (std::size_t j = 0; j < n; ++j) {
            if (s.nodes[j].is_known() || s.nodes[j].name != name) continue;
            s.nodes[j].group = g;
            s.nodes[j].rule = rule;
            out.solved.push_back(j);
        }
    };
    bool progress = true;
    while (progress) {
        progress = false;
        for (std::size_t k = 0; k < n; ++k) {
            if (s.nodes[k].is_known()) continue;
            if (k >= 1 && k + 1 < n && trivial_at(k - 1) && trivial_at(k + 1)) {
                fill(k, FgAbGroup::trivial(), "forced trivial between zero groups");
                progress = true;
            } else if (k >= 2 && k + 1 < n && trivial_at(k - 2) && s.nodes[k - 1].is_known() &&
                       trivial_at(k + 1)) {
                fill(k, *s.nodes[k - 1].group,
                     fmt::format("isomorphic to {} via {}", s.nodes[k - 1].name,
                                 label_text(k - 1)));
                progress = true;
            } else if (k >= 1 && k + 2 < n && trivial_at(k - 1) && s.nodes[k + 1].is_known() &&
                       trivial_at(k + 2)) {
                fill(k, *s.nodes[k + 1].group,
                     fmt::format("isomorphic to {} via {}", s.nodes[k + 1].name, label_text(k)));
                progress = true;
            }
        }
    }
    for (std::size_t k = 0; k < n; ++k)
        if (!s.nodes[k].is_known()) out.indeterminate.push_back(k);
    std::sort(out.solved.begin(), out.solved.end());
    return out;
}

namespace {

// the direct sum of homs between slotwise direct sums
GroupHom direct_sum_hom(const std::vector<GroupHom>& parts, const DirectSum& src,
                        const DirectSum& dst) {
    GroupHom total = zero_hom(src.group, dst.group);
    for (std::size_t k = 0; k < parts.size(); ++k)
        total = hom_add(total, compose(dst.inclusions[k], compose(parts[k], src.projections[k])));
    return total;
}

// class of the cocycle pair (alpha, beta) in the sum H(a) + H(b)
GroupElement pair_coords(const DirectSum& sum, const CyclicCohomology& ha,
                         const CyclicCohomology& hb, const IntMatrix& alpha,
                         const IntMatrix& beta) {
    GroupElement ea = ha.coords(alpha);
    GroupElement eb = hb.coords(beta);
    std::vector<Int> cat = ea.coords;
    cat.insert(cat.end(), eb.coords.begin(), eb.coords.end());
    IntMatrix mapped = sum.assembly * IntMatrix::col_vector(cat);
    return GroupElement::make(sum.group, mapped.col_vec(0));
}

// representative cocycle pair of generator j of the sum H(a) + H(b)
std::pair<IntMatrix, IntMatrix> pair_rep(const DirectSum& sum, const CyclicCohomology& ha,
                                         const CyclicCohomology& hb, std::size_t j) {
    std::vector<Int> cat = sum.section.col_vec(j);
    std::vector<Int> ca(cat.begin(), cat.begin() + static_cast<long>(ha.group.gens()));
    std::vector<Int> cb(cat.begin() + static_cast<long>(ha.group.gens()), cat.end());
    return {ha.reps * IntMatrix::col_vector(ca), hb.reps * IntMatrix::col_vector(cb)};
}

// snake connecting cocycle: extend gamma by zero to the a side, take its
// coboundary there, and read the result as a cochain on x that vanishes on b
IntMatrix connecting_cocycle(const SimplicialComplex& x, const SimplicialComplex& a,
                             const SimplicialComplex& b, const CellComplex& chain_a,
                             const IntMatrix& zext_gamma, long n) {
    IntMatrix da = chain_a.coboundary(n) * zext_gamma;
    const auto& top = x.simplices(static_cast<std::size_t>(n) + 1);
    IntMatrix phi(top.size(), 1);
    for (std::size_t s = 0; s < top.size(); ++s) {
        if (b.index_of(top[s])) continue;
        auto ai = a.index_of(top[s]);
        if (!ai) throw std::invalid_argument("cover does not exhaust the complex");
        phi.at(s, 0) = da.at(*ai, 0);
    }
    return phi;
}

struct MvFactor {
    std::vector<FgAbGroup> node_groups;
    std::vector<GroupHom> edge_homs;
};

struct MvRestrictions {
    CellComplex chain_x, chain_a, chain_b, chain_i;
    std::vector<IntMatrix> ra, rb, ria, rib, za;  // za extends by zero from a&b to a
};

MvFactor mv_factor(const SimplicialComplex& x, const SimplicialComplex& a,
                   const SimplicialComplex& b, const MvRestrictions& res, const Int& m,
                   long max_deg, bool reduced) {
    std::vector<CyclicCohomology> hx, ha, hb, hi;
    std::vector<DirectSum> mid;
    for (long n = 0; n <= max_deg + 1; ++n) hx.push_back(cyclic_cohomology(res.chain_x, n, m, reduced));
    for (long n = 0; n <= max_deg; ++n) {
        ha.push_back(cyclic_cohomology(res.chain_a, n, m, reduced));
        hb.push_back(cyclic_cohomology(res.chain_b, n, m, reduced));
        hi.push_back(cyclic_cohomology(res.chain_i, n, m, reduced));
        mid.push_back(direct_sum_with_maps({ha.back().group, hb.back().group}));
    }
    MvFactor out;
    out.node_groups.push_back(FgAbGroup::trivial());
    out.edge_homs.push_back(zero_hom(FgAbGroup::trivial(), hx[0].group));
    for (long n = 0; n <= max_deg; ++n) {
        const auto d = static_cast<std::size_t>(n);
        out.node_groups.push_back(hx[d].group);
        out.node_groups.push_back(mid[d].group);
        out.node_groups.push_back(hi[d].group);

        IntMatrix mi(mid[d].group.gens(), hx[d].group.gens());
        for (std::size_t j = 0; j < hx[d].group.gens(); ++j) {
            IntMatrix phi = hx[d].rep(j);
            GroupElement e = pair_coords(mid[d], ha[d], hb[d], res.ra[d] * phi, res.rb[d] * phi);
            for (std::size_t r = 0; r < mi.rows(); ++r) mi.at(r, j) = e.coords[r];
        }
        out.edge_homs.push_back(make_hom(hx[d].group, mid[d].group, std::move(mi)));

        IntMatrix md(hi[d].group.gens(), mid[d].group.gens());
        for (std::size_t j = 0; j < mid[d].group.gens(); ++j) {
            auto [alpha, beta] = pair_rep(mid[d], ha[d], hb[d], j);
            GroupElement e = hi[d].coords(res.ria[d] * alpha + -(res.rib[d] * beta));
            for (std::size_t r = 0; r < md.rows(); ++r) md.at(r, j) = e.coords[r];
        }
        out.edge_homs.push_back(make_hom(mid[d].group, hi[d].group, std::move(md)));

        IntMatrix mc(hx[d + 1].group.gens(), hi[d].group.gens());
        for (std::size_t j = 0; j < hi[d].group.gens(); ++j) {
            IntMatrix phi = connecting_cocycle(x, a, b, res.chain_a, res.za[d] * hi[d].rep(j), n);
            GroupElement e = hx[d + 1].coords(phi);
            for (std::size_t r = 0; r < mc.rows(); ++r) mc.at(r, j) = e.coords[r];
        }
        out.edge_homs.push_back(make_hom(hi[d].group, hx[d + 1].group, std::move(mc)));
    }
    out.node_groups.push_back(hx[static_cast<std::size_t>(max_deg) + 1].group);
    return out;
}

std::string h_name(std::string_view space, long n, bool reduced) {
    if (reduced && n == 0) return fmt::format("H~0({})", space);
    return fmt::format("H^{}({})", n, space);
}

void validate_cover(const SimplicialComplex& x, const SimplicialComplex& a,
                    const SimplicialComplex& b) {
    if (a.vertices() != x.vertices() || b.vertices() != x.vertices())
        throw std::invalid_argument("cover pieces must live on the ambient vertex set");
    for (const auto& f : a.facets())
        if (!x.index_of(f)) throw std::invalid_argument("first piece is not a subcomplex");
    for (const auto& f : b.facets())
        if (!x.index_of(f)) throw std::invalid_argument("second piece is not a subcomplex");
    for (const auto& f : x.facets())
        if (!a.index_of(f) && !b.index_of(f))
            throw std::invalid_argument("pieces do not cover the complex");
}

}  // namespace

LongExactSequence mayer_vietoris(const SimplicialComplex& x, const SimplicialComplex& a,
                                 const SimplicialComplex& b, const FgAbGroup& g, long max_deg,
                                 bool reduced) {
    if (max_deg < 0) throw std::invalid_argument("max_deg must be nonnegative");
    validate_cover(x, a, b);
    SimplicialComplex inter = intersect_complexes(a, b);
    if (reduced && inter.simplices(0).empty())
        throw std::invalid_argument("reduced sequence needs a nonempty intersection");

    MvRestrictions res{x.chain_complex(), a.chain_complex(), b.chain_complex(),
                       inter.chain_complex(), {}, {}, {}, {}, {}};
    for (long n = 0; n <= max_deg; ++n) {
        const auto d = static_cast<std::size_t>(n);
        res.ra.push_back(restriction_matrix(x, a, d));
        res.rb.push_back(restriction_matrix(x, b, d));
        res.ria.push_back(restriction_matrix(a, inter, d));
        res.rib.push_back(restriction_matrix(b, inter, d));
        res.za.push_back(res.ria.back().transpose());
    }

    std::vector<MvFactor> factors;
    for (const Int& m : cyclic_moduli(g))
        factors.push_back(mv_factor(x, a, b, res, m, max_deg, reduced));

    const std::size_t n_nodes = 2 + 3 * static_cast<std::size_t>(max_deg + 1);
    std::vector<DirectSum> sums;
    for (std::size_t pos = 0; pos < n_nodes; ++pos) {
        std::vector<FgAbGroup> parts;
        for (const auto& f : factors) parts.push_back(f.node_groups[pos]);
        sums.push_back(direct_sum_with_maps(parts));
    }

    std::vector<SequenceSlot> nodes;
    std::vector<std::optional<GroupHom>> edges;
    std::vector<std::string> labels;
    nodes.push_back(SequenceSlot::known("0", FgAbGroup::trivial()));
    for (long n = 0; n <= max_deg; ++n) {
        nodes.push_back(SequenceSlot::known(h_name("X", n, reduced), FgAbGroup()));
        nodes.push_back(SequenceSlot::known(
            fmt::format("{}+{}", h_name("A", n, reduced), h_name("B", n, reduced)), FgAbGroup()));
        nodes.push_back(SequenceSlot::known(h_name("A&B", n, reduced), FgAbGroup()));
        labels.insert(labels.end(), {"i", "Delta", "d"});
    }
    nodes.push_back(SequenceSlot::known(h_name("X", max_deg + 1, false), FgAbGroup()));
    labels.insert(labels.begin(), "");
    for (std::size_t pos = 0; pos < n_nodes; ++pos) nodes[pos].group = sums[pos].group;
    for (std::size_t pos = 0; pos + 1 < n_nodes; ++pos) {
        std::vector<GroupHom> parts;
        for (const auto& f : factors) parts.push_back(f.edge_homs[pos]);
        edges.push_back(direct_sum_hom(parts, sums[pos], sums[pos + 1]));
    }
    return LongExactSequence::make(std::move(nodes), std::move(edges), std::move(labels),
                                   /*truncated_left=*/false, /*truncated_right=*/true);
}

LongExactSequence gysin(const std::vector<std::optional<FgAbGroup>>& base,
                        const std::vector<FgAbGroup>& total, const GysinMaps& maps, long n,
                        long max_deg) {
    if (n < 1) throw std::invalid_argument("fiber sphere dimension must be at least 0");
    if (max_deg < 0) throw std::invalid_argument("max_deg must be nonnegative");
    if (base.size() < static_cast<std::size_t>(max_deg) + 1 ||
        total.size() < static_cast<std::size_t>(max_deg) + 1)
        throw std::invalid_argument("need base and total groups through degree max_deg");

    auto b_group = [&](long d) -> std::optional<FgAbGroup> {
        if (d < 0) return FgAbGroup::trivial();
        return base[static_cast<std::size_t>(d)];
    };
    auto b_slot = [&](long d) -> SequenceSlot {
        if (d < 0) return SequenceSlot::known("0", FgAbGroup::trivial());
        std::string name = fmt::format("H^{}(B)", d);
        if (base[static_cast<std::size_t>(d)])
            return SequenceSlot::known(std::move(name), *base[static_cast<std::size_t>(d)]);
        return SequenceSlot::unknown(std::move(name));
    };

    std::vector<SequenceSlot> nodes{b_slot(0)};
    std::vector<std::optional<GroupHom>> edges;
    std::vector<std::string> labels;
    auto push_edge = [&](const std::map<long, GroupHom>& homs, long key, std::string label,
                         const std::optional<FgAbGroup>& src, const std::optional<FgAbGroup>& dst,
                         SequenceSlot to) {
        std::optional<GroupHom> h;
        if (auto it = homs.find(key); it != homs.end()) {
            if (!src || !dst || it->second.source != *src || it->second.target != *dst)
                throw std::invalid_argument(
                    fmt::format("{} map in degree {} does not match the window groups", label,
                                key));
            h = it->second;
        }
        edges.push_back(std::move(h));
        labels.push_back(std::move(label));
        nodes.push_back(std::move(to));
    };
    for (long i = 0; i <= max_deg; ++i) {
        const FgAbGroup& e_i = total[static_cast<std::size_t>(i)];
        push_edge(maps.pi_star, i, "pi*", b_group(i), e_i,
                  SequenceSlot::known(fmt::format("H^{}(E)", i), e_i));
        long t = i + 1 - n;
        push_edge(maps.integration, i, "integrate", e_i, b_group(t), b_slot(t));
        if (i < max_deg) push_edge(maps.cup_e, t, "cup e", b_group(t), b_group(i + 1), b_slot(i + 1));
    }
    return LongExactSequence::make(std::move(nodes), std::move(edges), std::move(labels));
}

LongExactSequence gysin_preset_cp2() {
    std::vector<std::optional<FgAbGroup>> base(5);
    base[0] = FgAbGroup::cyclic(0);
    std::vector<FgAbGroup> total(5);
    total[0] = FgAbGroup::cyclic(0);
    return gysin(base, total, GysinMaps{}, 2, 4);
}

LongExactSequence gysin_preset_rpinf(long max_deg) {
    if (max_deg < 1) throw std::invalid_argument("window needs at least degree 1");
    const FgAbGroup z2 = FgAbGroup::cyclic(2);
    std::vector<SequenceSlot> nodes;
    std::vector<std::optional<GroupHom>> edges;
    std::vector<std::string> labels;
    // pi* is onto in degree 0 (the unit hits the unit), so the map out of
    // H^0(E) is zero and the window enters H^0(B) through coker(pi*) = 0
    nodes.push_back(SequenceSlot::known("0", FgAbGroup::trivial()));
    edges.emplace_back();
    labels.emplace_back("");
    nodes.push_back(SequenceSlot::known("H^0(B)", z2));
    for (long i = 1; i <= max_deg; ++i) {
        edges.emplace_back();
        labels.emplace_back("cup e");
        nodes.push_back(SequenceSlot::unknown(fmt::format("H^{}(B)", i)));
        edges.emplace_back();
        labels.emplace_back("pi*");
        nodes.push_back(SequenceSlot::known(fmt::format("H^{}(E)", i), FgAbGroup::trivial()));
        edges.emplace_back();
        labels.emplace_back("integrate");
        nodes.push_back(SequenceSlot::unknown(fmt::format("H^{}(B)", i)));
    }
    return LongExactSequence::make(std::move(nodes), std::move(edges), std::move(labels));
}

std::vector<std::pair<std::string, CellularMap>> exactness_maps(const SpaceId& id) {
    CellComplex x = cellular(id);
    std::vector<std::pair<std::string, CellularMap>> out;
    out.emplace_back("identity", CellularMap::identity(x));
    out.emplace_back("constant self-map", CellularMap::to_basepoint(x, x));
    out.emplace_back("constant to s2", CellularMap::to_basepoint(x, cellular(SpaceId::sphere(2))));
    if (id == SpaceId::sphere(1)) {
        IntMatrix two(1, 1);
        two.at(0, 0) = 2;
        out.emplace_back("degree two on s1", CellularMap(x, x, {IntMatrix::identity(1), two}));
    }
    if (id.kind == SpaceId::Kind::Torus) {
        IntMatrix one(1, 1);
        one.at(0, 0) = 1;
        out.emplace_back("torus collapse to s2",
                         CellularMap(x, cellular(SpaceId::sphere(2)), {one, IntMatrix(0, 2), one}));
    }
    if (id.kind == SpaceId::Kind::Wedge) {
        std::vector<CellComplex> parts;
        for (const auto& p : id.parts) parts.push_back(cellular(p));
        std::size_t dim = 0;
        for (const auto& p : parts) dim = std::max(dim, p.dim());
        // mirror the wedge cell layout: basepoint first, then each part's
        // remaining cells in order
        std::vector<std::size_t> next(dim + 1, 0);
        next[0] = 1;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            const CellComplex& p = parts[i];
            std::size_t bp = *p.basepoint();
            std::vector<IntMatrix> comps;
            IntMatrix f0(x.cells(0), p.cells(0));
            for (std::size_t v = 0; v < p.cells(0); ++v)
                f0.at(v == bp ? 0 : next[0] + (v < bp ? v : v - 1), v) = 1;
            comps.push_back(std::move(f0));
            for (std::size_t d = 1; d <= p.dim(); ++d) {
                IntMatrix fd(x.cells(static_cast<long>(d)), p.cells(static_cast<long>(d)));
                for (std::size_t c = 0; c < p.cells(static_cast<long>(d)); ++c)
                    fd.at(next[d] + c, c) = 1;
                comps.push_back(std::move(fd));
            }
            out.emplace_back(fmt::format("inclusion of part {}", i),
                             CellularMap(p, x, std::move(comps)));
            next[0] += p.cells(0) - 1;
            for (std::size_t d = 1; d <= dim; ++d) next[d] += p.cells(static_cast<long>(d));
        }
    }
    return out;
}

AxiomReport axiom_suite(const SpaceId& id, const FgAbGroup& g) {
    AxiomReport report;
    report.additivity = report.suspension = report.dimension = report.exactness = true;
    const long top = 3;

    std::vector<SpaceId> family = id.kind == SpaceId::Kind::Wedge
                                      ? id.parts
                                      : std::vector<SpaceId>{id, SpaceId::sphere(1),
                                                             SpaceId::sphere(2)};
    std::vector<CellComplex> parts;
    for (const auto& p : family) parts.push_back(cellular(p));
    CellComplex w = wedge(parts);
    for (long n = 0; n <= top; ++n) {
        FgAbGroup whole = reduced_cohomology(w, n, g);
        std::vector<FgAbGroup> each;
        for (const auto& p : parts) each.push_back(reduced_cohomology(p, n, g));
        FgAbGroup summed = direct_sum(each);
        if (whole != summed) {
            report.additivity = false;
            report.notes.push_back(fmt::format("additivity fails in degree {}: {} vs {}", n,
                                               whole.render(), summed.render()));
        }
    }

    CellComplex x = cellular(id);
    CellComplex sx = suspension(x);
    for (long n = 0; n <= top; ++n) {
        FgAbGroup lhs = reduced_cohomology(x, n, g);
        FgAbGroup rhs = reduced_cohomology(sx, n + 1, g);
        if (lhs != rhs) {
            report.suspension = false;
            report.notes.push_back(fmt::format("suspension fails in degree {}: {} vs {}", n,
                                               lhs.render(), rhs.render()));
        }
    }

    CellComplex points = cellular(SpaceId::sphere(0));
    for (long n = -2; n <= 4; ++n) {
        if (n == 0) continue;
        FgAbGroup h = reduced_cohomology(points, n, g);
        if (!h.is_trivial()) {
            report.dimension = false;
            report.notes.push_back(
                fmt::format("dimension fails in degree {}: {}", n, h.render()));
        }
    }
    report.notes.push_back(
        fmt::format("H~0(s0) = {}", reduced_cohomology(points, 0, g).render()));

    for (const auto& [name, f] : exactness_maps(id)) {
        CellComplex cone = cofiber(f);
        const CellComplex& y = f.target();
        const CellComplex& src = f.source();
        for (long n = 0; n <= top; ++n) {
            for (const Int& m : cyclic_moduli(g)) {
                CyclicCohomology hc = cyclic_cohomology(cone, n, m, /*reduced=*/true);
                CyclicCohomology hy = cyclic_cohomology(y, n, m, /*reduced=*/true);
                CyclicCohomology hs = cyclic_cohomology(src, n, m, /*reduced=*/true);
                // the cofiber lists target cells first, so restriction is a
                // unit block
                IntMatrix iota(y.cells(n), cone.cells(n));
                for (std::size_t k = 0; k < y.cells(n); ++k) iota.at(k, k) = 1;
                GroupHom pulled_in = induced_hom(hc, hy, iota);
                GroupHom pulled_back = induced_hom(hy, hs, f.component(n).transpose());
                if (!same_subgroup(image(pulled_in).inclusion, kernel(pulled_back).inclusion)) {
                    report.exactness = false;
                    report.notes.push_back(fmt::format(
                        "cofiber sequence of {} fails in degree {} mod {}", name, n, m.str()));
                }
            }
        }
    }
    return report;
}

}  // namespace cohom
