#include "cohom/spaces.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>

namespace cohom {

SpaceId SpaceId::sphere(std::size_t n) { return SpaceId{Kind::Sphere, n, {}}; }

SpaceId SpaceId::named(Kind k, std::size_t param) { return SpaceId{k, param, {}}; }

std::optional<SpaceId> SpaceId::parse(std::string_view text) {
    auto parse_size = [](std::string_view s) -> std::optional<std::size_t> {
        if (s.empty() || s.size() > 3) return std::nullopt;
        std::size_t v = 0;
        for (char c : s) {
            if (c < '0' || c > '9') return std::nullopt;
            v = v * 10 + static_cast<std::size_t>(c - '0');
        }
        return v;
    };
    if (text == "torus") return named(Kind::Torus);
    if (text == "klein") return named(Kind::Klein);
    if (text == "cp2") return named(Kind::Cp2);
    if (text.starts_with("susp:")) {
        auto body = parse(text.substr(5));
        if (!body) return std::nullopt;
        SpaceId id;
        id.kind = Kind::Susp;
        id.parts = {std::move(*body)};
        return id;
    }
    if (text.starts_with("wedge:")) {
        SpaceId id;
        id.kind = Kind::Wedge;
        std::string_view rest = text.substr(6);
        if (rest.empty()) return std::nullopt;
        while (true) {
            auto comma = rest.find(',');
            auto part = parse(comma == std::string_view::npos ? rest : rest.substr(0, comma));
            if (!part) return std::nullopt;
            id.parts.push_back(std::move(*part));
            if (comma == std::string_view::npos) break;
            rest = rest.substr(comma + 1);
            if (rest.empty()) return std::nullopt;
        }
        return id;
    }
    if (text.starts_with("rpN:")) {
        auto n = parse_size(text.substr(4));
        if (!n) return std::nullopt;
        return named(Kind::Rp, *n);
    }
    if (text.starts_with("rp")) {
        auto n = parse_size(text.substr(2));
        if (!n) return std::nullopt;
        return named(Kind::Rp, *n);
    }
    if (text.starts_with("s")) {
        auto n = parse_size(text.substr(1));
        if (!n) return std::nullopt;
        return sphere(*n);
    }
    return std::nullopt;
}

std::string SpaceId::str() const {
    switch (kind) {
        case Kind::Sphere: return fmt::format("s{}", param);
        case Kind::Torus: return "torus";
        case Kind::Klein: return "klein";
        case Kind::Cp2: return "cp2";
        case Kind::Rp:
            if (param == 2 || param == 3) return fmt::format("rp{}", param);
            return fmt::format("rpN:{}", param);
        case Kind::Susp: return fmt::format("susp:{}", parts.at(0).str());
        case Kind::Wedge: {
            std::string out = "wedge:";
            for (std::size_t i = 0; i < parts.size(); ++i) {
                if (i) out += ',';
                out += parts[i].str();
            }
            return out;
        }
    }
    throw std::logic_error("unhandled space kind");
}

SimplicialComplex::SimplicialComplex(std::size_t vertices,
                                     std::vector<std::vector<std::size_t>> facets)
    : vertices_(vertices), facets_(std::move(facets)) {
    for (auto& f : facets_) {
        std::sort(f.begin(), f.end());
        if (f.empty()) throw std::invalid_argument("empty facet");
        if (std::adjacent_find(f.begin(), f.end()) != f.end())
            throw std::invalid_argument("facet with a repeated vertex");
        if (f.back() >= vertices_)
            throw std::invalid_argument(
                fmt::format("facet vertex {} out of range for {} vertices", f.back(), vertices_));
    }
    std::vector<std::set<std::vector<std::size_t>>> levels;
    for (const auto& f : facets_) {
        std::size_t k = f.size();
        for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
            std::vector<std::size_t> face;
            for (std::size_t i = 0; i < k; ++i)
                if (mask & (std::size_t{1} << i)) face.push_back(f[i]);
            std::size_t d = face.size() - 1;
            if (levels.size() <= d) levels.resize(d + 1);
            levels[d].insert(std::move(face));
        }
    }
    by_dim_.reserve(levels.size());
    for (auto& lvl : levels) by_dim_.emplace_back(lvl.begin(), lvl.end());
}

const std::vector<std::vector<std::size_t>>& SimplicialComplex::simplices(std::size_t d) const {
    static const std::vector<std::vector<std::size_t>> none;
    return d < by_dim_.size() ? by_dim_[d] : none;
}

std::optional<std::size_t> SimplicialComplex::index_of(
    const std::vector<std::size_t>& simplex) const {
    if (simplex.empty()) return std::nullopt;
    std::vector<std::size_t> key = simplex;
    std::sort(key.begin(), key.end());
    std::size_t d = key.size() - 1;
    const auto& level = simplices(d);
    auto it = std::lower_bound(level.begin(), level.end(), key);
    if (it == level.end() || *it != key) return std::nullopt;
    return static_cast<std::size_t>(it - level.begin());
}

CellComplex SimplicialComplex::chain_complex(
    std::optional<std::size_t> basepoint_vertex) const {
    std::vector<std::size_t> cells;
    for (const auto& lvl : by_dim_) cells.push_back(lvl.size());
    std::vector<IntMatrix> bnd;
    for (std::size_t d = 1; d < by_dim_.size(); ++d) {
        IntMatrix b(by_dim_[d - 1].size(), by_dim_[d].size());
        for (std::size_t c = 0; c < by_dim_[d].size(); ++c) {
            const auto& s = by_dim_[d][c];
            for (std::size_t i = 0; i <= d; ++i) {
                std::vector<std::size_t> face;
                for (std::size_t t = 0; t <= d; ++t)
                    if (t != i) face.push_back(s[t]);
                // faces of stored simplices are present by construction
                b.at(*index_of(face), c) += i % 2 == 0 ? 1 : -1;
            }
        }
        bnd.push_back(std::move(b));
    }
    std::optional<std::size_t> bp;
    if (basepoint_vertex) {
        auto cell = index_of({*basepoint_vertex});
        if (!cell)
            throw std::invalid_argument(
                fmt::format("vertex {} is not in the complex", *basepoint_vertex));
        bp = *cell;
    }
    return CellComplex(std::move(cells), std::move(bnd), bp);
}

nlohmann::json SimplicialComplex::to_json() const {
    return nlohmann::json{{"vertices", vertices_}, {"facets", facets_}};
}

SimplicialComplex SimplicialComplex::from_json(const nlohmann::json& j) {
    return SimplicialComplex(j.at("vertices").get<std::size_t>(),
                             j.at("facets").get<std::vector<std::vector<std::size_t>>>());
}

IntMatrix restriction_matrix(const SimplicialComplex& ambient, const SimplicialComplex& sub,
                             std::size_t d) {
    const auto& rows = sub.simplices(d);
    IntMatrix m(rows.size(), ambient.simplices(d).size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        auto j = ambient.index_of(rows[i]);
        if (!j) throw std::invalid_argument("subcomplex simplex missing from the ambient complex");
        m.at(i, *j) = 1;
    }
    return m;
}

SimplicialComplex intersect_complexes(const SimplicialComplex& a, const SimplicialComplex& b) {
    std::vector<std::vector<std::size_t>> common;
    for (std::size_t d = 0; d <= a.dim(); ++d)
        for (const auto& s : a.simplices(d))
            if (b.index_of(s)) common.push_back(s);
    std::vector<std::vector<std::size_t>> facets;
    for (const auto& s : common) {
        bool maximal = true;
        for (const auto& t : common)
            if (t.size() > s.size() && std::includes(t.begin(), t.end(), s.begin(), s.end())) {
                maximal = false;
                break;
            }
        if (maximal) facets.push_back(s);
    }
    return SimplicialComplex(std::max(a.vertices(), b.vertices()), std::move(facets));
}

namespace {

CellComplex sphere_cell(std::size_t n) {
    if (n == 0) return CellComplex({2}, {}, 0);
    std::vector<std::size_t> cells(n + 1, 0);
    cells[0] = 1;
    cells[n] = 1;
    return CellComplex(cells, {}, 0);
}

CellComplex rp_cell(std::size_t n) {
    std::vector<std::size_t> cells(n + 1, 1);
    std::vector<IntMatrix> bnd;
    for (std::size_t k = 1; k <= n; ++k) {
        IntMatrix b(1, 1);
        b.at(0, 0) = k % 2 == 0 ? 2 : 0;  // double cover glues with degree 1 + (-1)^k
        bnd.push_back(b);
    }
    return CellComplex(cells, bnd, 0);
}

SimplicialComplex sphere_fixture(std::size_t n) {
    if (n == 0) return SimplicialComplex(2, {{0}, {1}});
    // boundary of the (n+1)-simplex
    std::size_t m = n + 2;
    std::vector<std::vector<std::size_t>> facets;
    for (std::size_t skip = 0; skip < m; ++skip) {
        std::vector<std::size_t> f;
        for (std::size_t v = 0; v < m; ++v)
            if (v != skip) f.push_back(v);
        facets.push_back(std::move(f));
    }
    return SimplicialComplex(m, std::move(facets));
}

SimplicialComplex torus_fixture() {
    return SimplicialComplex(7, {{0, 1, 3},
                                 {0, 1, 5},
                                 {0, 2, 3},
                                 {0, 2, 6},
                                 {0, 4, 5},
                                 {0, 4, 6},
                                 {1, 2, 4},
                                 {1, 2, 6},
                                 {1, 3, 4},
                                 {1, 5, 6},
                                 {2, 3, 5},
                                 {2, 4, 5},
                                 {3, 4, 6},
                                 {3, 5, 6}});
}

SimplicialComplex rp2_fixture() {
    return SimplicialComplex(6, {{0, 1, 2},
                                 {0, 1, 5},
                                 {0, 2, 3},
                                 {0, 3, 4},
                                 {0, 4, 5},
                                 {1, 2, 4},
                                 {1, 3, 4},
                                 {1, 3, 5},
                                 {2, 3, 5},
                                 {2, 4, 5}});
}

SimplicialComplex klein_fixture() {
    return SimplicialComplex(9, {{0, 1, 4}, {0, 1, 8}, {0, 2, 3}, {0, 2, 6}, {0, 3, 4}, {0, 6, 8},
                                 {1, 2, 5}, {1, 2, 7}, {1, 4, 5}, {1, 7, 8}, {2, 3, 5}, {2, 6, 7},
                                 {3, 4, 7}, {3, 5, 6}, {3, 6, 7}, {4, 5, 8}, {4, 7, 8}, {5, 6, 8}});
}

SimplicialComplex wedge_fixture(const std::vector<SpaceId>& parts) {
    std::vector<std::vector<std::size_t>> facets;
    std::size_t next = 1;
    for (const auto& p : parts) {
        SimplicialComplex s = simplicial(p);
        // glue every summand at its vertex 0
        for (const auto& f : s.facets()) {
            std::vector<std::size_t> g;
            for (std::size_t v : f) g.push_back(v == 0 ? 0 : next + v - 1);
            facets.push_back(std::move(g));
        }
        next += s.vertices() - 1;
    }
    return SimplicialComplex(next, std::move(facets));
}

SimplicialComplex fixture_for(const SpaceId& id) {
    switch (id.kind) {
        case SpaceId::Kind::Sphere:
            if (id.param <= 3) return sphere_fixture(id.param);
            break;
        case SpaceId::Kind::Torus: return torus_fixture();
        case SpaceId::Kind::Klein: return klein_fixture();
        case SpaceId::Kind::Rp:
            if (id.param == 2) return rp2_fixture();
            break;
        case SpaceId::Kind::Wedge: return wedge_fixture(id.parts);
        default: break;
    }
    throw std::invalid_argument(fmt::format("no simplicial fixture for {}", id.str()));
}

}  // namespace

CellComplex cellular(const SpaceId& id) {
    switch (id.kind) {
        case SpaceId::Kind::Sphere: return sphere_cell(id.param);
        case SpaceId::Kind::Torus: return CellComplex({1, 2, 1}, {}, 0);
        case SpaceId::Kind::Klein: {
            IntMatrix d2(2, 1);
            d2.at(0, 0) = 2;  // attaching word aba(b^-1) abelianizes to 2a
            return CellComplex({1, 2, 1}, {IntMatrix(1, 2), d2}, 0);
        }
        case SpaceId::Kind::Rp: return rp_cell(id.param);
        case SpaceId::Kind::Cp2: return CellComplex({1, 0, 1, 0, 1}, {}, 0);
        case SpaceId::Kind::Wedge: {
            std::vector<CellComplex> parts;
            parts.reserve(id.parts.size());
            for (const auto& p : id.parts) parts.push_back(cellular(p));
            return wedge(parts);
        }
        case SpaceId::Kind::Susp: return suspension(cellular(id.parts.at(0)));
    }
    throw std::logic_error("unhandled space kind");
}

bool has_simplicial(const SpaceId& id) {
    switch (id.kind) {
        case SpaceId::Kind::Sphere: return id.param <= 3;
        case SpaceId::Kind::Torus:
        case SpaceId::Kind::Klein: return true;
        case SpaceId::Kind::Rp: return id.param == 2;
        case SpaceId::Kind::Wedge:
            return std::all_of(id.parts.begin(), id.parts.end(),
                               [](const SpaceId& p) { return has_simplicial(p); });
        default: return false;
    }
}

SimplicialComplex simplicial(const SpaceId& id) {
    SimplicialComplex s = fixture_for(id);
    CellComplex derived = s.chain_complex();
    CellComplex model = cellular(id);
    if (derived.euler_characteristic() != model.euler_characteristic())
        throw std::logic_error(fmt::format("fixture euler characteristic mismatch for {}",
                                           id.str()));
    long top = static_cast<long>(std::max(derived.dim(), model.dim()));
    for (long n = 0; n <= top; ++n)
        if (!(homology(derived, n) == homology(model, n)))
            throw std::logic_error(
                fmt::format("fixture homology mismatch for {} in degree {}", id.str(), n));
    return s;
}

CoveringPair covering_pair(const SpaceId& id) {
    SimplicialComplex total = simplicial(id);
    std::vector<std::vector<std::size_t>> fa;
    std::vector<std::vector<std::size_t>> fb;
    std::size_t bp = 0;
    bool star_split = false;
    if (id.kind == SpaceId::Kind::Sphere && id.param == 1) {
        fa = {{0, 1}, {1, 2}};
        fb = {{0, 2}};
        bp = 0;
    } else if (id.kind == SpaceId::Kind::Sphere && id.param == 2) {
        fa = {{0, 1, 2}, {0, 1, 3}};
        fb = {{0, 2, 3}, {1, 2, 3}};
        bp = 0;
    } else if (id.kind == SpaceId::Kind::Sphere && id.param == 3) {
        star_split = true;
        bp = 1;
    } else if (id.kind == SpaceId::Kind::Torus) {
        fa = {{0, 1, 3}, {0, 1, 5}, {0, 2, 3}, {0, 2, 6}, {1, 2, 6}, {1, 5, 6}};
        fb = {{0, 4, 5}, {0, 4, 6}, {1, 2, 4}, {1, 3, 4}, {2, 3, 5}, {2, 4, 5},
              {3, 4, 6}, {3, 5, 6}};
        bp = 0;
    } else if ((id.kind == SpaceId::Kind::Rp && id.param == 2) ||
               id.kind == SpaceId::Kind::Klein) {
        star_split = true;
        bp = 1;
    } else {
        throw std::invalid_argument(fmt::format("no covering pair for {}", id.str()));
    }
    if (star_split) {
        // closed star of vertex 0 against the rest
        for (const auto& f : total.facets())
            (std::find(f.begin(), f.end(), std::size_t{0}) != f.end() ? fa : fb).push_back(f);
    }
    std::set<std::vector<std::size_t>> covered(fa.begin(), fa.end());
    covered.insert(fb.begin(), fb.end());
    std::set<std::vector<std::size_t>> wanted(total.facets().begin(), total.facets().end());
    if (covered != wanted) throw std::logic_error(fmt::format("cover of {} misses facets", id.str()));
    SimplicialComplex a(total.vertices(), std::move(fa));
    SimplicialComplex b(total.vertices(), std::move(fb));
    SimplicialComplex inter = intersect_complexes(a, b);
    if (!inter.index_of({bp}))
        throw std::logic_error(fmt::format("cover basepoint missing from the intersection of {}",
                                           id.str()));
    return {std::move(total), std::move(a), std::move(b), std::move(inter), bp};
}

std::vector<SpaceId> catalog() {
    std::vector<SpaceId> ids;
    for (std::size_t n = 0; n <= 4; ++n) ids.push_back(SpaceId::sphere(n));
    ids.push_back(SpaceId::named(SpaceId::Kind::Torus));
    ids.push_back(SpaceId::named(SpaceId::Kind::Klein));
    ids.push_back(SpaceId::named(SpaceId::Kind::Rp, 2));
    ids.push_back(SpaceId::named(SpaceId::Kind::Rp, 3));
    ids.push_back(SpaceId::named(SpaceId::Kind::Cp2));
    SpaceId w;
    w.kind = SpaceId::Kind::Wedge;
    w.parts = {SpaceId::sphere(2), SpaceId::sphere(1), SpaceId::sphere(1)};
    ids.push_back(std::move(w));
    return ids;
}

}  // namespace cohom
