#include "cohom/complex.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace cohom {

CellComplex::CellComplex(std::vector<std::size_t> cells, std::vector<IntMatrix> boundaries,
                         std::optional<std::size_t> basepoint)
    : cells_(std::move(cells)), boundaries_(std::move(boundaries)), basepoint_(basepoint) {
    std::size_t levels = cells_.empty() ? 0 : cells_.size() - 1;
    if (boundaries_.size() > levels)
        throw std::invalid_argument(fmt::format("{} boundary matrices for {} cell dimensions",
                                                boundaries_.size(), cells_.size()));
    for (std::size_t k = 0; k < boundaries_.size(); ++k) {
        const IntMatrix& b = boundaries_[k];
        if (b.rows() != cells_[k] || b.cols() != cells_[k + 1])
            throw std::invalid_argument(fmt::format("boundary d{} has shape {}x{}, expected {}x{}",
                                                    k + 1, b.rows(), b.cols(), cells_[k],
                                                    cells_[k + 1]));
    }
    while (boundaries_.size() < levels) {
        std::size_t k = boundaries_.size();
        boundaries_.emplace_back(cells_[k], cells_[k + 1]);
    }
    for (std::size_t n = 2; n <= levels; ++n) {
        IntMatrix prod = boundaries_[n - 2] * boundaries_[n - 1];
        for (std::size_t i = 0; i < prod.rows(); ++i)
            for (std::size_t j = 0; j < prod.cols(); ++j)
                if (prod.at(i, j) != 0)
                    throw std::invalid_argument(
                        fmt::format("d{} * d{} is nonzero at entry ({}, {}): {}", n - 1, n, i, j,
                                    prod.at(i, j).str()));
    }
    std::size_t zero_cells = cells_.empty() ? 0 : cells_[0];
    if (basepoint_ && *basepoint_ >= zero_cells)
        throw std::invalid_argument(
            fmt::format("basepoint {} out of range for {} 0-cells", *basepoint_, zero_cells));
}

std::size_t CellComplex::cells(long n) const {
    if (n < 0 || static_cast<std::size_t>(n) >= cells_.size()) return 0;
    return cells_[static_cast<std::size_t>(n)];
}

IntMatrix CellComplex::boundary(long n) const {
    if (n >= 1 && static_cast<std::size_t>(n) <= boundaries_.size())
        return boundaries_[static_cast<std::size_t>(n) - 1];
    return IntMatrix(cells(n - 1), cells(n));
}

IntMatrix CellComplex::coboundary(long n) const { return boundary(n + 1).transpose(); }

CellComplex CellComplex::with_basepoint(std::size_t p) const {
    return CellComplex(cells_, boundaries_, p);
}

Int CellComplex::euler_characteristic() const {
    Int chi = 0;
    for (std::size_t n = 0; n < cells_.size(); ++n)
        chi += (n % 2 == 0 ? 1 : -1) * Int(cells_[n]);
    return chi;
}

nlohmann::json CellComplex::to_json() const {
    nlohmann::json j;
    j["cells"] = cells_;
    nlohmann::json bs = nlohmann::json::array();
    for (const auto& b : boundaries_) bs.push_back(matrix_to_json(b));
    j["boundaries"] = std::move(bs);
    if (basepoint_) j["basepoint"] = *basepoint_;
    return j;
}

CellComplex CellComplex::from_json(const nlohmann::json& j) {
    auto cells = j.at("cells").get<std::vector<std::size_t>>();
    std::vector<IntMatrix> bs;
    if (j.contains("boundaries"))
        for (const auto& b : j.at("boundaries")) bs.push_back(matrix_from_json(b));
    std::optional<std::size_t> bp;
    if (j.contains("basepoint") && !j.at("basepoint").is_null())
        bp = j.at("basepoint").get<std::size_t>();
    return CellComplex(std::move(cells), std::move(bs), bp);
}

CellularMap::CellularMap(CellComplex source, CellComplex target, std::vector<IntMatrix> components)
    : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
    for (std::size_t n = 0; n < components_.size(); ++n) {
        const IntMatrix& c = components_[n];
        std::size_t want_rows = target_.cells(static_cast<long>(n));
        std::size_t want_cols = source_.cells(static_cast<long>(n));
        if (c.rows() != want_rows || c.cols() != want_cols)
            throw std::invalid_argument(fmt::format("component {} has shape {}x{}, expected {}x{}",
                                                    n, c.rows(), c.cols(), want_rows, want_cols));
    }
    long top = static_cast<long>(std::max(source_.dim(), target_.dim()));
    for (long n = 1; n <= top; ++n)
        if (!(target_.boundary(n) * component(n) == component(n - 1) * source_.boundary(n)))
            throw std::invalid_argument(fmt::format("chain condition fails in degree {}", n));
}

IntMatrix CellularMap::component(long n) const {
    if (n >= 0 && static_cast<std::size_t>(n) < components_.size())
        return components_[static_cast<std::size_t>(n)];
    return IntMatrix(target_.cells(n), source_.cells(n));
}

CellularMap CellularMap::identity(const CellComplex& x) {
    std::vector<IntMatrix> comps;
    for (std::size_t n = 0; n <= x.dim(); ++n)
        comps.push_back(IntMatrix::identity(x.cells(static_cast<long>(n))));
    return CellularMap(x, x, std::move(comps));
}

CellularMap CellularMap::to_basepoint(const CellComplex& x, const CellComplex& y) {
    if (!y.basepoint()) throw std::invalid_argument("constant map needs a target basepoint");
    IntMatrix c0(y.cells(0), x.cells(0));
    for (std::size_t j = 0; j < x.cells(0); ++j) c0.at(*y.basepoint(), j) = 1;
    return CellularMap(x, y, {std::move(c0)});
}

FgAbGroup homology(const CellComplex& x, long n) {
    if (n < 0 || x.cells(n) == 0) return FgAbGroup::trivial();
    IntMatrix cycles = kernel_basis(x.boundary(n));
    auto rel = solve_all(cycles, x.boundary(n + 1));
    if (!rel) throw std::logic_error("boundaries escape the cycle lattice");
    return from_presentation(cycles.cols(), *rel).group;
}

CyclicCohomology cyclic_cohomology(const CellComplex& x, long n, const Int& modulus,
                                   bool reduced) {
    if (modulus < 0) throw std::invalid_argument("modulus must be nonnegative");
    CyclicCohomology out;
    out.modulus = modulus;
    out.degree = n;
    out.reduced = reduced;
    std::size_t cn = x.cells(n);
    IntMatrix delta = x.coboundary(n);  // cells(n+1) x cells(n)
    IntMatrix lat;
    if (modulus == 0) {
        lat = kernel_basis(delta);
    } else {
        // columns (z, w) with delta z = modulus * w; the z parts span the
        // mod-modulus cocycles
        IntMatrix mixed =
            IntMatrix::hstack(delta, IntMatrix::identity(delta.rows()).scaled(-modulus));
        IntMatrix ker = kernel_basis(mixed);
        std::vector<std::size_t> top(cn);
        std::iota(top.begin(), top.end(), std::size_t{0});
        lat = lattice_basis(IntMatrix::hstack(ker.rows_selected(top),
                                              IntMatrix::identity(cn).scaled(modulus)));
    }
    IntMatrix denom = x.coboundary(n - 1);  // cells(n) x cells(n-1)
    if (reduced && n == 0) {
        IntMatrix ones(cn, 1);
        for (std::size_t i = 0; i < cn; ++i) ones.at(i, 0) = 1;
        denom = IntMatrix::hstack(denom, ones);
    }
    if (modulus != 0)
        denom = IntMatrix::hstack(denom, IntMatrix::identity(cn).scaled(modulus));
    auto rel = solve_all(lat, denom);
    if (!rel) throw std::logic_error("coboundaries escape the cocycle lattice");
    out.pres = from_presentation(lat.cols(), *rel);
    out.group = out.pres.group;
    out.cocycles = std::move(lat);
    out.reps = out.cocycles * out.pres.section;
    return out;
}

IntMatrix CyclicCohomology::rep(std::size_t j) const { return reps.cols_selected({j}); }

GroupElement CyclicCohomology::coords(const IntMatrix& z) const {
    if (z.rows() != cocycles.rows() || z.cols() != 1)
        throw std::invalid_argument(fmt::format("cochain shape {}x{}, expected {}x1", z.rows(),
                                                z.cols(), cocycles.rows()));
    auto lift = solve(cocycles, z.col_vec(0));
    if (!lift) throw std::invalid_argument("not a cocycle for this modulus");
    return eval(pres.projection, GroupElement::make(FgAbGroup::free_group(cocycles.cols()), *lift));
}

GroupHom induced_hom(const CyclicCohomology& src, const CyclicCohomology& dst,
                     const IntMatrix& cochain_map) {
    IntMatrix m(dst.group.gens(), src.group.gens());
    for (std::size_t j = 0; j < src.group.gens(); ++j) {
        GroupElement e = dst.coords(cochain_map * src.rep(j));
        for (std::size_t i = 0; i < dst.group.gens(); ++i) m.at(i, j) = e.coords[i];
    }
    return make_hom(src.group, dst.group, std::move(m));
}

std::vector<Int> cyclic_moduli(const FgAbGroup& g) {
    std::vector<Int> moduli(g.free_rank, Int(0));
    moduli.insert(moduli.end(), g.torsion.begin(), g.torsion.end());
    return moduli;
}

CohomologyResult cohomology(const CellComplex& x, long n, const FgAbGroup& g) {
    CohomologyResult out;
    out.degree = n;
    out.coefficients = g;
    std::vector<FgAbGroup> parts;
    for (const Int& m : cyclic_moduli(g)) {
        out.factors.push_back(cyclic_cohomology(x, n, m));
        parts.push_back(out.factors.back().group);
    }
    out.sum = direct_sum_with_maps(parts);
    out.group = out.sum.group;
    FgAbGroup uct =
        direct_sum({hom_group(homology(x, n), g), ext_group(homology(x, n - 1), g)});
    if (!is_isomorphic(out.group, uct))
        throw std::logic_error(fmt::format(
            "cochain cohomology and universal-coefficient assembly disagree in degree {}: {} vs {}",
            n, out.group.render(), uct.render()));
    return out;
}

std::vector<IntMatrix> CohomologyResult::rep(std::size_t j) const {
    std::vector<IntMatrix> parts;
    for (std::size_t f = 0; f < factors.size(); ++f) {
        GroupElement e = eval(sum.projections[f], GroupElement::generator(group, j));
        parts.push_back(factors[f].reps * IntMatrix::col_vector(e.coords));
    }
    return parts;
}

GroupElement CohomologyResult::coords(const std::vector<IntMatrix>& z) const {
    if (z.size() != factors.size())
        throw std::invalid_argument(fmt::format("{} cochain components for {} coefficient factors",
                                                z.size(), factors.size()));
    GroupElement total = GroupElement::zero(group);
    for (std::size_t f = 0; f < factors.size(); ++f)
        total = add(total, eval(sum.inclusions[f], factors[f].coords(z[f])));
    return total;
}

std::size_t cohomology_direct_mod_p(const CellComplex& x, long n, const Int& p) {
    std::size_t up = rank_mod_p(x.boundary(n + 1), p);
    std::size_t down = rank_mod_p(x.boundary(n), p);
    if (n < 0) return 0;
    return x.cells(n) - up - down;
}

FgAbGroup reduced_cohomology(const CellComplex& x, long n, const FgAbGroup& g) {
    if (!x.basepoint()) throw std::invalid_argument("reduced cohomology needs a basepoint");
    if (n != 0) return n < 0 ? FgAbGroup::trivial() : cohomology(x, n, g).group;
    std::vector<FgAbGroup> parts;
    for (const Int& m : cyclic_moduli(g))
        parts.push_back(cyclic_cohomology(x, 0, m, /*reduced=*/true).group);
    return direct_sum(parts);
}

CellComplex suspension(const CellComplex& x) {
    if (!x.basepoint()) throw std::invalid_argument("suspension needs a basepoint");
    std::size_t bp = *x.basepoint();
    std::size_t c0 = x.cells(0);
    std::vector<std::size_t> cells{1, c0 - 1};
    for (std::size_t k = 1; k <= x.dim(); ++k) cells.push_back(x.cells(static_cast<long>(k)));
    std::vector<IntMatrix> bnd;
    bnd.emplace_back(1, c0 - 1);  // suspended points become loops at the pole
    if (x.dim() >= 1) {
        std::vector<std::size_t> keep;
        for (std::size_t v = 0; v < c0; ++v)
            if (v != bp) keep.push_back(v);
        bnd.push_back(x.boundary(1).rows_selected(keep));
        for (std::size_t k = 2; k <= x.dim(); ++k) bnd.push_back(x.boundary(static_cast<long>(k)));
    }
    return CellComplex(std::move(cells), std::move(bnd), 0);
}

CellComplex wedge(const std::vector<CellComplex>& xs) {
    for (const auto& x : xs)
        if (!x.basepoint()) throw std::invalid_argument("wedge needs basepoints");
    if (xs.empty()) return CellComplex({1}, {}, 0);
    std::size_t dim = 0;
    for (const auto& x : xs) dim = std::max(dim, x.dim());
    std::vector<std::size_t> cells(dim + 1, 0);
    cells[0] = 1;
    for (const auto& x : xs) {
        cells[0] += x.cells(0) - 1;
        for (std::size_t n = 1; n <= x.dim(); ++n) cells[n] += x.cells(static_cast<long>(n));
    }
    std::vector<std::vector<std::size_t>> offset(xs.size(), std::vector<std::size_t>(dim + 1, 0));
    {
        std::vector<std::size_t> next(dim + 1, 0);
        next[0] = 1;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            offset[i] = next;
            next[0] += xs[i].cells(0) - 1;
            for (std::size_t n = 1; n <= dim; ++n) next[n] += xs[i].cells(static_cast<long>(n));
        }
    }
    auto vertex_index = [&](std::size_t i, std::size_t v) -> std::size_t {
        std::size_t bp = *xs[i].basepoint();
        if (v == bp) return 0;
        return offset[i][0] + (v < bp ? v : v - 1);
    };
    std::vector<IntMatrix> bnd;
    for (std::size_t n = 1; n <= dim; ++n) {
        IntMatrix b(cells[n - 1], cells[n]);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            IntMatrix part = xs[i].boundary(static_cast<long>(n));
            for (std::size_t c = 0; c < part.cols(); ++c)
                for (std::size_t r = 0; r < part.rows(); ++r) {
                    if (part.at(r, c) == 0) continue;
                    std::size_t row = n == 1 ? vertex_index(i, r) : offset[i][n - 1] + r;
                    b.at(row, offset[i][n] + c) += part.at(r, c);
                }
        }
        bnd.push_back(std::move(b));
    }
    return CellComplex(std::move(cells), std::move(bnd), 0);
}

CellComplex cofiber(const CellularMap& f) {
    const CellComplex& src = f.source();
    const CellComplex& dst = f.target();
    std::size_t dim = std::max(dst.dim(), src.dim() + 1);
    std::vector<std::size_t> cells(dim + 1, 0);
    std::size_t tip = dst.cells(0);
    cells[0] = dst.cells(0) + 1;
    for (std::size_t n = 1; n <= dim; ++n)
        cells[n] = dst.cells(static_cast<long>(n)) + src.cells(static_cast<long>(n) - 1);
    std::vector<IntMatrix> bnd;
    {
        // cone edge over a source 0-cell runs from its image down to the tip
        IntMatrix b(cells[0], cells[1]);
        IntMatrix dy = dst.boundary(1);
        for (std::size_t c = 0; c < dy.cols(); ++c)
            for (std::size_t r = 0; r < dy.rows(); ++r) b.at(r, c) = dy.at(r, c);
        IntMatrix f0 = f.component(0);
        for (std::size_t c = 0; c < src.cells(0); ++c) {
            Int total = 0;
            for (std::size_t r = 0; r < f0.rows(); ++r) {
                b.at(r, dy.cols() + c) = f0.at(r, c);
                total += f0.at(r, c);
            }
            b.at(tip, dy.cols() + c) = -total;
        }
        bnd.push_back(std::move(b));
    }
    for (std::size_t n = 2; n <= dim; ++n) {
        // [[d_target, f], [0, -d_source]] on (target cells, coned cells)
        IntMatrix b(cells[n - 1], cells[n]);
        IntMatrix dy = dst.boundary(static_cast<long>(n));
        for (std::size_t c = 0; c < dy.cols(); ++c)
            for (std::size_t r = 0; r < dy.rows(); ++r) b.at(r, c) = dy.at(r, c);
        IntMatrix fc = f.component(static_cast<long>(n) - 1);
        for (std::size_t c = 0; c < fc.cols(); ++c)
            for (std::size_t r = 0; r < fc.rows(); ++r) b.at(r, dy.cols() + c) = fc.at(r, c);
        IntMatrix dx = src.boundary(static_cast<long>(n) - 1);
        for (std::size_t c = 0; c < dx.cols(); ++c)
            for (std::size_t r = 0; r < dx.rows(); ++r)
                b.at(dst.cells(static_cast<long>(n) - 1) + r, dy.cols() + c) = -dx.at(r, c);
        bnd.push_back(std::move(b));
    }
    return CellComplex(std::move(cells), std::move(bnd), tip);
}

CellComplex tensor_complex(const CellComplex& x, const CellComplex& y) {
    std::size_t dim = x.dim() + y.dim();
    std::vector<std::size_t> cells(dim + 1, 0);
    for (std::size_t n = 0; n <= dim; ++n)
        for (std::size_t p = 0; p <= n; ++p)
            cells[n] += x.cells(static_cast<long>(p)) * y.cells(static_cast<long>(n - p));
    // offset of the (p, n-p) block among dimension-n product cells
    auto off = [&x, &y](long n, long p) {
        std::size_t o = 0;
        for (long t = 0; t < p; ++t) o += x.cells(t) * y.cells(n - t);
        return o;
    };
    std::vector<IntMatrix> bnd;
    for (std::size_t nd = 1; nd <= dim; ++nd) {
        long n = static_cast<long>(nd);
        IntMatrix b(cells[nd - 1], cells[nd]);
        for (long p = 0; p <= n; ++p) {
            long q = n - p;
            std::size_t cx = x.cells(p), cy = y.cells(q);
            if (cx == 0 || cy == 0) continue;
            IntMatrix dx = x.boundary(p);
            IntMatrix dy = y.boundary(q);
            std::size_t col0 = off(n, p);
            for (std::size_t i = 0; i < cx; ++i)
                for (std::size_t j = 0; j < cy; ++j) {
                    std::size_t col = col0 + i * cy + j;
                    for (std::size_t k = 0; k < dx.rows(); ++k)
                        if (dx.at(k, i) != 0)
                            b.at(off(n - 1, p - 1) + k * cy + j, col) += dx.at(k, i);
                    for (std::size_t l = 0; l < dy.rows(); ++l)
                        if (dy.at(l, j) != 0)
                            b.at(off(n - 1, p) + i * y.cells(q - 1) + l, col) +=
                                p % 2 == 0 ? dy.at(l, j) : -dy.at(l, j);
                }
        }
        bnd.push_back(std::move(b));
    }
    std::optional<std::size_t> bp;
    if (x.basepoint() && y.basepoint()) bp = *x.basepoint() * y.cells(0) + *y.basepoint();
    return CellComplex(std::move(cells), std::move(bnd), bp);
}

}  // namespace cohom
