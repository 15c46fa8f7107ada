#include "cohom/intmat.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace cohom {

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Int>>& rows) {
    if (rows.empty()) return IntMatrix();
    IntMatrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols())
            throw std::invalid_argument("from_rows: ragged row lengths");
        for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::diagonal(const std::vector<Int>& diag, std::size_t rows, std::size_t cols) {
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < diag.size() && i < rows && i < cols; ++i) m.at(i, i) = diag[i];
    return m;
}

IntMatrix IntMatrix::row_vector(const std::vector<Int>& v) {
    IntMatrix m(1, v.size());
    for (std::size_t j = 0; j < v.size(); ++j) m.at(0, j) = v[j];
    return m;
}

IntMatrix IntMatrix::col_vector(const std::vector<Int>& v) {
    IntMatrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m.at(i, 0) = v[i];
    return m;
}

IntMatrix IntMatrix::hstack(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row mismatch");
    IntMatrix m(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) m.at(i, a.cols() + j) = b.at(i, j);
    }
    return m;
}

IntMatrix IntMatrix::vstack(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("vstack: col mismatch");
    IntMatrix m(a.rows() + b.rows(), a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) {
        for (std::size_t i = 0; i < a.rows(); ++i) m.at(i, j) = a.at(i, j);
        for (std::size_t i = 0; i < b.rows(); ++i) m.at(a.rows() + i, j) = b.at(i, j);
    }
    return m;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
    if (cols_ != rhs.rows()) throw std::invalid_argument("matrix product shape mismatch");
    IntMatrix m(rows_, rhs.cols());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& v = at(i, k);
            if (v == 0) continue;
            for (std::size_t j = 0; j < rhs.cols(); ++j) m.at(i, j) += v * rhs.at(k, j);
        }
    return m;
}

IntMatrix IntMatrix::operator+(const IntMatrix& rhs) const {
    if (rows_ != rhs.rows() || cols_ != rhs.cols())
        throw std::invalid_argument("matrix sum shape mismatch");
    IntMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] + rhs.data_[i];
    return m;
}

IntMatrix IntMatrix::operator-() const {
    IntMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = -data_[i];
    return m;
}

IntMatrix IntMatrix::scaled(const Int& k) const {
    IntMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = k * data_[i];
    return m;
}

bool IntMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Int& v) { return v == 0; });
}

bool IntMatrix::is_identity() const {
    if (rows_ != cols_) return false;
    return *this == identity(rows_);
}

std::vector<Int> IntMatrix::col_vec(std::size_t j) const {
    std::vector<Int> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
    return v;
}

std::vector<Int> IntMatrix::row_vec(std::size_t i) const {
    std::vector<Int> v(cols_);
    for (std::size_t j = 0; j < cols_; ++j) v[j] = at(i, j);
    return v;
}

IntMatrix IntMatrix::cols_selected(const std::vector<std::size_t>& idx) const {
    IntMatrix m(rows_, idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j)
        for (std::size_t i = 0; i < rows_; ++i) m.at(i, j) = at(i, idx[j]);
    return m;
}

IntMatrix IntMatrix::rows_selected(const std::vector<std::size_t>& idx) const {
    IntMatrix m(idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = at(idx[i], j);
    return m;
}

std::vector<Int> IntMatrix::apply(const std::vector<Int>& x) const {
    if (x.size() != cols_) throw std::invalid_argument("apply: length mismatch");
    std::vector<Int> y(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (at(i, j) != 0) y[i] += at(i, j) * x[j];
    return y;
}

Int IntMatrix::det() const {
    if (rows_ != cols_) throw std::invalid_argument("det: square matrices only");
    const std::size_t n = rows_;
    if (n == 0) return 1;
    IntMatrix m = *this;
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m.at(k, k) == 0) {
            std::size_t piv = k;
            while (piv < n && m.at(piv, k) == 0) ++piv;
            if (piv == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
        prev = m.at(k, k);
    }
    return sign * m.at(n - 1, n - 1);
}

std::string IntMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? "; " : "");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j);
    }
    os << "]";
    return os.str();
}

std::vector<Int> SmithDecomposition::divisors() const {
    std::vector<Int> d;
    for (std::size_t i = 0; i < std::min(diag.rows(), diag.cols()); ++i)
        if (diag.at(i, i) != 0) d.push_back(diag.at(i, i));
    return d;
}

std::size_t SmithDecomposition::rank() const { return divisors().size(); }

namespace {

// Elimination state: d = u * a * v is maintained by every operation,
// as are u * u_inv = I and v * v_inv = I.
struct SmithState {
    IntMatrix d, u, uinv, v, vinv;

    void swap_rows(std::size_t i, std::size_t k) {
        if (i == k) return;
        for (std::size_t j = 0; j < d.cols(); ++j) std::swap(d.at(i, j), d.at(k, j));
        for (std::size_t j = 0; j < u.cols(); ++j) std::swap(u.at(i, j), u.at(k, j));
        for (std::size_t r = 0; r < uinv.rows(); ++r) std::swap(uinv.at(r, i), uinv.at(r, k));
    }
    void swap_cols(std::size_t j, std::size_t l) {
        if (j == l) return;
        for (std::size_t i = 0; i < d.rows(); ++i) std::swap(d.at(i, j), d.at(i, l));
        for (std::size_t i = 0; i < v.rows(); ++i) std::swap(v.at(i, j), v.at(i, l));
        for (std::size_t c = 0; c < vinv.cols(); ++c) std::swap(vinv.at(j, c), vinv.at(l, c));
    }
    void negate_row(std::size_t i) {
        for (std::size_t j = 0; j < d.cols(); ++j) d.at(i, j) = -d.at(i, j);
        for (std::size_t j = 0; j < u.cols(); ++j) u.at(i, j) = -u.at(i, j);
        for (std::size_t r = 0; r < uinv.rows(); ++r) uinv.at(r, i) = -uinv.at(r, i);
    }
    // row_i -= q * row_k
    void row_axpy(std::size_t i, std::size_t k, const Int& q) {
        if (q == 0) return;
        for (std::size_t j = 0; j < d.cols(); ++j) d.at(i, j) -= q * d.at(k, j);
        for (std::size_t j = 0; j < u.cols(); ++j) u.at(i, j) -= q * u.at(k, j);
        for (std::size_t r = 0; r < uinv.rows(); ++r) uinv.at(r, k) += q * uinv.at(r, i);
    }
    // col_j -= q * col_k
    void col_axpy(std::size_t j, std::size_t k, const Int& q) {
        if (q == 0) return;
        for (std::size_t i = 0; i < d.rows(); ++i) d.at(i, j) -= q * d.at(i, k);
        for (std::size_t i = 0; i < v.rows(); ++i) v.at(i, j) -= q * v.at(i, k);
        for (std::size_t c = 0; c < vinv.cols(); ++c) vinv.at(k, c) += q * vinv.at(j, c);
    }
};

}  // namespace

SmithDecomposition smith(const IntMatrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    SmithState s{a, IntMatrix::identity(m), IntMatrix::identity(m), IntMatrix::identity(n),
                 IntMatrix::identity(n)};

    const std::size_t steps = std::min(m, n);
    for (std::size_t t = 0; t < steps; ++t) {
        for (;;) {
            // minimal |entry| in the lower-right submatrix; ties go to the
            // lowest row index, then the lowest column index
            std::size_t pi = m, pj = n;
            Int best = 0;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j) {
                    const Int& e = s.d.at(i, j);
                    if (e == 0) continue;
                    Int mag = abs(e);
                    if (pi == m || mag < best) {
                        best = mag;
                        pi = i;
                        pj = j;
                    }
                }
            if (pi == m) break;  // submatrix is zero

            s.swap_rows(t, pi);
            s.swap_cols(t, pj);
            if (s.d.at(t, t) < 0) s.negate_row(t);

            bool residue = false;
            for (std::size_t i = t + 1; i < m; ++i) {
                Int q = s.d.at(i, t) / s.d.at(t, t);  // truncated; |remainder| < pivot
                s.row_axpy(i, t, q);
                if (s.d.at(i, t) != 0) residue = true;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                Int q = s.d.at(t, j) / s.d.at(t, t);
                s.col_axpy(j, t, q);
                if (s.d.at(t, j) != 0) residue = true;
            }
            if (residue) continue;  // smaller pivot now exists, reselect

            // pivot must divide the remaining submatrix; if not, fold the
            // offending row into the pivot row and reduce again
            bool fixed = true;
            for (std::size_t i = t + 1; i < m && fixed; ++i)
                for (std::size_t j = t + 1; j < n && fixed; ++j)
                    if (s.d.at(i, j) % s.d.at(t, t) != 0) {
                        s.row_axpy(t, i, Int(-1));
                        fixed = false;
                    }
            if (fixed) break;
        }
        if (s.d.at(t, t) == 0) break;  // all further diagonal entries stay zero
    }

    return SmithDecomposition{s.u, s.uinv, s.d, s.v, s.vinv};
}

IntMatrix kernel_basis(const IntMatrix& a) {
    SmithDecomposition sd = smith(a);
    const std::size_t n = a.cols();
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < n; ++j)
        if (j >= std::min(a.rows(), n) || sd.diag.at(j, j) == 0) idx.push_back(j);
    return sd.right.cols_selected(idx);
}

IntMatrix lattice_basis(const IntMatrix& a) {
    // im(a) = im(left_inv * diag) since right is unimodular
    SmithDecomposition sd = smith(a);
    std::size_t r = sd.rank();
    IntMatrix basis(a.rows(), r);
    for (std::size_t j = 0; j < r; ++j) {
        const Int& dj = sd.diag.at(j, j);
        for (std::size_t i = 0; i < a.rows(); ++i) basis.at(i, j) = dj * sd.left_inv.at(i, j);
    }
    return basis;
}

namespace {

bool is_prime(const Int& p) {
    if (p < 2) return false;
    for (Int f = 2; f * f <= p; ++f)
        if (p % f == 0) return false;
    return true;
}

Int mod_reduce(const Int& v, const Int& p) {
    Int r = v % p;
    if (r < 0) r += p;
    return r;
}

Int mod_inverse(const Int& a, const Int& p) {
    // extended Euclid; p prime, a nonzero mod p
    Int old_r = mod_reduce(a, p), r = p;
    Int old_s = 1, s = 0;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    return mod_reduce(old_s, p);
}

}  // namespace

std::size_t rank_mod_p(const IntMatrix& a, const Int& p) {
    if (!is_prime(p)) throw std::invalid_argument("rank_mod_p: modulus must be prime");
    IntMatrix m(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m.at(i, j) = mod_reduce(a.at(i, j), p);

    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
        std::size_t piv = rank;
        while (piv < m.rows() && m.at(piv, col) == 0) ++piv;
        if (piv == m.rows()) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(rank, j), m.at(piv, j));
        Int inv = mod_inverse(m.at(rank, col), p);
        for (std::size_t j = col; j < m.cols(); ++j)
            m.at(rank, j) = mod_reduce(m.at(rank, j) * inv, p);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == rank || m.at(i, col) == 0) continue;
            Int f = m.at(i, col);
            for (std::size_t j = col; j < m.cols(); ++j)
                m.at(i, j) = mod_reduce(m.at(i, j) - f * m.at(rank, j), p);
        }
        ++rank;
    }
    return rank;
}

std::optional<std::vector<Int>> solve(const IntMatrix& a, const std::vector<Int>& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("solve: length mismatch");
    SmithDecomposition sd = smith(a);
    std::vector<Int> y = sd.left.apply(b);
    std::vector<Int> x(a.cols());
    const std::size_t k = std::min(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (i < k && sd.diag.at(i, i) != 0) {
            if (y[i] % sd.diag.at(i, i) != 0) return std::nullopt;
            x[i] = y[i] / sd.diag.at(i, i);
        } else if (y[i] != 0) {
            return std::nullopt;
        }
    }
    return sd.right.apply(x);
}

std::optional<IntMatrix> solve_all(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("solve_all: shape mismatch");
    IntMatrix x(a.cols(), b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) {
        auto sol = solve(a, b.col_vec(j));
        if (!sol) return std::nullopt;
        for (std::size_t i = 0; i < a.cols(); ++i) x.at(i, j) = (*sol)[i];
    }
    return x;
}

nlohmann::json matrix_to_json(const IntMatrix& m) {
    nlohmann::json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    auto entries = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t c = 0; c < m.cols(); ++c) entries.push_back(m.at(i, c).str());
    j["entries"] = std::move(entries);
    return j;
}

IntMatrix matrix_from_json(const nlohmann::json& j) {
    std::size_t rows = j.at("rows").get<std::size_t>();
    std::size_t cols = j.at("cols").get<std::size_t>();
    const auto& entries = j.at("entries");
    if (entries.size() != rows * cols)
        throw std::invalid_argument("matrix_from_json: entry count mismatch");
    IntMatrix m(rows, cols);
    for (std::size_t k = 0; k < entries.size(); ++k) {
        const auto& e = entries[k];
        Int v = e.is_string() ? Int(e.get<std::string>()) : Int(e.get<long long>());
        m.at(k / cols, k % cols) = v;
    }
    return m;
}

}  // namespace cohom
