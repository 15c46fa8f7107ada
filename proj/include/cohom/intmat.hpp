#pragma once

// Exact integer matrices and Smith normal form.
//
// All arithmetic is arbitrary precision; nothing here rounds or overflows.
// smith() returns unimodular transforms U, V with U*A*V = D, D diagonal,
// nonnegative, and each diagonal entry dividing the next (zeros trail).

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json_fwd.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace cohom {

using Int = boost::multiprecision::cpp_int;

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows);
    // rows x cols matrix with diag on the main diagonal, zero elsewhere
    static IntMatrix diagonal(const std::vector<Int>& diag, std::size_t rows, std::size_t cols);
    static IntMatrix row_vector(const std::vector<Int>& v);
    static IntMatrix col_vector(const std::vector<Int>& v);
    static IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
    static IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    IntMatrix transpose() const;
    IntMatrix operator*(const IntMatrix& rhs) const;
    IntMatrix operator+(const IntMatrix& rhs) const;
    IntMatrix operator-() const;
    IntMatrix scaled(const Int& k) const;
    bool operator==(const IntMatrix& rhs) const = default;

    bool is_zero() const;
    bool is_identity() const;

    std::vector<Int> col_vec(std::size_t j) const;
    std::vector<Int> row_vec(std::size_t i) const;
    IntMatrix cols_selected(const std::vector<std::size_t>& idx) const;
    IntMatrix rows_selected(const std::vector<std::size_t>& idx) const;
    std::vector<Int> apply(const std::vector<Int>& x) const;  // matrix * column

    // Exact determinant (Bareiss fraction-free elimination); square matrices only.
    Int det() const;

    std::string str() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> data_;
};

// Invariants: left*a*right == diag, left/right unimodular (|det| = 1),
// diag nonnegative with each entry dividing the next, zeros trailing.
// left_inv/right_inv are the exact inverses, tracked during elimination.
struct SmithDecomposition {
    IntMatrix left;
    IntMatrix left_inv;
    IntMatrix diag;
    IntMatrix right;
    IntMatrix right_inv;

    std::vector<Int> divisors() const;  // nonzero diagonal entries, in order
    std::size_t rank() const;
};

SmithDecomposition smith(const IntMatrix& a);

// Columns form a basis of the integer kernel lattice {x : a*x = 0}.
// The basis is saturated: any integer kernel vector is an integer combination.
IntMatrix kernel_basis(const IntMatrix& a);

// Basis of the column-span lattice of a (columns independent, spans im a).
IntMatrix lattice_basis(const IntMatrix& a);

// Rank over the field Z/p. Throws std::invalid_argument unless p is prime.
std::size_t rank_mod_p(const IntMatrix& a, const Int& p);

// One integer solution of a*x = b, if any exists.
std::optional<std::vector<Int>> solve(const IntMatrix& a, const std::vector<Int>& b);
// X with a*X = b, column by column; nullopt if any column is unsolvable.
std::optional<IntMatrix> solve_all(const IntMatrix& a, const IntMatrix& b);

// JSON shape: {"rows": r, "cols": c, "entries": ["…", …]} with decimal
// strings in row-major order.
nlohmann::json matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const nlohmann::json& j);

}  // namespace cohom
