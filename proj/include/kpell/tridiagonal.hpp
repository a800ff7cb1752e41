#pragma once

// Tridiagonal generating matrices, continuant determinants, Usmani's
// inverse formula, closed-form inverses and cofactor matrices, and a
// fraction-free determinant used to cross-check them.

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "kpell/exact_arith.hpp"
#include "kpell/sequences.hpp"

namespace kpell {

/// Square, row-major, 1-based accessors to match the usual (i, j) notation.
template <typename T>
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t n) : n_(n), data_(n * n, T(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n);
        for (std::size_t i = 1; i <= n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t size() const { return n_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[(i - 1) * n_ + (j - 1)]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[(i - 1) * n_ + (j - 1)]; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;
using IntMatrix = Matrix<BigInt>;

RationalMatrix operator*(const RationalMatrix& x, const RationalMatrix& y);

/// Exact tridiagonal matrix: diag a_1..a_n, super b_1..b_{n-1},
/// sub c_1..c_{n-1} (c_i sits at (i+1, i)).
class Tridiag {
public:
    /// Throws std::invalid_argument unless the band lengths are n, n-1, n-1
    /// with n >= 1.
    Tridiag(std::vector<Rational> diag, std::vector<Rational> super, std::vector<Rational> sub);

    std::size_t size() const { return diag_.size(); }
    const Rational& a(std::size_t i) const { return diag_[i - 1]; }
    const Rational& b(std::size_t i) const { return super_[i - 1]; }
    const Rational& c(std::size_t i) const { return sub_[i - 1]; }

    RationalMatrix dense() const;
    /// Dense integer copy; throws std::domain_error on a non-integral entry.
    IntMatrix dense_integer() const;

private:
    std::vector<Rational> diag_;
    std::vector<Rational> super_;
    std::vector<Rational> sub_;
};

/// The n x n generating matrix whose determinant is the (n+1)-th term:
/// interior band (2, k, -1); first row (2, k), (2k+4, 2k), (k+2, k) or
/// (ak+2a, ak) for P, Q, q, G.
Tridiag gen_matrix(SeqKind kind, const SeqParams& params, std::size_t n);

/// Forward minors theta_0..theta_n and backward minors phi_1..phi_{n+1}.
struct ThetaPhi {
    std::vector<Rational> theta_values;  // index i -> theta_i
    std::vector<Rational> phi_values;    // index j-1 -> phi_j

    const Rational& theta(std::size_t i) const { return theta_values[i]; }
    const Rational& phi(std::size_t j) const { return phi_values[j - 1]; }
};

/// theta_i = a_i theta_{i-1} - b_{i-1} c_{i-1} theta_{i-2}, theta_0 = 1;
/// phi_i = a_i phi_{i+1} - b_i c_i phi_{i+2}, phi_{n+1} = 1, phi_n = a_n.
ThetaPhi theta_phi(const Tridiag& t);

/// Determinant through the continuant recurrence (theta_n).
Rational det_continuant(const Tridiag& t);

/// Exact inverse via Usmani's formula.  Throws std::domain_error when the
/// matrix is singular.
RationalMatrix usmani_inverse(const Tridiag& t);

/// Closed-form (P_n(k))^{-1}.  n >= 1.
RationalMatrix inverse_closed_P(std::int64_t k, std::size_t n);
/// Closed-form (G_n(k))^{-1}.  n >= 1.
RationalMatrix inverse_closed_G(const SeqParams& params, std::size_t n);

/// Matrix of cofactors C_n(k) of P_n(k) from its entry formula.
/// n = 1 gives [1].
IntMatrix cofactor_P(std::int64_t k, std::size_t n);
/// Matrix of cofactors D_n(k) of G_n(k) from its entry formula.
/// n = 1 gives [1].
IntMatrix cofactor_G(const SeqParams& params, std::size_t n);

/// Exact determinant by fraction-free (Bareiss) elimination with row swaps.
/// The empty matrix has determinant 1.
BigInt bareiss_det(const IntMatrix& m);

/// m with row i and column j removed (1-based).
IntMatrix submatrix(const IntMatrix& m, std::size_t i, std::size_t j);

// Rendering.

std::string entry_string(const BigInt& v);
std::string entry_string(const Rational& v);

/// Right-aligned text grid, one row per line.
template <typename T>
std::string format_grid(const Matrix<T>& m) {
    std::vector<std::string> cells;
    std::size_t width = 0;
    for (std::size_t i = 1; i <= m.size(); ++i) {
        for (std::size_t j = 1; j <= m.size(); ++j) {
            cells.push_back(entry_string(m(i, j)));
            width = std::max(width, cells.back().size());
        }
    }
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) {
            const std::string& cell = cells[i * m.size() + j];
            if (j != 0) out += "  ";
            out.append(width - cell.size(), ' ');
            out += cell;
        }
        out += '\n';
    }
    return out;
}

/// {"n": n, "entries": [[string]]}, row-major.
template <typename T>
nlohmann::json matrix_json(const Matrix<T>& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 1; i <= m.size(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 1; j <= m.size(); ++j) row.push_back(entry_string(m(i, j)));
        rows.push_back(std::move(row));
    }
    return {{"n", m.size()}, {"entries", std::move(rows)}};
}

}  // namespace kpell
