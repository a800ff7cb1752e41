#pragma once

// Non-recursive formulas for the k-Pell family: binomial sums, symbolic
// polynomial-in-k terms, and the Toeplitz eigenvalue product.

#include <complex>
#include <cstdint>
#include <vector>

#include "kpell/exact_arith.hpp"
#include "kpell/sequences.hpp"

namespace kpell {

/// C(n, r), zero-extended: 0 whenever r < 0, r > n or n < 0.  In particular
/// C(-1, 0) = 0.
BigInt binom(std::int64_t n, std::int64_t r);

/// sum_{i=0}^{floor(n/2)} C(n-i, i) k^i 2^(n-2i), which equals P_{k,n+1}.
/// Requires n >= 2.
BigInt pell_binomial(std::int64_t k, std::uint64_t n);

/// Two-case double sum for G_{k,n+1}: n = 2m uses C(m-2+i+j, m-i) and
/// 2^(2i+j-2); n = 2m-1 uses C(m-3+i+j, m-i) and 2^(2i+j-3).  The summand
/// is a^(1-j) k^(m+1-i-j) (ak+2a)^j over i = 1..m, j = 0..1.  Requires n >= 1.
BigInt gen_double_sum(const SeqParams& params, std::uint64_t n);

/// The polynomial in k whose value at every k >= 1 is the n-th term.
/// For GenPell the result is the cofactor of the overall factor a.
/// Only Pell and GenPell are supported (std::invalid_argument otherwise).
KPoly symbolic_term(SeqKind kind, std::uint64_t n);

using ComplexF = std::complex<double>;

struct EigenReport {
    ComplexF product;
    BigInt rounded;  // nearest integer to product.real()
    BigInt exact;    // P_{k,n+1}
    double abs_residual = 0.0;  // |product - exact| in the complex plane
    bool used_corrected_formula = true;

    double relative_residual() const;
    /// Rounded product equals the exact term.
    bool rounding_matches() const { return rounded == exact; }
};

/// lambda_r = 2 + c i sqrt(k) cos(r pi / (n+1)), r = 1..n.  The Toeplitz
/// eigenvalue theorem with diagonal 2, super k, sub -1 gives c = 2
/// (corrected).  `verbatim` selects c = 1, which does not reproduce the
/// determinant for n >= 2; it is kept so the discrepancy can be shown.
std::vector<ComplexF> pell_eigenvalues(std::int64_t k, std::uint64_t n, bool verbatim = false);

/// Product of pell_eigenvalues compared against P_{k,n+1}.  n >= 1, k >= 1.
EigenReport eigen_product(std::int64_t k, std::uint64_t n, bool verbatim = false);

}  // namespace kpell
