#pragma once

// Exact arithmetic kernel: big integers, reduced rationals, elements of the
// quadratic field Q(sqrt d), and polynomials in the indeterminate k.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace kpell {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Builds num/den in lowest terms with a positive denominator.
/// Throws std::domain_error when den == 0.
Rational make_rational(const BigInt& num, const BigInt& den);

/// True when r is an integer (denominator 1).
bool is_integral(const Rational& r);

/// Largest s with s*s <= n, and whether s*s == n.  n >= 0.
std::pair<BigInt, bool> integer_sqrt(const BigInt& n);

/// p + q*sqrt(d), d >= 1.
///
/// Canonical form: when d is a perfect square s^2 the surd part is folded
/// into the rational part (p + q*s, 0), so equality is componentwise on
/// (p, q, d) for every value.
class QuadNum {
public:
    QuadNum(Rational p, Rational q, BigInt d);

    /// A rational embedded in Q(sqrt d).
    static QuadNum rational(Rational p, BigInt d);
    /// sqrt(d) itself (rational when d is a perfect square).
    static QuadNum sqrt_of(BigInt d);

    const Rational& p() const { return p_; }
    const Rational& q() const { return q_; }
    const BigInt& d() const { return d_; }

    bool is_rational() const { return q_ == 0; }
    bool is_zero() const { return p_ == 0 && q_ == 0; }

    /// p - q*sqrt(d).
    QuadNum conjugate() const;
    /// p^2 - d*q^2, the field norm.
    Rational norm() const;

    /// "p", "q*sqrt(d)" or "p + q*sqrt(d)" with rationals as "num/den".
    std::string to_string() const;

    friend bool operator==(const QuadNum& x, const QuadNum& y) {
        return x.d_ == y.d_ && x.p_ == y.p_ && x.q_ == y.q_;
    }

private:
    Rational p_;
    Rational q_;
    BigInt d_;
};

// Field operations.  Operands must share d (std::invalid_argument otherwise);
// division by zero throws std::domain_error.
QuadNum operator+(const QuadNum& x, const QuadNum& y);
QuadNum operator-(const QuadNum& x, const QuadNum& y);
QuadNum operator*(const QuadNum& x, const QuadNum& y);
QuadNum operator/(const QuadNum& x, const QuadNum& y);
QuadNum operator-(const QuadNum& x);

/// x^e by binary exponentiation; pow(x, 0) == 1.
QuadNum pow(const QuadNum& x, std::uint64_t e);

/// The characteristic roots (1 + sqrt(1+k), 1 - sqrt(1+k)) of r^2 - 2r - k.
/// Throws std::invalid_argument for k <= 0.
std::pair<QuadNum, QuadNum> quad_roots(std::int64_t k);

/// Polynomial in k with integer coefficients; coeffs()[i] is the
/// coefficient of k^i.  The zero polynomial has no coefficients.
class KPoly {
public:
    KPoly() = default;
    explicit KPoly(std::vector<BigInt> coeffs);
    /// Constant polynomial.
    static KPoly constant(const BigInt& c);

    const std::vector<BigInt>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    /// Coefficient of k^i (zero beyond the degree).
    BigInt coeff(std::size_t i) const;

    BigInt evaluate(const BigInt& k) const;

    /// Descending powers of k, unit coefficients suppressed, e.g.
    /// "k^2 + 12k + 16".  A non-empty `factor` is appended to every term
    /// ("k^2a + 8ka + 8a"); a bare unit term then renders as the factor.
    std::string to_string(const std::string& factor = "") const;

    friend bool operator==(const KPoly&, const KPoly&) = default;

private:
    void trim();

    std::vector<BigInt> coeffs_;
};

KPoly operator+(const KPoly& x, const KPoly& y);
/// c * p.
KPoly scale(const KPoly& p, const BigInt& c);
/// k * p.
KPoly mul_k(const KPoly& p);

}  // namespace kpell
