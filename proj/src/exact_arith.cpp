#include "kpell/exact_arith.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace kpell {

Rational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

bool is_integral(const Rational& r) { return r.get_den() == 1; }

std::pair<BigInt, bool> integer_sqrt(const BigInt& n) {
    if (n < 0) {
        throw std::domain_error("integer_sqrt of a negative number");
    }
    BigInt s = sqrt(n);
    return {s, s * s == n};
}

// ---------------------------------------------------------------- QuadNum

QuadNum::QuadNum(Rational p, Rational q, BigInt d)
    : p_(std::move(p)), q_(std::move(q)), d_(std::move(d)) {
    if (d_ < 1) {
        throw std::invalid_argument("QuadNum discriminant must be >= 1");
    }
    if (q_ != 0) {
        auto [s, exact] = integer_sqrt(d_);
        if (exact) {
            p_ += q_ * s;
            q_ = 0;
        }
    }
}

QuadNum QuadNum::rational(Rational p, BigInt d) {
    return QuadNum(std::move(p), Rational(0), std::move(d));
}

QuadNum QuadNum::sqrt_of(BigInt d) { return QuadNum(Rational(0), Rational(1), std::move(d)); }

QuadNum QuadNum::conjugate() const { return QuadNum(p_, -q_, d_); }

Rational QuadNum::norm() const {
    Rational dq = d_;
    return Rational(p_ * p_ - dq * q_ * q_);
}

std::string QuadNum::to_string() const {
    const std::string surd = "sqrt(" + d_.get_str() + ")";
    if (q_ == 0) {
        return p_.get_str();
    }
    std::string q_part;
    if (q_ == 1) {
        q_part = surd;
    } else if (q_ == -1) {
        q_part = "-" + surd;
    } else {
        q_part = q_.get_str() + "*" + surd;
    }
    if (p_ == 0) {
        return q_part;
    }
    if (q_ < 0) {
        return p_.get_str() + " - " + q_part.substr(1);
    }
    return p_.get_str() + " + " + q_part;
}

namespace {

void require_same_field(const QuadNum& x, const QuadNum& y) {
    if (x.d() != y.d()) {
        throw std::invalid_argument("QuadNum operands from different fields: sqrt(" +
                                    x.d().get_str() + ") vs sqrt(" + y.d().get_str() + ")");
    }
}

}  // namespace

QuadNum operator+(const QuadNum& x, const QuadNum& y) {
    require_same_field(x, y);
    return QuadNum(x.p() + y.p(), x.q() + y.q(), x.d());
}

QuadNum operator-(const QuadNum& x, const QuadNum& y) {
    require_same_field(x, y);
    return QuadNum(x.p() - y.p(), x.q() - y.q(), x.d());
}

QuadNum operator-(const QuadNum& x) { return QuadNum(-x.p(), -x.q(), x.d()); }

QuadNum operator*(const QuadNum& x, const QuadNum& y) {
    require_same_field(x, y);
    const Rational d = x.d();
    Rational p = x.p() * y.p() + d * x.q() * y.q();
    Rational q = x.p() * y.q() + x.q() * y.p();
    return QuadNum(std::move(p), std::move(q), x.d());
}

QuadNum operator/(const QuadNum& x, const QuadNum& y) {
    require_same_field(x, y);
    const Rational n = y.norm();
    if (n == 0) {
        throw std::domain_error("QuadNum division by zero");
    }
    // x / y = x * conj(y) / N(y)
    const QuadNum t = x * y.conjugate();
    return QuadNum(t.p() / n, t.q() / n, x.d());
}

QuadNum pow(const QuadNum& x, std::uint64_t e) {
    QuadNum result = QuadNum::rational(1, x.d());
    QuadNum base = x;
    while (e != 0) {
        if (e & 1U) {
            result = result * base;
        }
        e >>= 1U;
        if (e != 0) {
            base = base * base;
        }
    }
    return result;
}

std::pair<QuadNum, QuadNum> quad_roots(std::int64_t k) {
    if (k <= 0) {
        throw std::invalid_argument("quad_roots requires k >= 1");
    }
    const BigInt d = BigInt(k) + 1;
    return {QuadNum(1, 1, d), QuadNum(1, -1, d)};
}

// ---------------------------------------------------------------- KPoly

KPoly::KPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

KPoly KPoly::constant(const BigInt& c) { return KPoly(std::vector<BigInt>{c}); }

void KPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) {
        coeffs_.pop_back();
    }
}

BigInt KPoly::coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigInt(0); }

BigInt KPoly::evaluate(const BigInt& k) const {
    BigInt acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * k + *it;
    }
    return acc;
}

std::string KPoly::to_string(const std::string& factor) const {
    if (coeffs_.empty()) {
        return "0";
    }
    std::ostringstream out;
    bool first = true;
    for (std::size_t idx = coeffs_.size(); idx-- > 0;) {
        const BigInt& c = coeffs_[idx];
        if (c == 0) {
            continue;
        }
        const BigInt mag = abs(c);
        if (first) {
            if (c < 0) {
                out << "-";
            }
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        first = false;

        std::string monomial;
        if (idx == 1) {
            monomial = "k";
        } else if (idx > 1) {
            monomial = "k^" + std::to_string(idx);
        }
        monomial += factor;
        if (mag != 1 || monomial.empty()) {
            out << mag.get_str();
        }
        out << monomial;
    }
    return out.str();
}

KPoly operator+(const KPoly& x, const KPoly& y) {
    const std::size_t len = std::max(x.coeffs().size(), y.coeffs().size());
    std::vector<BigInt> out(len);
    for (std::size_t i = 0; i < len; ++i) {
        out[i] = x.coeff(i) + y.coeff(i);
    }
    return KPoly(std::move(out));
}

KPoly scale(const KPoly& p, const BigInt& c) {
    std::vector<BigInt> out(p.coeffs());
    for (auto& v : out) {
        v *= c;
    }
    return KPoly(std::move(out));
}

KPoly mul_k(const KPoly& p) {
    if (p.is_zero()) {
        return p;
    }
    std::vector<BigInt> out;
    out.reserve(p.coeffs().size() + 1);
    out.emplace_back(0);
    out.insert(out.end(), p.coeffs().begin(), p.coeffs().end());
    return KPoly(std::move(out));
}

}  // namespace kpell
