#include "kpell/tridiagonal.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace kpell {

RationalMatrix operator*(const RationalMatrix& x, const RationalMatrix& y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("matrix product of mismatched sizes");
    }
    const std::size_t n = x.size();
    RationalMatrix out(n);
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t l = 1; l <= n; ++l) {
            if (x(i, l) == 0) continue;
            for (std::size_t j = 1; j <= n; ++j) {
                out(i, j) += x(i, l) * y(l, j);
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------- Tridiag

Tridiag::Tridiag(std::vector<Rational> diag, std::vector<Rational> super, std::vector<Rational> sub)
    : diag_(std::move(diag)), super_(std::move(super)), sub_(std::move(sub)) {
    if (diag_.empty()) {
        throw std::invalid_argument("tridiagonal matrix needs n >= 1");
    }
    if (super_.size() + 1 != diag_.size() || sub_.size() + 1 != diag_.size()) {
        throw std::invalid_argument("tridiagonal bands must have lengths n, n-1, n-1");
    }
}

RationalMatrix Tridiag::dense() const {
    const std::size_t n = size();
    RationalMatrix m(n);
    for (std::size_t i = 1; i <= n; ++i) {
        m(i, i) = a(i);
        if (i < n) {
            m(i, i + 1) = b(i);
            m(i + 1, i) = c(i);
        }
    }
    return m;
}

IntMatrix Tridiag::dense_integer() const {
    const RationalMatrix r = dense();
    IntMatrix m(r.size());
    for (std::size_t i = 1; i <= r.size(); ++i) {
        for (std::size_t j = 1; j <= r.size(); ++j) {
            if (!is_integral(r(i, j))) {
                throw std::domain_error("non-integral matrix entry " + r(i, j).get_str());
            }
            m(i, j) = r(i, j).get_num();
        }
    }
    return m;
}

Tridiag gen_matrix(SeqKind kind, const SeqParams& params, std::size_t n) {
    params.validate();
    if (n == 0) {
        throw std::invalid_argument("generating matrix needs n >= 1");
    }
    const Rational k = params.k;
    const Rational a = params.a;
    std::vector<Rational> diag(n, Rational(2));
    std::vector<Rational> super(n - 1, k);
    std::vector<Rational> sub(n - 1, Rational(-1));

    Rational first_diag;
    Rational first_super;
    switch (kind) {
        case SeqKind::Pell: first_diag = 2; first_super = k; break;
        case SeqKind::PellLucas: first_diag = 2 * k + 4; first_super = 2 * k; break;
        case SeqKind::ModifiedPell: first_diag = k + 2; first_super = k; break;
        case SeqKind::GenPell: first_diag = a * k + 2 * a; first_super = a * k; break;
    }
    diag[0] = first_diag;
    if (n > 1) {
        super[0] = first_super;
    }
    return Tridiag(std::move(diag), std::move(super), std::move(sub));
}

// ---------------------------------------------------------------- continuants

ThetaPhi theta_phi(const Tridiag& t) {
    const std::size_t n = t.size();
    ThetaPhi out;
    out.theta_values.resize(n + 1);
    out.theta_values[0] = 1;
    out.theta_values[1] = t.a(1);
    for (std::size_t i = 2; i <= n; ++i) {
        out.theta_values[i] = t.a(i) * out.theta_values[i - 1] -
                              t.b(i - 1) * t.c(i - 1) * out.theta_values[i - 2];
    }

    // phi_j lives at phi_values[j - 1], j = 1..n+1.
    auto& phi = out.phi_values;
    phi.resize(n + 1);
    phi[n] = 1;
    phi[n - 1] = t.a(n);
    for (std::size_t i = n - 1; i >= 1; --i) {
        phi[i - 1] = t.a(i) * phi[i] - t.b(i) * t.c(i) * phi[i + 1];
    }
    return out;
}

Rational det_continuant(const Tridiag& t) {
    Rational prev = 1;
    Rational cur = t.a(1);
    for (std::size_t i = 2; i <= t.size(); ++i) {
        Rational next = t.a(i) * cur - t.b(i - 1) * t.c(i - 1) * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

RationalMatrix usmani_inverse(const Tridiag& t) {
    const std::size_t n = t.size();
    const ThetaPhi tp = theta_phi(t);
    const Rational& det = tp.theta(n);
    if (det == 0) {
        throw std::domain_error("matrix is singular (theta_n = 0)");
    }
    RationalMatrix inv(n);
    for (std::size_t i = 1; i <= n; ++i) {
        inv(i, i) = tp.theta(i - 1) * tp.phi(i + 1) / det;
        // Running band products b_i..b_{j-1} and c_i..c_{j-1}.
        Rational upper = 1;
        Rational lower = 1;
        for (std::size_t j = i + 1; j <= n; ++j) {
            upper *= t.b(j - 1);
            lower *= t.c(j - 1);
            const bool odd = (i + j) % 2 == 1;
            Rational above = upper * tp.theta(i - 1) * tp.phi(j + 1) / det;
            Rational below = lower * tp.theta(i - 1) * tp.phi(j + 1) / det;
            inv(i, j) = odd ? Rational(-above) : above;
            inv(j, i) = odd ? Rational(-below) : below;
        }
    }
    return inv;
}

// ---------------------------------------------------------------- closed forms

namespace {

std::vector<BigInt> first_terms(SeqKind kind, const SeqParams& params, std::size_t count) {
    std::vector<BigInt> out;
    out.reserve(count);
    TermStream s(kind, params);
    for (std::size_t i = 0; i < count; ++i) out.push_back(s.next());
    return out;
}

BigInt signed_power(const BigInt& k, std::size_t e, bool negative) {
    BigInt out;
    mpz_pow_ui(out.get_mpz_t(), k.get_mpz_t(), e);
    if (negative) out = -out;
    return out;
}

}  // namespace

RationalMatrix inverse_closed_P(std::int64_t k, std::size_t n) {
    const SeqParams params{.k = k};
    params.validate();
    if (n == 0) throw std::invalid_argument("inverse_closed_P needs n >= 1");
    const auto P = first_terms(SeqKind::Pell, params, n + 2);
    const BigInt kk = k;
    RationalMatrix inv(n);
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= n; ++j) {
            BigInt num = i <= j ? BigInt(signed_power(kk, j - i, (i + j) % 2 == 1) * P[i] * P[n - j + 1])
                                : BigInt(P[j] * P[n - i + 1]);
            inv(i, j) = make_rational(num, P[n + 1]);
        }
    }
    return inv;
}

RationalMatrix inverse_closed_G(const SeqParams& params, std::size_t n) {
    params.validate();
    if (n == 0) throw std::invalid_argument("inverse_closed_G needs n >= 1");
    const auto P = first_terms(SeqKind::Pell, params, n + 2);
    const auto G = first_terms(SeqKind::GenPell, params, n + 2);
    const BigInt kk = params.k;
    const BigInt a = params.a;
    RationalMatrix inv(n);
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= n; ++j) {
            BigInt num;
            if (i == 1 && i < j) {
                num = a * signed_power(kk, j - 1, (j + 1) % 2 == 1) * P[n - j + 1];
            } else if (1 < i && i <= j) {
                num = signed_power(kk, j - i, (i + j) % 2 == 1) * G[i] * P[n - j + 1];
            } else if (j == 1) {  // i >= j = 1
                num = P[n - i + 1];
            } else {  // i > j > 1
                num = G[j] * P[n - i + 1];
            }
            inv(i, j) = make_rational(num, G[n + 1]);
        }
    }
    return inv;
}

IntMatrix cofactor_P(std::int64_t k, std::size_t n) {
    const SeqParams params{.k = k};
    params.validate();
    if (n == 0) throw std::invalid_argument("cofactor_P needs n >= 1");
    const auto P = first_terms(SeqKind::Pell, params, n + 1);
    const BigInt kk = k;
    IntMatrix c(n);
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= n; ++j) {
            c(i, j) = i >= j ? BigInt(signed_power(kk, i - j, (i + j) % 2 == 1) * P[j] * P[n - i + 1])
                             : BigInt(P[i] * P[n - j + 1]);
        }
    }
    return c;
}

IntMatrix cofactor_G(const SeqParams& params, std::size_t n) {
    params.validate();
    if (n == 0) throw std::invalid_argument("cofactor_G needs n >= 1");
    const auto P = first_terms(SeqKind::Pell, params, n + 1);
    const auto G = first_terms(SeqKind::GenPell, params, n + 1);
    const BigInt kk = params.k;
    const BigInt a = params.a;
    IntMatrix c(n);
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= n; ++j) {
            const bool odd = (i + j) % 2 == 1;
            if (i > j && j == 1) {
                c(i, j) = a * signed_power(kk, i - j, odd) * P[n - i + 1];
            } else if (i >= j && j > 1) {
                c(i, j) = signed_power(kk, i - j, odd) * G[j] * P[n - i + 1];
            } else if (i == 1) {  // 1 = i <= j
                c(i, j) = P[n - j + 1];
            } else {  // 1 < i < j
                c(i, j) = G[i] * P[n - j + 1];
            }
        }
    }
    return c;
}

// ---------------------------------------------------------------- Bareiss

BigInt bareiss_det(const IntMatrix& input) {
    const std::size_t n = input.size();
    if (n == 0) return 1;
    IntMatrix m = input;
    int sign = 1;
    BigInt prev = 1;
    for (std::size_t p = 1; p < n; ++p) {
        if (m(p, p) == 0) {
            std::size_t swap_row = 0;
            for (std::size_t r = p + 1; r <= n; ++r) {
                if (m(r, p) != 0) {
                    swap_row = r;
                    break;
                }
            }
            if (swap_row == 0) return 0;
            for (std::size_t j = 1; j <= n; ++j) std::swap(m(p, j), m(swap_row, j));
            sign = -sign;
        }
        for (std::size_t i = p + 1; i <= n; ++i) {
            for (std::size_t j = p + 1; j <= n; ++j) {
                BigInt t = m(i, j) * m(p, p) - m(i, p) * m(p, j);
                mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m(i, p) = 0;
        }
        prev = m(p, p);
    }
    return sign > 0 ? m(n, n) : BigInt(-m(n, n));
}

IntMatrix submatrix(const IntMatrix& m, std::size_t row, std::size_t col) {
    const std::size_t n = m.size();
    if (n == 0 || row < 1 || row > n || col < 1 || col > n) {
        throw std::out_of_range("submatrix index out of range");
    }
    IntMatrix out(n - 1);
    for (std::size_t i = 1, oi = 1; i <= n; ++i) {
        if (i == row) continue;
        for (std::size_t j = 1, oj = 1; j <= n; ++j) {
            if (j == col) continue;
            out(oi, oj++) = m(i, j);
        }
        ++oi;
    }
    return out;
}

std::string entry_string(const BigInt& v) { return v.get_str(); }
std::string entry_string(const Rational& v) { return v.get_str(); }

}  // namespace kpell
