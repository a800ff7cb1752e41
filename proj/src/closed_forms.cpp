#include "kpell/closed_forms.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace kpell {

BigInt binom(std::int64_t n, std::int64_t r) {
    if (n < 0 || r < 0 || r > n) {
        return 0;
    }
    BigInt out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(r));
    return out;
}

namespace {

BigInt ipow(const BigInt& base, std::int64_t e) {
    if (e < 0) {
        throw std::logic_error("negative exponent in integer power");
    }
    BigInt out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
    return out;
}

}  // namespace

BigInt pell_binomial(std::int64_t k, std::uint64_t n) {
    SeqParams{.k = k}.validate();
    if (n < 2) {
        throw std::invalid_argument("pell_binomial needs n >= 2");
    }
    const auto nn = static_cast<std::int64_t>(n);
    const BigInt kk = k;
    const BigInt two = 2;
    BigInt sum = 0;
    for (std::int64_t i = 0; i <= nn / 2; ++i) {
        sum += binom(nn - i, i) * ipow(kk, i) * ipow(two, nn - 2 * i);
    }
    return sum;
}

BigInt gen_double_sum(const SeqParams& params, std::uint64_t n) {
    params.validate();
    if (n == 0) {
        throw std::invalid_argument("gen_double_sum needs n >= 1");
    }
    const bool even = n % 2 == 0;
    const auto m = static_cast<std::int64_t>(even ? n / 2 : (n + 1) / 2);
    const std::int64_t binom_shift = even ? -2 : -3;
    const std::int64_t two_shift = even ? -2 : -3;

    const BigInt a = params.a;
    const BigInt k = params.k;
    const BigInt two = 2;
    const BigInt lead = a * k + 2 * a;  // G_{k,2}

    BigInt sum = 0;
    for (std::int64_t i = 1; i <= m; ++i) {
        for (std::int64_t j = 0; j <= 1; ++j) {
            const BigInt c = binom(m + binom_shift + i + j, m - i);
            if (c == 0) {
                continue;
            }
            sum += c * ipow(a, 1 - j) * ipow(k, m + 1 - i - j) * ipow(two, 2 * i + j + two_shift) *
                   ipow(lead, j);
        }
    }
    return sum;
}

KPoly symbolic_term(SeqKind kind, std::uint64_t n) {
    KPoly prev;
    KPoly cur;
    switch (kind) {
        case SeqKind::Pell:
            prev = KPoly();
            cur = KPoly::constant(1);
            break;
        case SeqKind::GenPell:
            prev = KPoly::constant(1);
            cur = KPoly::constant(1);
            break;
        default:
            throw std::invalid_argument("symbolic_term supports only P and G, not " +
                                        std::string(kind_tag(kind)));
    }
    if (n == 0) {
        return prev;
    }
    for (std::uint64_t i = 1; i < n; ++i) {
        KPoly next = scale(cur, 2) + mul_k(prev);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

double EigenReport::relative_residual() const {
    const double scale = std::abs(exact.get_d());
    return scale == 0.0 ? abs_residual : abs_residual / scale;
}

std::vector<ComplexF> pell_eigenvalues(std::int64_t k, std::uint64_t n, bool verbatim) {
    SeqParams{.k = k}.validate();
    if (n == 0) {
        throw std::invalid_argument("eigenvalues need n >= 1");
    }
    const double amp = (verbatim ? 1.0 : 2.0) * std::sqrt(static_cast<double>(k));
    const double step = std::numbers::pi / static_cast<double>(n + 1);
    std::vector<ComplexF> out;
    out.reserve(n);
    for (std::uint64_t r = 1; r <= n; ++r) {
        out.emplace_back(2.0, amp * std::cos(static_cast<double>(r) * step));
    }
    return out;
}

EigenReport eigen_product(std::int64_t k, std::uint64_t n, bool verbatim) {
    EigenReport report;
    report.product = ComplexF(1.0, 0.0);
    for (const auto& lambda : pell_eigenvalues(k, n, verbatim)) {
        report.product *= lambda;
    }
    if (!std::isfinite(report.product.real()) || !std::isfinite(report.product.imag())) {
        throw std::overflow_error("eigenvalue product is not finite at n = " + std::to_string(n));
    }
    report.rounded = BigInt(std::nearbyint(report.product.real()));
    report.exact = pell_fast(k, n).second;
    report.abs_residual =
        std::abs(report.product - ComplexF(report.exact.get_d(), 0.0));
    report.used_corrected_formula = !verbatim;
    return report;
}

}  // namespace kpell
