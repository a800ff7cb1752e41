#include "kpell/sequences.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace kpell {

std::string_view kind_tag(SeqKind kind) {
    switch (kind) {
        case SeqKind::Pell: return "P";
        case SeqKind::PellLucas: return "Q";
        case SeqKind::ModifiedPell: return "q";
        case SeqKind::GenPell: return "G";
    }
    throw std::logic_error("unknown SeqKind");
}

SeqKind kind_from_tag(std::string_view tag) {
    if (tag == "P") return SeqKind::Pell;
    if (tag == "Q") return SeqKind::PellLucas;
    if (tag == "q") return SeqKind::ModifiedPell;
    if (tag == "G") return SeqKind::GenPell;
    throw std::invalid_argument("unknown sequence kind '" + std::string(tag) + "' (expected P, Q, q or G)");
}

void SeqParams::validate() const {
    if (k < 1) {
        throw std::invalid_argument("k must be >= 1, got " + std::to_string(k));
    }
    if (a < 1) {
        throw std::invalid_argument("a must be >= 1, got " + std::to_string(a));
    }
}

std::pair<BigInt, BigInt> initial_terms(SeqKind kind, const SeqParams& params) {
    params.validate();
    switch (kind) {
        case SeqKind::Pell: return {0, 1};
        case SeqKind::PellLucas: return {2, 2};
        case SeqKind::ModifiedPell: return {1, 1};
        case SeqKind::GenPell: return {BigInt(params.a), BigInt(params.a)};
    }
    throw std::logic_error("unknown SeqKind");
}

BigInt term(SeqKind kind, const SeqParams& params, std::uint64_t n, std::uint64_t guard) {
    if (n > guard) {
        throw std::length_error("n = " + std::to_string(n) + " exceeds the recurrence guard " +
                                std::to_string(guard));
    }
    auto [prev, cur] = initial_terms(kind, params);
    if (n == 0) {
        return prev;
    }
    const BigInt k = params.k;
    BigInt next;
    for (std::uint64_t i = 1; i < n; ++i) {
        next = 2 * cur + k * prev;
        prev.swap(cur);
        cur.swap(next);
    }
    return cur;
}

// ---------------------------------------------------------------- TermStream

TermStream::TermStream(SeqKind kind, const SeqParams& params) : k_(params.k) {
    auto [x0, x1] = initial_terms(kind, params);
    cur_ = std::move(x0);
    nxt_ = std::move(x1);
}

void TermStream::advance() {
    BigInt following = 2 * nxt_ + k_ * cur_;
    cur_.swap(nxt_);
    nxt_.swap(following);
    ++index_;
}

BigInt TermStream::next() {
    BigInt out = cur_;
    advance();
    return out;
}

// ---------------------------------------------------------------- Binet

namespace {

BigInt require_integer(const QuadNum& v, const char* what) {
    if (!v.is_rational() || !is_integral(v.p())) {
        throw std::logic_error(std::string(what) + " produced a non-integer: " + v.to_string());
    }
    return v.p().get_num();
}

}  // namespace

BigInt gen_binet(const SeqParams& params, std::uint64_t n) {
    params.validate();
    const auto [r1, r2] = quad_roots(params.k);
    const QuadNum a = QuadNum::rational(params.a, r1.d());
    const QuadNum two = QuadNum::rational(2, r1.d());
    return require_integer((a * pow(r1, n) + a * pow(r2, n)) / two, "gen_binet");
}

BigInt pell_binet(std::int64_t k, std::uint64_t n) {
    const auto [r1, r2] = quad_roots(k);
    // r1 - r2 is 2 sqrt(1+k), or the rational 2s when 1+k = s^2.
    return require_integer((pow(r1, n) - pow(r2, n)) / (r1 - r2), "pell_binet");
}

// ---------------------------------------------------------------- relations

BigInt gen_from_lucas(const SeqParams& params, std::uint64_t n) {
    params.validate();
    const BigInt numerator = BigInt(params.a) * term(SeqKind::PellLucas, params, n);
    if (!mpz_divisible_ui_p(numerator.get_mpz_t(), 2)) {
        throw std::logic_error("a*Q_{k,n} is odd at n = " + std::to_string(n));
    }
    return BigInt(numerator / 2);
}

BigInt gen_from_pell(const SeqParams& params, std::uint64_t n) {
    params.validate();
    if (n == 0) {
        throw std::invalid_argument("gen_from_pell needs n >= 1 (P_{k,-1} is undefined)");
    }
    const BigInt a = params.a;
    const BigInt k = params.k;
    return BigInt(a * term(SeqKind::Pell, params, n) + a * k * term(SeqKind::Pell, params, n - 1));
}

BigInt pell_addition(std::int64_t k, std::uint64_t n, std::uint64_t m) {
    if (n == 0 || m == 0) {
        throw std::invalid_argument("pell_addition needs n, m >= 1");
    }
    const SeqParams params{.k = k};
    params.validate();
    auto P = [&](std::uint64_t i) { return term(SeqKind::Pell, params, i); };
    return BigInt(BigInt(k) * P(n - 1) * P(m) + P(n) * P(m + 1));
}

// ---------------------------------------------------------------- fast doubling

std::pair<BigInt, BigInt> pell_fast(std::int64_t k, std::uint64_t n) {
    SeqParams{.k = k}.validate();
    const BigInt kk = k;
    BigInt lo = 0;  // P_j
    BigInt hi = 1;  // P_{j+1}
    BigInt even;
    BigInt odd;
    for (int bit = std::bit_width(n) - 1; bit >= 0; --bit) {
        even = 2 * lo * (hi - lo);
        odd = hi * hi + kk * lo * lo;
        if ((n >> bit) & 1U) {
            lo.swap(odd);
            hi = 2 * lo + kk * even;
        } else {
            lo.swap(even);
            hi.swap(odd);
        }
    }
    return {lo, hi};
}

BigInt term_fast(SeqKind kind, const SeqParams& params, std::uint64_t n) {
    auto [x0, x1] = initial_terms(kind, params);
    if (n == 0) {
        return x0;
    }
    auto [p_prev, p_n] = pell_fast(params.k, n - 1);
    return BigInt(x1 * p_n + BigInt(params.k) * x0 * p_prev);
}

std::uint64_t digest64(const BigInt& value) {
    static_assert(sizeof(unsigned long) == sizeof(std::uint64_t), "digest64 assumes LP64");
    BigInt r;
    mpz_fdiv_r_2exp(r.get_mpz_t(), value.get_mpz_t(), 64);
    return mpz_get_ui(r.get_mpz_t());
}

}  // namespace kpell
