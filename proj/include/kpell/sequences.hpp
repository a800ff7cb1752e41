#pragma once

// The k-Pell family: P (0, 1), Q (2, 2), q (1, 1) and G (a, a), all obeying
// x_n = 2 x_{n-1} + k x_{n-2}.

#include <cstdint>
#include <iterator>
#include <string>
#include <string_view>
#include <utility>

#include "kpell/exact_arith.hpp"

namespace kpell {

enum class SeqKind { Pell, PellLucas, ModifiedPell, GenPell };

/// One-letter tag used on the command line and in JSON: P, Q, q, G.
std::string_view kind_tag(SeqKind kind);
/// Inverse of kind_tag; throws std::invalid_argument on unknown tags.
SeqKind kind_from_tag(std::string_view tag);

struct SeqParams {
    std::int64_t k = 1;
    /// Initial value of G; ignored by the other kinds.
    std::int64_t a = 1;

    /// Throws std::invalid_argument unless k >= 1 and a >= 1.
    void validate() const;
};

/// Default cap on n for the O(n) recurrence.
inline constexpr std::uint64_t kDefaultRecurrenceGuard = 10'000'000;

/// (x_0, x_1) for the given kind.
std::pair<BigInt, BigInt> initial_terms(SeqKind kind, const SeqParams& params);

/// n-th term by the two-term rolling recurrence.  Throws std::length_error
/// when n exceeds `guard`.
BigInt term(SeqKind kind, const SeqParams& params, std::uint64_t n,
            std::uint64_t guard = kDefaultRecurrenceGuard);

/// Lazy, unbounded, single-pass stream of x_0, x_1, x_2, ...
///
///     TermStream s(SeqKind::GenPell, {.k = 2, .a = 1});
///     for (const auto& v : s | std::views::take(4)) { ... }
class TermStream {
public:
    class iterator {
    public:
        using value_type = BigInt;
        using difference_type = std::ptrdiff_t;
        using iterator_concept = std::input_iterator_tag;

        iterator() = default;
        explicit iterator(TermStream* owner) : owner_(owner) {}

        const BigInt& operator*() const { return owner_->current(); }
        iterator& operator++() {
            owner_->advance();
            return *this;
        }
        void operator++(int) { owner_->advance(); }

    private:
        TermStream* owner_ = nullptr;
    };

    TermStream(SeqKind kind, const SeqParams& params);

    const BigInt& current() const { return cur_; }
    std::uint64_t index() const { return index_; }
    void advance();
    /// Returns the current term and advances.
    BigInt next();

    iterator begin() { return iterator(this); }
    std::unreachable_sentinel_t end() const { return {}; }

private:
    BigInt cur_;
    BigInt nxt_;
    BigInt k_;
    std::uint64_t index_ = 0;
};

/// G_{k,n} = (a r1^n + a r2^n) / 2 evaluated exactly in Q(sqrt(1+k)).
BigInt gen_binet(const SeqParams& params, std::uint64_t n);

/// P_{k,n} = (r1^n - r2^n) / (r1 - r2) evaluated exactly.
BigInt pell_binet(std::int64_t k, std::uint64_t n);

/// G_{k,n} = a Q_{k,n} / 2.
BigInt gen_from_lucas(const SeqParams& params, std::uint64_t n);

/// G_{k,n} = a P_{k,n} + a k P_{k,n-1}, n >= 1.
BigInt gen_from_pell(const SeqParams& params, std::uint64_t n);

/// P_{k,n+m} = k P_{k,n-1} P_{k,m} + P_{k,n} P_{k,m+1}, n, m >= 1.
BigInt pell_addition(std::int64_t k, std::uint64_t n, std::uint64_t m);

/// (P_{k,n}, P_{k,n+1}) by index doubling:
///   P_{2j}   = 2 P_j (P_{j+1} - P_j)
///   P_{2j+1} = P_{j+1}^2 + k P_j^2
std::pair<BigInt, BigInt> pell_fast(std::int64_t k, std::uint64_t n);

/// Any kind's n-th term in O(log n) from the pell_fast pair, using
/// x_n = x_1 P_{k,n} + k x_0 P_{k,n-1} (n >= 1).
BigInt term_fast(SeqKind kind, const SeqParams& params, std::uint64_t n);

/// value mod 2^64 (non-negative residue); a compact fingerprint for huge terms.
std::uint64_t digest64(const BigInt& value);

}  // namespace kpell
