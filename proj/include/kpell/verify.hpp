#pragma once

// Identity checks that return both sides instead of asserting, and grid
// sweeps that collect them into a report.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "kpell/closed_forms.hpp"
#include "kpell/exact_arith.hpp"
#include "kpell/sequences.hpp"

namespace kpell {

using CheckValue = std::variant<BigInt, QuadNum, ComplexF>;

std::string value_string(const CheckValue& v);

struct CheckResult {
    std::string identity;
    std::map<std::string, std::int64_t> inputs;
    CheckValue lhs;
    CheckValue rhs;
    // Exact checks: lhs == rhs.  Eigenvalue checks: the rounded product
    // equals the exact term and the relative residual is below
    // kEigenRelativeTolerance.
    bool residual_is_zero = false;
    // |lhs - rhs| for the floating-point eigenvalue checks only.
    std::optional<double> residual;
};

inline constexpr double kEigenRelativeTolerance = 1e-9;

/// G_{n-r} G_{n+r} - G_n^2 = (-k)^(n-r) (G_r^2 - a^2 (-k)^r), n >= r >= 1.
CheckResult check_catalan(const SeqParams& params, std::uint64_t n, std::uint64_t r);
/// G_{n-1} G_{n+1} - G_n^2 = a^2 (-k)^(n-1) (1+k), n >= 1.
CheckResult check_cassini(const SeqParams& params, std::uint64_t n);
/// G_m G_{n+1} - G_{m+1} G_n = a (-1)^n k^n sqrt(1+k) (G_{m-n} - a r1^(m-n)),
/// m > n >= 0, both sides in Q(sqrt(1+k)).
CheckResult check_docagne(const SeqParams& params, std::uint64_t m, std::uint64_t n);
/// P_{n+m} = k P_{n-1} P_m + P_n P_{m+1}, n, m >= 1.
CheckResult check_convolution1(std::int64_t k, std::uint64_t n, std::uint64_t m);
/// 2 P_{n+m} = P_{n+1} P_{m+1} - k^2 P_{m-1} P_{n-1}, n, m >= 1.
CheckResult check_convolution2(std::int64_t k, std::uint64_t n, std::uint64_t m);
/// {P_{n+1}^2 + k P_n^2 = P_{2n+1},  P_{n+1}^2 - k^2 P_{n-1}^2 = 2 P_{2n}}, n >= 1.
std::array<CheckResult, 2> check_squares(std::int64_t k, std::uint64_t n);
/// G_{n+1} = k G_i P_{n-i} + G_{i+1} P_{n+1-i}, 1 <= i <= n.
CheckResult check_partition(const SeqParams& params, std::uint64_t n, std::uint64_t i);
/// {|C_n(k)| = P_{k,n+1}^(n-1),  |D_n(k)| = G_{k,n+1}^(n-1)} by Bareiss, 2 <= n <= 8.
std::array<CheckResult, 2> check_cofactor_dets(const SeqParams& params, std::uint64_t n);
/// Eigenvalue product of P_n(k) against P_{k,n+1}.
CheckResult check_eigen(std::int64_t k, std::uint64_t n, bool verbatim);

/// Selectable identity groups.
enum class Identity {
    Catalan,
    Cassini,
    DOcagne,
    Convolution1,
    Convolution2,
    Squares,
    Partition,
    CofactorDets,
    Eigen,
    EigenVerbatim,
};

std::string_view identity_name(Identity id);
/// Parses one selector name; "convolution" expands to both parts and "all"
/// to every identity except eigen-verbatim.  Throws std::invalid_argument.
std::vector<Identity> parse_identities(std::string_view list);

/// Largest n for cofactor determinant sweeps (bignum growth guard).
inline constexpr std::uint64_t kCofactorDetMaxN = 8;

struct Grid {
    std::int64_t k_max = 5;
    std::int64_t a_max = 3;
    std::uint64_t n_max = 30;
    std::vector<Identity> identities;
};

struct Tally {
    std::size_t pass = 0;
    std::size_t fail = 0;
};

struct Report {
    std::vector<CheckResult> results;
    std::map<std::string, Tally> by_identity;

    std::size_t pass() const;
    std::size_t fail() const;
    bool all_pass() const { return fail() == 0; }
};

/// Runs every selected check over k = 1..k_max, a = 1..a_max and the index
/// ranges each identity admits up to n_max, in deterministic grid order.
/// Eigenvalue checks are restricted to tuples with P_{k,n+1} < 2^40.
/// Throws std::invalid_argument on an empty range.
Report run_suite(const Grid& grid);

nlohmann::json to_json(const CheckResult& r);
/// {"summary": {"pass", "fail", "by_identity"}, "results": [...]}.
nlohmann::json to_json(const Report& report);
/// Per-identity pass/fail table followed by one line per failure.
std::string format_text(const Report& report);

}  // namespace kpell
