#include "kpell/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "kpell/tridiagonal.hpp"

namespace kpell {

namespace {

BigInt ipow(const BigInt& base, std::uint64_t e) {
    BigInt out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    return out;
}

/// Terms x_0..x_last of one sequence.
std::vector<BigInt> terms_upto(SeqKind kind, const SeqParams& params, std::uint64_t last) {
    std::vector<BigInt> out;
    out.reserve(last + 1);
    TermStream s(kind, params);
    for (std::uint64_t i = 0; i <= last; ++i) out.push_back(s.next());
    return out;
}

std::int64_t as_i64(std::uint64_t v) { return static_cast<std::int64_t>(v); }

CheckResult exact_result(std::string name, std::map<std::string, std::int64_t> inputs, CheckValue lhs,
                         CheckValue rhs) {
    CheckResult r{std::move(name), std::move(inputs), std::move(lhs), std::move(rhs), false, std::nullopt};
    r.residual_is_zero = r.lhs == r.rhs;
    return r;
}

}  // namespace

std::string value_string(const CheckValue& v) {
    if (const auto* z = std::get_if<BigInt>(&v)) return z->get_str();
    if (const auto* q = std::get_if<QuadNum>(&v)) return q->to_string();
    const auto& c = std::get<ComplexF>(v);
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.6f%+.6fi", c.real(), c.imag());
    return buf;
}

// ---------------------------------------------------------------- quadratic identities

CheckResult check_catalan(const SeqParams& params, std::uint64_t n, std::uint64_t r) {
    params.validate();
    if (r < 1 || n < r) {
        throw std::invalid_argument("catalan needs n >= r >= 1");
    }
    const auto G = terms_upto(SeqKind::GenPell, params, n + r);
    const BigInt a = params.a;
    const BigInt neg_k = -params.k;
    BigInt lhs = G[n - r] * G[n + r] - G[n] * G[n];
    BigInt rhs = ipow(neg_k, n - r) * (G[r] * G[r] - a * a * ipow(neg_k, r));
    return exact_result("catalan", {{"a", params.a}, {"k", params.k}, {"n", as_i64(n)}, {"r", as_i64(r)}},
                        std::move(lhs), std::move(rhs));
}

CheckResult check_cassini(const SeqParams& params, std::uint64_t n) {
    params.validate();
    if (n < 1) {
        throw std::invalid_argument("cassini needs n >= 1");
    }
    const auto G = terms_upto(SeqKind::GenPell, params, n + 1);
    const BigInt a = params.a;
    const BigInt k = params.k;
    BigInt lhs = G[n - 1] * G[n + 1] - G[n] * G[n];
    BigInt rhs = a * a * ipow(BigInt(-k), n - 1) * (1 + k);
    return exact_result("cassini", {{"a", params.a}, {"k", params.k}, {"n", as_i64(n)}}, std::move(lhs),
                        std::move(rhs));
}

CheckResult check_docagne(const SeqParams& params, std::uint64_t m, std::uint64_t n) {
    params.validate();
    if (m <= n) {
        throw std::invalid_argument("d'Ocagne needs m > n");
    }
    const auto G = terms_upto(SeqKind::GenPell, params, m + 1);
    const auto [r1, r2] = quad_roots(params.k);
    const BigInt& d = r1.d();
    const BigInt a = params.a;

    const BigInt lhs_int = G[m] * G[n + 1] - G[m + 1] * G[n];
    QuadNum lhs = QuadNum::rational(lhs_int, d);

    BigInt coeff = a * ipow(BigInt(params.k), n);
    if (n % 2 == 1) coeff = -coeff;
    const QuadNum tail = QuadNum::rational(G[m - n], d) - QuadNum::rational(a, d) * pow(r1, m - n);
    QuadNum rhs = QuadNum::rational(coeff, d) * QuadNum::sqrt_of(d) * tail;

    return exact_result("docagne", {{"a", params.a}, {"k", params.k}, {"m", as_i64(m)}, {"n", as_i64(n)}},
                        std::move(lhs), std::move(rhs));
}

// ---------------------------------------------------------------- addition and matrix identities

CheckResult check_convolution1(std::int64_t k, std::uint64_t n, std::uint64_t m) {
    const SeqParams params{.k = k};
    params.validate();
    if (n < 1 || m < 1) throw std::invalid_argument("convolution needs n, m >= 1");
    const auto P = terms_upto(SeqKind::Pell, params, n + m);
    BigInt rhs = BigInt(k) * P[n - 1] * P[m] + P[n] * P[m + 1];
    return exact_result("convolution1", {{"k", k}, {"m", as_i64(m)}, {"n", as_i64(n)}}, P[n + m],
                        std::move(rhs));
}

CheckResult check_convolution2(std::int64_t k, std::uint64_t n, std::uint64_t m) {
    const SeqParams params{.k = k};
    params.validate();
    if (n < 1 || m < 1) throw std::invalid_argument("convolution needs n, m >= 1");
    const auto P = terms_upto(SeqKind::Pell, params, n + m);
    const BigInt kk = k;
    BigInt lhs = 2 * P[n + m];
    BigInt rhs = P[n + 1] * P[m + 1] - kk * kk * P[m - 1] * P[n - 1];
    return exact_result("convolution2", {{"k", k}, {"m", as_i64(m)}, {"n", as_i64(n)}}, std::move(lhs),
                        std::move(rhs));
}

std::array<CheckResult, 2> check_squares(std::int64_t k, std::uint64_t n) {
    const SeqParams params{.k = k};
    params.validate();
    if (n < 1) throw std::invalid_argument("squares needs n >= 1");
    const auto P = terms_upto(SeqKind::Pell, params, 2 * n + 1);
    const BigInt kk = k;
    const std::map<std::string, std::int64_t> inputs{{"k", k}, {"n", as_i64(n)}};
    BigInt lhs1 = P[n + 1] * P[n + 1] + kk * P[n] * P[n];
    BigInt lhs2 = P[n + 1] * P[n + 1] - kk * kk * P[n - 1] * P[n - 1];
    return {exact_result("squares1", inputs, std::move(lhs1), P[2 * n + 1]),
            exact_result("squares2", inputs, std::move(lhs2), BigInt(2 * P[2 * n]))};
}

CheckResult check_partition(const SeqParams& params, std::uint64_t n, std::uint64_t i) {
    params.validate();
    if (i < 1 || i > n) {
        throw std::invalid_argument("partition needs 1 <= i <= n");
    }
    const auto G = terms_upto(SeqKind::GenPell, params, n + 1);
    const auto P = terms_upto(SeqKind::Pell, params, n + 1);
    BigInt rhs = BigInt(params.k) * G[i] * P[n - i] + G[i + 1] * P[n + 1 - i];
    return exact_result("partition", {{"a", params.a}, {"i", as_i64(i)}, {"k", params.k}, {"n", as_i64(n)}},
                        G[n + 1], std::move(rhs));
}

std::array<CheckResult, 2> check_cofactor_dets(const SeqParams& params, std::uint64_t n) {
    params.validate();
    if (n < 2 || n > kCofactorDetMaxN) {
        throw std::invalid_argument("cofactor determinant checks need 2 <= n <= " +
                                    std::to_string(kCofactorDetMaxN));
    }
    const BigInt p_next = term(SeqKind::Pell, params, n + 1);
    const BigInt g_next = term(SeqKind::GenPell, params, n + 1);
    return {exact_result("cofactor-det-C", {{"k", params.k}, {"n", as_i64(n)}},
                         bareiss_det(cofactor_P(params.k, n)), ipow(p_next, n - 1)),
            exact_result("cofactor-det-D", {{"a", params.a}, {"k", params.k}, {"n", as_i64(n)}},
                         bareiss_det(cofactor_G(params, n)), ipow(g_next, n - 1))};
}

CheckResult check_eigen(std::int64_t k, std::uint64_t n, bool verbatim) {
    const EigenReport rep = eigen_product(k, n, verbatim);
    CheckResult r{verbatim ? "eigen-verbatim" : "eigen",
                  {{"k", k}, {"n", as_i64(n)}},
                  rep.exact,
                  rep.product,
                  rep.rounding_matches() && rep.relative_residual() < kEigenRelativeTolerance,
                  rep.abs_residual};
    return r;
}

// ---------------------------------------------------------------- sweeps

std::string_view identity_name(Identity id) {
    switch (id) {
        case Identity::Catalan: return "catalan";
        case Identity::Cassini: return "cassini";
        case Identity::DOcagne: return "docagne";
        case Identity::Convolution1: return "convolution1";
        case Identity::Convolution2: return "convolution2";
        case Identity::Squares: return "squares";
        case Identity::Partition: return "partition";
        case Identity::CofactorDets: return "cofactor-dets";
        case Identity::Eigen: return "eigen";
        case Identity::EigenVerbatim: return "eigen-verbatim";
    }
    throw std::logic_error("unknown Identity");
}

std::vector<Identity> parse_identities(std::string_view list) {
    static constexpr Identity kEvery[] = {
        Identity::Catalan,  Identity::Cassini,   Identity::DOcagne,      Identity::Convolution1,
        Identity::Convolution2, Identity::Squares, Identity::Partition, Identity::CofactorDets,
        Identity::Eigen,    Identity::EigenVerbatim,
    };
    std::vector<Identity> out;
    auto add = [&](Identity id) {
        if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
    };
    std::size_t start = 0;
    while (start <= list.size()) {
        std::size_t comma = list.find(',', start);
        if (comma == std::string_view::npos) comma = list.size();
        const std::string_view token = list.substr(start, comma - start);
        start = comma + 1;
        if (token.empty()) continue;
        if (token == "all") {
            for (Identity id : kEvery) {
                if (id != Identity::EigenVerbatim) add(id);
            }
        } else if (token == "convolution") {
            add(Identity::Convolution1);
            add(Identity::Convolution2);
        } else {
            bool found = false;
            for (Identity id : kEvery) {
                if (identity_name(id) == token) {
                    add(id);
                    found = true;
                }
            }
            if (!found) {
                throw std::invalid_argument("unknown identity '" + std::string(token) + "'");
            }
        }
    }
    return out;
}

std::size_t Report::pass() const {
    std::size_t total = 0;
    for (const auto& [_, t] : by_identity) total += t.pass;
    return total;
}

std::size_t Report::fail() const {
    std::size_t total = 0;
    for (const auto& [_, t] : by_identity) total += t.fail;
    return total;
}

namespace {

class Collector {
public:
    explicit Collector(Report& report) : report_(report) {}

    void add(CheckResult r) {
        Tally& t = report_.by_identity[r.identity];
        (r.residual_is_zero ? t.pass : t.fail) += 1;
        report_.results.push_back(std::move(r));
    }

private:
    Report& report_;
};

// Doubles represent integers exactly and rounding stays reliable below this.
const BigInt kEigenExactCap = BigInt(1) << 40;

void sweep(Identity id, const Grid& g, Collector& out) {
    const std::uint64_t N = g.n_max;
    for (std::int64_t k = 1; k <= g.k_max; ++k) {
        switch (id) {
            case Identity::Convolution1:
            case Identity::Convolution2:
                for (std::uint64_t n = 1; n <= N; ++n)
                    for (std::uint64_t m = 1; m <= N; ++m)
                        out.add(id == Identity::Convolution1 ? check_convolution1(k, n, m)
                                                             : check_convolution2(k, n, m));
                continue;
            case Identity::Squares:
                for (std::uint64_t n = 1; n <= N; ++n)
                    for (auto& r : check_squares(k, n)) out.add(std::move(r));
                continue;
            case Identity::Eigen:
            case Identity::EigenVerbatim:
                for (std::uint64_t n = 1; n <= N; ++n) {
                    if (pell_fast(k, n).second >= kEigenExactCap) break;
                    out.add(check_eigen(k, n, id == Identity::EigenVerbatim));
                }
                continue;
            default:
                break;
        }
        for (std::int64_t a = 1; a <= g.a_max; ++a) {
            const SeqParams p{.k = k, .a = a};
            switch (id) {
                case Identity::Catalan:
                    for (std::uint64_t n = 1; n <= N; ++n)
                        for (std::uint64_t r = 1; r <= n; ++r) out.add(check_catalan(p, n, r));
                    break;
                case Identity::Cassini:
                    for (std::uint64_t n = 1; n <= N; ++n) out.add(check_cassini(p, n));
                    break;
                case Identity::DOcagne:
                    for (std::uint64_t m = 1; m <= N; ++m)
                        for (std::uint64_t n = 0; n < m; ++n) out.add(check_docagne(p, m, n));
                    break;
                case Identity::Partition:
                    for (std::uint64_t n = 1; n <= N; ++n)
                        for (std::uint64_t i = 1; i <= n; ++i) out.add(check_partition(p, n, i));
                    break;
                case Identity::CofactorDets:
                    for (std::uint64_t n = 2; n <= std::min(N, kCofactorDetMaxN); ++n) {
                        auto [c, d] = check_cofactor_dets(p, n);
                        // C_n(k) does not depend on a.
                        if (a == 1) out.add(std::move(c));
                        out.add(std::move(d));
                    }
                    break;
                default:
                    break;
            }
        }
    }
}

}  // namespace

Report run_suite(const Grid& grid) {
    if (grid.k_max < 1 || grid.a_max < 1 || grid.n_max < 1) {
        throw std::invalid_argument("suite ranges must be non-empty (k_max, a_max, n_max >= 1)");
    }
    Report report;
    Collector out(report);
    for (Identity id : grid.identities) sweep(id, grid, out);
    return report;
}

// ---------------------------------------------------------------- rendering

nlohmann::json to_json(const CheckResult& r) {
    nlohmann::json j{{"identity", r.identity},
                     {"inputs", r.inputs},
                     {"lhs", value_string(r.lhs)},
                     {"rhs", value_string(r.rhs)},
                     {"residual_is_zero", r.residual_is_zero}};
    if (r.residual) j["residual"] = *r.residual;
    return j;
}

nlohmann::json to_json(const Report& report) {
    nlohmann::json by_id = nlohmann::json::object();
    for (const auto& [name, t] : report.by_identity) by_id[name] = {{"pass", t.pass}, {"fail", t.fail}};
    nlohmann::json results = nlohmann::json::array();
    for (const auto& r : report.results) results.push_back(to_json(r));
    return {{"summary", {{"pass", report.pass()}, {"fail", report.fail()}, {"by_identity", by_id}}},
            {"results", std::move(results)}};
}

std::string format_text(const Report& report) {
    std::ostringstream out;
    char line[128];
    std::snprintf(line, sizeof line, "%-16s %10s %10s\n", "identity", "pass", "fail");
    out << line;
    for (const auto& [name, t] : report.by_identity) {
        std::snprintf(line, sizeof line, "%-16s %10zu %10zu\n", name.c_str(), t.pass, t.fail);
        out << line;
    }
    std::snprintf(line, sizeof line, "%-16s %10zu %10zu\n", "total", report.pass(), report.fail());
    out << line;
    for (const auto& r : report.results) {
        if (r.residual_is_zero) continue;
        out << "FAIL " << r.identity;
        for (const auto& [key, value] : r.inputs) out << ' ' << key << '=' << value;
        out << ": lhs = " << value_string(r.lhs) << ", rhs = " << value_string(r.rhs);
        if (r.residual) out << ", residual = " << *r.residual;
        out << '\n';
    }
    return out.str();
}

}  // namespace kpell
