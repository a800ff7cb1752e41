// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any
// failure.  Each criterion has a wall-clock budget that counts as part of
// the verdict.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "kpell/cli.hpp"
#include "kpell/closed_forms.hpp"
#include "kpell/exact_arith.hpp"
#include "kpell/sequences.hpp"
#include "kpell/tridiagonal.hpp"
#include "kpell/verify.hpp"
#include "oracles.hpp"

using namespace kpell;

namespace {

constexpr SeqKind kAllKinds[] = {SeqKind::Pell, SeqKind::PellLucas, SeqKind::ModifiedPell, SeqKind::GenPell};

// Collects mismatches; the first few are echoed for diagnosis.
struct Ledger {
    std::size_t checks = 0;
    std::size_t failures = 0;
    std::vector<std::string> notes;

    void expect(bool ok, const std::string& what) {
        ++checks;
        if (ok) return;
        ++failures;
        if (notes.size() < 5) notes.push_back(what);
    }
};

struct Criterion {
    const char* id;
    const char* title;
    double budget_s;
    std::function<void(Ledger&)> body;
};

std::string tag(const char* name, std::int64_t k, std::int64_t a, std::uint64_t n) {
    return std::string(name) + " k=" + std::to_string(k) + " a=" + std::to_string(a) + " n=" + std::to_string(n);
}

oracle::IntGrid to_grid(const IntMatrix& m) {
    oracle::IntGrid g(m.size(), std::vector<oracle::Int>(m.size()));
    for (std::size_t i = 1; i <= m.size(); ++i)
        for (std::size_t j = 1; j <= m.size(); ++j) g[i - 1][j - 1] = m(i, j);
    return g;
}

// ---------------------------------------------------------------------------

void ac1_symbolic_table(Ledger& L) {
    const char* p_golden =
        "0\t0\n1\t1\n2\t2\n3\tk + 4\n4\t4k + 8\n5\tk^2 + 12k + 16\n6\t6k^2 + 32k + 32\n7\tk^3 + 24k^2 + 80k + 64\n";
    const char* g_golden =
        "0\ta\n1\ta\n2\tka + 2a\n3\t3ka + 4a\n4\tk^2a + 8ka + 8a\n5\t5k^2a + 20ka + 16a\n"
        "6\tk^3a + 18k^2a + 48ka + 32a\n7\t7k^3a + 56k^2a + 112ka + 64a\n";
    for (auto [kind, golden] : {std::pair{"P", p_golden}, std::pair{"G", g_golden}}) {
        std::ostringstream out, err;
        const int code = cli::run({"table", "--kind", kind, "--n-max", "7", "--symbolic"}, out, err);
        L.expect(code == cli::kOk, std::string("exit code for ") + kind);
        L.expect(out.str() == golden, std::string("golden mismatch for ") + kind);
    }
}

void ac2_determinants(Ledger& L) {
    for (SeqKind kind : kAllKinds) {
        for (std::int64_t k = 1; k <= 8; ++k) {
            for (std::int64_t a = 1; a <= 5; ++a) {
                if (kind != SeqKind::GenPell && a > 1) continue;  // a only enters G
                const SeqParams p{.k = k, .a = a};
                const auto [x0, x1] = initial_terms(kind, p);
                const auto ref = oracle::recurrence(x0.get_si(), x1.get_si(), k, 102);
                for (std::uint64_t n = 1; n <= 100; ++n) {
                    const Rational det = det_continuant(gen_matrix(kind, p, n));
                    L.expect(det == Rational(ref[n + 1]) && det == Rational(term(kind, p, n + 1)),
                             tag(std::string(kind_tag(kind)).c_str(), k, a, n));
                }
            }
        }
    }
}

void ac3_identities(Ledger& L) {
    const Grid g{.k_max = 5,
                 .a_max = 3,
                 .n_max = 30,
                 .identities = parse_identities("catalan,cassini,docagne,convolution,squares,partition")};
    const Report rep = run_suite(g);
    for (const auto& r : rep.results) L.expect(r.residual_is_zero, r.identity + " " + to_json(r)["inputs"].dump());
    // Every selected identity must actually have run, perfect-square k included.
    for (const char* id : {"catalan", "cassini", "docagne", "convolution1", "convolution2", "squares1", "squares2",
                           "partition"})
        L.expect(rep.by_identity.count(id) == 1 && rep.by_identity.at(id).pass > 0, std::string("no runs for ") + id);
    bool saw_k3 = false;
    for (const auto& r : rep.results)
        if (r.identity == "docagne" && r.inputs.at("k") == 3) saw_k3 = true;
    L.expect(saw_k3, "d'Ocagne missing perfect-square k=3");
    // k = 8 lies outside the grid; its surd folds as well (sqrt 9 = 3).
    for (std::int64_t a = 1; a <= 3; ++a)
        for (std::uint64_t m = 1; m <= 30; ++m)
            for (std::uint64_t n = 0; n < m; ++n)
                L.expect(check_docagne({.k = 8, .a = a}, m, n).residual_is_zero, tag("docagne", 8, a, n));
}

void ac4_closed_forms(Ledger& L) {
    for (std::int64_t k = 1; k <= 8; ++k) {
        const auto P = oracle::pell(k, 202);
        for (std::uint64_t n = 2; n <= 200; ++n) L.expect(pell_binomial(k, n) == P[n + 1], tag("binomial", k, 1, n));
        for (std::int64_t a = 1; a <= 5; ++a) {
            const auto G = oracle::gen(k, a, 202);
            for (std::uint64_t n = 1; n <= 200; ++n)
                L.expect(gen_double_sum({.k = k, .a = a}, n) == G[n + 1], tag("double-sum", k, a, n));
        }
    }
}

void ac5_usmani(Ledger& L) {
    for (std::int64_t k = 1; k <= 5; ++k) {
        for (std::int64_t a = 1; a <= 3; ++a) {
            const SeqParams p{.k = k, .a = a};
            for (std::size_t n = 1; n <= 30; ++n) {
                for (SeqKind kind : kAllKinds) {
                    if (kind != SeqKind::GenPell && a > 1) continue;
                    const Tridiag t = gen_matrix(kind, p, n);
                    const RationalMatrix inv = usmani_inverse(t);
                    L.expect(t.dense() * inv == RationalMatrix::identity(n), tag("T*inv", k, a, n));
                    if (kind == SeqKind::Pell) L.expect(inverse_closed_P(k, n) == inv, tag("closed P", k, a, n));
                    if (kind == SeqKind::GenPell) L.expect(inverse_closed_G(p, n) == inv, tag("closed G", k, a, n));
                }
            }
            for (std::size_t n = 2; n <= 7; ++n) {
                const auto check_minors = [&](const IntMatrix& cof, const IntMatrix& m, const char* name) {
                    for (std::size_t i = 1; i <= n; ++i)
                        for (std::size_t j = 1; j <= n; ++j) {
                            BigInt minor = oracle::leibniz_det(to_grid(submatrix(m, i, j)));
                            if ((i + j) % 2 == 1) minor = -minor;
                            L.expect(cof(i, j) == minor, tag(name, k, a, n));
                        }
                };
                if (a == 1) check_minors(cofactor_P(k, n), gen_matrix(SeqKind::Pell, p, n).dense_integer(), "C_n");
                check_minors(cofactor_G(p, n), gen_matrix(SeqKind::GenPell, p, n).dense_integer(), "D_n");
            }
            for (std::uint64_t n = 2; n <= 8; ++n) {
                const auto [c, d] = check_cofactor_dets(p, n);
                L.expect(c.residual_is_zero, tag("|C_n|", k, a, n));
                L.expect(d.residual_is_zero, tag("|D_n|", k, a, n));
            }
        }
    }
}

void ac6_eigen(Ledger& L) {
    for (std::int64_t k = 1; k <= 5; ++k) {
        for (std::uint64_t n = 1; n <= 20; ++n) {
            const EigenReport r = eigen_product(k, n);
            L.expect(r.rounding_matches() && r.relative_residual() < 1e-9, tag("eigen", k, 1, n));
        }
    }
    const EigenReport verbatim = eigen_product(1, 2, true);
    L.expect(std::abs(verbatim.product.real() - 4.25) < 1e-12 && verbatim.exact == 5 && !verbatim.rounding_matches(),
             "verbatim formula at k=1 n=2 should give 4.25 against 5");
}

void ac7_performance(Ledger& L) {
    const auto start = std::chrono::steady_clock::now();
    const auto [big, next] = pell_fast(1, 1'000'000);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    L.expect(secs < 5.0, "pell_fast n=1e6 took " + std::to_string(secs) + " s");
    // P_n ~ (1+sqrt2)^n / (2 sqrt2): the bit length pins the magnitude.
    const double expected_bits = 1'000'000 * std::log2(1 + std::sqrt(2.0)) - std::log2(2 * std::sqrt(2.0));
    L.expect(std::abs(static_cast<double>(mpz_sizeinbase(big.get_mpz_t(), 2)) - expected_bits) < 2.0,
             "P_1e6 bit length");
    L.expect(next * next - 2 * next * big - big * big == (1'000'000 % 2 == 0 ? 1 : -1), "Cassini at n=1e6");

    const std::uint64_t fast = digest64(pell_fast(1, 10'000).first);
    const std::uint64_t slow = digest64(term(SeqKind::Pell, {.k = 1}, 10'000));
    L.expect(fast == slow, "digest mismatch at n=1e4");
    L.expect(pell_fast(1, 10'000).first == oracle::pell(1, 10'001)[10'000], "exact value at n=1e4");
}

void ac8_properties(Ledger& L) {
    // Field axioms and canonical form on random elements of Q(sqrt d).
    auto frac = [] { return make_rational(oracle::uniform(-40, 40), oracle::uniform(1, 9)); };
    for (int t = 0; t < 300; ++t) {
        const BigInt d = oracle::uniform(1, 50);
        const QuadNum x(frac(), frac(), d), y(frac(), frac(), d), z(frac(), frac(), d);
        L.expect(x + y == y + x && x * y == y * x, "commutativity");
        L.expect((x + y) + z == x + (y + z) && (x * y) * z == x * (y * z), "associativity");
        L.expect(x * (y + z) == x * y + x * z, "distributivity");
        L.expect(x + QuadNum::rational(0, d) == x && x * QuadNum::rational(1, d) == x, "identities");
        L.expect((x + -x).is_zero(), "additive inverse");
        if (!x.is_zero()) L.expect(x * (QuadNum::rational(1, d) / x) == QuadNum::rational(1, d), "multiplicative inverse");
        const bool square = integer_sqrt(d).second;
        for (const QuadNum& v : {x * y, x - z})
            L.expect(v.p().get_den() > 0 && v.q().get_den() > 0 && (!square || v.q() == 0), "canonical form");
    }

    // Method agreement on random (kind, k, a, n).
    for (int t = 0; t < 300; ++t) {
        const SeqKind kind = kAllKinds[oracle::uniform(0, 3)];
        const SeqParams p{.k = oracle::uniform(1, 12), .a = oracle::uniform(1, 9)};
        const auto n = static_cast<std::uint64_t>(oracle::uniform(0, 400));
        const BigInt ref = term(kind, p, n);
        L.expect(term_fast(kind, p, n) == ref, tag("term_fast", p.k, p.a, n));
        if (kind == SeqKind::Pell) {
            L.expect(pell_binet(p.k, n) == ref, tag("pell_binet", p.k, p.a, n));
            if (n >= 3) L.expect(pell_binomial(p.k, n - 1) == ref, tag("pell_binomial", p.k, p.a, n));
            if (n >= 2) L.expect(pell_addition(p.k, n / 2, n - n / 2) == ref, tag("addition", p.k, p.a, n));
        }
        if (kind == SeqKind::GenPell) {
            L.expect(gen_binet(p, n) == ref && gen_from_lucas(p, n) == ref, tag("gen_binet", p.k, p.a, n));
            if (n >= 1) L.expect(gen_from_pell(p, n) == ref, tag("gen_from_pell", p.k, p.a, n));
            if (n >= 2) L.expect(gen_double_sum(p, n - 1) == ref, tag("double_sum", p.k, p.a, n));
        }
    }

    // Exit-code contract on random valid and invalid invocations.
    const char* kinds[] = {"P", "Q", "q", "G", "X"};
    for (int t = 0; t < 100; ++t) {
        const std::string kind = kinds[oracle::uniform(0, 4)];
        const std::string k = std::to_string(oracle::uniform(0, 6));
        const std::string n = std::to_string(oracle::uniform(0, 60));
        std::ostringstream out, err;
        const int code = cli::run({"eval", "--kind", kind, "--k", k, "--n", n}, out, err);
        const bool valid = kind != "X" && k != "0";
        L.expect(code == (valid ? cli::kOk : cli::kUsage), "eval exit code for kind=" + kind + " k=" + k);
        L.expect(valid ? err.str().empty() : out.str().empty(), "stream discipline for kind=" + kind + " k=" + k);
    }
    for (int t = 0; t < 20; ++t) {
        const std::string k = std::to_string(oracle::uniform(1, 5));
        const std::string n = std::to_string(oracle::uniform(2, 10));
        std::ostringstream out, err;
        L.expect(cli::run({"eigen", "--k", k, "--n", n}, out, err) == cli::kOk, "eigen exit 0");
        L.expect(cli::run({"eigen", "--k", k, "--n", n, "--paper-verbatim"}, out, err) == cli::kVerifiedFailure,
                 "verbatim eigen exit 1");
    }
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"AC1", "symbolic table golden strings", 1.0, ac1_symbolic_table},
        {"AC2", "continuant determinant equals next term", 10.0, ac2_determinants},
        {"AC3", "identity suite exact over k<=5 a<=3 n<=30", 30.0, ac3_identities},
        {"AC4", "binomial and double-sum closed forms", 10.0, ac4_closed_forms},
        {"AC5", "Usmani inverse, closed inverses, cofactors", 60.0, ac5_usmani},
        {"AC6", "eigenvalue product and verbatim discrepancy", 1.0, ac6_eigen},
        {"AC7", "pell_fast at n=1e6 and digest cross-check", 5.0, ac7_performance},
        {"AC8", "fixed-seed property tests", 60.0, ac8_properties},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        Ledger L;
        std::string crash;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.body(L);
        } catch (const std::exception& e) {
            crash = e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_budget = secs < c.budget_s;
        const bool ok = crash.empty() && L.failures == 0 && L.checks > 0 && in_budget;
        if (!ok) ++failed;
        std::printf("[%s] %s %s: %zu checks, %zu failures, %.3f s (budget %.0f s)\n", ok ? "PASS" : "FAIL", c.id,
                    c.title, L.checks, L.failures, secs, c.budget_s);
        if (!crash.empty()) std::printf("    exception: %s\n", crash.c_str());
        if (!in_budget) std::printf("    over budget\n");
        for (const auto& note : L.notes) std::printf("    %s\n", note.c_str());
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
