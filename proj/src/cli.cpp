#include "kpell/cli.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "kpell/closed_forms.hpp"
#include "kpell/sequences.hpp"
#include "kpell/tridiagonal.hpp"
#include "kpell/verify.hpp"

namespace kpell::cli {

namespace {

using nlohmann::json;

// Raised for flag combinations CLI11 cannot express on its own.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr std::uint64_t kFastCrossCheckLimit = 100'000;

void emit_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

json term_json(SeqKind kind, const SeqParams& p, std::uint64_t n, const std::string& value) {
    json j{{"kind", kind_tag(kind)}, {"k", p.k}, {"n", n}, {"value", value}};
    if (kind == SeqKind::GenPell) j["a"] = p.a;
    return j;
}

// Flags shared by several subcommands.
struct Common {
    std::string kind = "P";
    std::int64_t k = 1;
    std::int64_t a = 1;
    std::string format = "text";

    SeqKind seq_kind() const { return kind_from_tag(kind); }
    SeqParams params() const { return SeqParams{.k = k, .a = a}; }
    bool json() const { return format == "json"; }
};

void add_kind(CLI::App* cmd, Common& c, bool required) {
    auto* opt = cmd->add_option("--kind", c.kind, "Sequence: P, Q, q or G")
                    ->check(CLI::IsMember({"P", "Q", "q", "G"}));
    if (required) opt->required();
}

void add_params(CLI::App* cmd, Common& c) {
    cmd->add_option("--k", c.k, "Recurrence parameter k >= 1")
        ->check(CLI::Range(std::int64_t{1}, std::numeric_limits<std::int64_t>::max()));
    cmd->add_option("--a", c.a, "Initial value a >= 1 of G")
        ->check(CLI::Range(std::int64_t{1}, std::numeric_limits<std::int64_t>::max()));
}

void add_format(CLI::App* cmd, Common& c) {
    cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json"}));
}

// ---------------------------------------------------------------- table

int cmd_table(const Common& c, std::uint64_t n_max, bool symbolic, bool k_given, std::ostream& out) {
    const SeqKind kind = c.seq_kind();
    if (symbolic == k_given) {
        throw UsageError("table needs exactly one of --symbolic or --k");
    }
    if (symbolic && kind != SeqKind::Pell && kind != SeqKind::GenPell) {
        throw UsageError("--symbolic is available for P and G only");
    }
    const SeqParams p = c.params();
    std::vector<std::pair<std::uint64_t, std::string>> rows;
    if (symbolic) {
        const std::string factor = kind == SeqKind::GenPell ? "a" : "";
        for (std::uint64_t n = 0; n <= n_max; ++n) {
            rows.emplace_back(n, symbolic_term(kind, n).to_string(factor));
        }
    } else {
        TermStream s(kind, p);
        for (std::uint64_t n = 0; n <= n_max; ++n) rows.emplace_back(n, s.next().get_str());
    }

    if (c.json()) {
        json j{{"kind", kind_tag(kind)}, {"symbolic", symbolic}, {"rows", json::array()}};
        for (const auto& [n, value] : rows) {
            j["rows"].push_back(symbolic ? json{{"kind", kind_tag(kind)}, {"n", n}, {"value", value}}
                                         : term_json(kind, p, n, value));
        }
        if (!symbolic) {
            j["k"] = p.k;
            if (kind == SeqKind::GenPell) j["a"] = p.a;
        }
        emit_json(out, j);
    } else {
        for (const auto& [n, value] : rows) out << n << '\t' << value << '\n';
    }
    return kOk;
}

// ---------------------------------------------------------------- eval

BigInt eval_method(const std::string& method, SeqKind kind, const SeqParams& p, std::uint64_t n,
                   std::uint64_t guard) {
    if (method == "recurrence") {
        if (n > guard) throw UsageError("n exceeds the recurrence guard (set KPELL_GUARD_N to raise it)");
        return term(kind, p, n, guard);
    }
    if (method == "fast") return term_fast(kind, p, n);
    if (method == "binet") {
        switch (kind) {
            case SeqKind::Pell: return pell_binet(p.k, n);
            case SeqKind::PellLucas: return gen_binet({.k = p.k, .a = 2}, n);
            case SeqKind::ModifiedPell: return gen_binet({.k = p.k, .a = 1}, n);
            case SeqKind::GenPell: return gen_binet(p, n);
        }
    }
    if (method == "binomial") {
        if (kind != SeqKind::Pell) throw UsageError("method binomial applies to P only");
        if (n < 3) throw UsageError("method binomial covers P_n for n >= 3");
        return pell_binomial(p.k, n - 1);
    }
    if (method == "double-sum") {
        if (kind != SeqKind::GenPell) throw UsageError("method double-sum applies to G only");
        if (n < 2) throw UsageError("method double-sum covers G_n for n >= 2");
        return gen_double_sum(p, n - 1);
    }
    throw UsageError("unknown method " + method);
}

int cmd_eval(const Common& c, std::uint64_t n, const std::string& method, std::uint64_t guard,
             std::ostream& out, std::ostream& err) {
    const SeqKind kind = c.seq_kind();
    const SeqParams p = c.params();
    const BigInt value = eval_method(method, kind, p, n, guard);

    std::optional<BigInt> reference;
    if (method != "fast") {
        reference = term_fast(kind, p, n);
    } else if (n <= std::min(kFastCrossCheckLimit, guard)) {
        reference = term(kind, p, n, guard);
    }
    if (reference && *reference != value) {
        err << "cross-check failed: " << method << " gave " << value.get_str() << ", reference gave "
            << reference->get_str() << '\n';
        return kVerifiedFailure;
    }

    if (c.json()) {
        emit_json(out, term_json(kind, p, n, value.get_str()));
    } else {
        out << value.get_str() << '\n';
    }
    return kOk;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const Common& c, const std::string& identities, const Grid& base, std::ostream& out) {
    Grid grid = base;
    try {
        grid.identities = parse_identities(identities);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const Report report = run_suite(grid);
    if (c.json()) {
        emit_json(out, to_json(report));
    } else {
        out << format_text(report);
    }
    return report.all_pass() ? kOk : kVerifiedFailure;
}

// ---------------------------------------------------------------- matrix

json sequence_json(const std::vector<Rational>& values) {
    json arr = json::array();
    for (const auto& v : values) arr.push_back(v.get_str());
    return arr;
}

int cmd_matrix(const Common& c, std::size_t n, const std::string& show, std::ostream& out,
               std::ostream& err) {
    const SeqKind kind = c.seq_kind();
    const SeqParams p = c.params();
    const Tridiag t = gen_matrix(kind, p, n);

    auto render = [&](const auto& m) {
        if (c.json()) {
            emit_json(out, matrix_json(m));
        } else {
            out << format_grid(m);
        }
    };

    if (show == "matrix") {
        render(t.dense_integer());
    } else if (show == "inverse") {
        const RationalMatrix inv = usmani_inverse(t);
        std::optional<RationalMatrix> closed;
        if (kind == SeqKind::Pell) closed = inverse_closed_P(p.k, n);
        if (kind == SeqKind::GenPell) closed = inverse_closed_G(p, n);
        if (closed && *closed != inv) {
            err << "closed-form inverse disagrees with Usmani's formula\n";
            return kVerifiedFailure;
        }
        render(inv);
    } else if (show == "cofactor") {
        if (n < 2) throw UsageError("--show cofactor needs n >= 2");
        if (kind == SeqKind::Pell) {
            render(cofactor_P(p.k, n));
        } else if (kind == SeqKind::GenPell) {
            render(cofactor_G(p, n));
        } else {
            throw UsageError("--show cofactor is available for P and G only");
        }
    } else {  // theta-phi
        const ThetaPhi tp = theta_phi(t);
        if (c.json()) {
            emit_json(out, json{{"n", n}, {"theta", sequence_json(tp.theta_values)},
                                {"phi", sequence_json(tp.phi_values)}});
        } else {
            out << "theta_0..theta_" << n << ':';
            for (const auto& v : tp.theta_values) out << ' ' << v.get_str();
            out << "\nphi_1..phi_" << n + 1 << ':';
            for (const auto& v : tp.phi_values) out << ' ' << v.get_str();
            out << '\n';
        }
    }
    return kOk;
}

// ---------------------------------------------------------------- eigen

int cmd_eigen(const Common& c, std::uint64_t n, bool verbatim, std::ostream& out) {
    const EigenReport rep = eigen_product(c.k, n, verbatim);
    char product[96];
    std::snprintf(product, sizeof product, "%.6f%+.6fi", rep.product.real(), rep.product.imag());
    const char* formula = rep.used_corrected_formula ? "corrected" : "verbatim";
    if (c.json()) {
        emit_json(out, json{{"k", c.k},
                            {"n", n},
                            {"formula", formula},
                            {"product", {{"re", rep.product.real()}, {"im", rep.product.imag()}}},
                            {"rounded", rep.rounded.get_str()},
                            {"exact", rep.exact.get_str()},
                            {"abs_residual", rep.abs_residual},
                            {"relative_residual", rep.relative_residual()},
                            {"match", rep.rounding_matches()}});
    } else {
        out << "formula   " << formula << '\n'
            << "product   " << product << '\n'
            << "rounded   " << rep.rounded.get_str() << '\n'
            << "exact     " << rep.exact.get_str() << '\n'
            << "residual  " << rep.abs_residual << '\n'
            << (rep.rounding_matches() ? "match\n" : "MISMATCH\n");
    }
    return rep.rounding_matches() ? kOk : kVerifiedFailure;
}

// ---------------------------------------------------------------- bench

int cmd_bench(const Common& c, std::uint64_t n, const std::string& method, int repeat, std::uint64_t guard,
              std::ostream& out) {
    if (method == "recurrence" && n > guard) {
        throw UsageError("n exceeds the recurrence guard (set KPELL_GUARD_N to raise it)");
    }
    const SeqParams p{.k = c.k};
    p.validate();
    std::vector<double> timings;
    std::vector<std::uint64_t> digests;
    for (int r = 0; r < repeat; ++r) {
        const auto start = std::chrono::steady_clock::now();
        const BigInt value = method == "fast" ? pell_fast(p.k, n).first : term(SeqKind::Pell, p, n, guard);
        const auto stop = std::chrono::steady_clock::now();
        timings.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
        digests.push_back(digest64(value));
    }
    if (c.json()) {
        emit_json(out, json{{"k", p.k},
                            {"n", n},
                            {"method", method},
                            {"digest", digests},
                            {"timings_ms_nondeterministic", timings}});
    } else {
        for (int r = 0; r < repeat; ++r) {
            char line[160];
            std::snprintf(line, sizeof line, "run %d: %.3f ms  digest %llu\n", r + 1, timings[r],
                          static_cast<unsigned long long>(digests[r]));
            out << line;
        }
    }
    return kOk;
}

}  // namespace

std::uint64_t recurrence_guard_from_env() {
    const char* raw = std::getenv("KPELL_GUARD_N");
    if (raw == nullptr || *raw == '\0') return kDefaultRecurrenceGuard;
    char* end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(raw, &end, 10);
    if (errno != 0 || *end != '\0' || v == 0 || raw[0] == '-') {
        throw std::invalid_argument(std::string("KPELL_GUARD_N must be a positive integer, got '") + raw + "'");
    }
    return v;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact k-Pell sequence toolkit", "kpell"};
    app.require_subcommand(1);

    Common table_c, eval_c, verify_c, matrix_c, eigen_c, bench_c;

    auto* table = app.add_subcommand("table", "Print terms n = 0..N, numerically or as polynomials in k");
    std::uint64_t table_n_max = 0;
    bool table_symbolic = false;
    add_kind(table, table_c, true);
    table->add_option("--n-max", table_n_max, "Last index")->required();
    table->add_flag("--symbolic", table_symbolic, "Polynomials in k (G carries the factor a)");
    add_params(table, table_c);
    add_format(table, table_c);

    auto* eval = app.add_subcommand("eval", "Evaluate one term");
    std::uint64_t eval_n = 0;
    std::string eval_method_name = "recurrence";
    add_kind(eval, eval_c, true);
    add_params(eval, eval_c);
    eval->add_option("--n", eval_n, "Index")->required();
    eval->add_option("--method", eval_method_name, "Evaluation route")
        ->check(CLI::IsMember({"recurrence", "binet", "binomial", "double-sum", "fast"}));
    add_format(eval, eval_c);

    auto* verify = app.add_subcommand("verify", "Sweep identities over a parameter grid");
    std::string identities = "all";
    Grid grid;
    verify->add_option("--identities", identities, "Comma-separated identities, or all");
    verify->add_option("--k-max", grid.k_max, "Largest k")->check(CLI::PositiveNumber);
    verify->add_option("--a-max", grid.a_max, "Largest a")->check(CLI::PositiveNumber);
    verify->add_option("--n-max", grid.n_max, "Largest n")->check(CLI::PositiveNumber);
    add_format(verify, verify_c);

    auto* matrix = app.add_subcommand("matrix", "Show a generating matrix and derived objects");
    std::size_t matrix_n = 1;
    std::string show = "matrix";
    add_kind(matrix, matrix_c, true);
    add_params(matrix, matrix_c);
    matrix->add_option("--n", matrix_n, "Dimension")->required()->check(CLI::PositiveNumber);
    matrix->add_option("--show", show, "Object to print")
        ->check(CLI::IsMember({"matrix", "inverse", "cofactor", "theta-phi"}));
    add_format(matrix, matrix_c);

    auto* eigen = app.add_subcommand("eigen", "Eigenvalue product of P_n(k) against P_{k,n+1}");
    std::uint64_t eigen_n = 1;
    bool verbatim = false;
    eigen->add_option("--k", eigen_c.k, "Recurrence parameter k >= 1")->check(CLI::PositiveNumber);
    eigen->add_option("--n", eigen_n, "Dimension")->required()->check(CLI::PositiveNumber);
    eigen->add_flag("--paper-verbatim", verbatim, "Use the factor-1 eigenvalue formula");
    add_format(eigen, eigen_c);

    auto* bench = app.add_subcommand("bench", "Time P_{k,n}; prints value mod 2^64 as a digest");
    std::uint64_t bench_n = 0;
    std::string bench_method = "fast";
    int repeat = 1;
    bench->add_option("--k", bench_c.k, "Recurrence parameter k >= 1")->check(CLI::PositiveNumber);
    bench->add_option("--n", bench_n, "Index")->required();
    bench->add_option("--method", bench_method, "recurrence or fast")
        ->check(CLI::IsMember({"recurrence", "fast"}));
    bench->add_option("--repeat", repeat, "Number of timed runs")->check(CLI::PositiveNumber);
    add_format(bench, bench_c);

    std::vector<const char*> argv{"kpell"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kUsage;
    }

    try {
        const std::uint64_t guard = recurrence_guard_from_env();
        if (*table) {
            return cmd_table(table_c, table_n_max, table_symbolic, table->count("--k") > 0, out);
        }
        if (*eval) return cmd_eval(eval_c, eval_n, eval_method_name, guard, out, err);
        if (*verify) return cmd_verify(verify_c, identities, grid, out);
        if (*matrix) return cmd_matrix(matrix_c, matrix_n, show, out, err);
        if (*eigen) return cmd_eigen(eigen_c, eigen_n, verbatim, out);
        if (*bench) return cmd_bench(bench_c, bench_n, bench_method, repeat, guard, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::length_error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace kpell::cli
