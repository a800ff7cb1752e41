#include <doctest.h>

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "kpell/cli.hpp"
#include "kpell/sequences.hpp"
#include "oracles.hpp"

namespace cli = kpell::cli;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

// Parsing then re-rendering must reproduce the bytes exactly.
void check_round_trip(const std::string& text) {
    CHECK(nlohmann::json::parse(text).dump(2) + "\n" == text);
}

}  // namespace

TEST_CASE("table") {
    SUBCASE("symbolic P") {
        const auto r = run({"table", "--kind", "P", "--n-max", "7", "--symbolic"});
        CHECK(r.code == cli::kOk);
        CHECK(r.out ==
              "0\t0\n1\t1\n2\t2\n3\tk + 4\n4\t4k + 8\n5\tk^2 + 12k + 16\n6\t6k^2 + 32k + 32\n"
              "7\tk^3 + 24k^2 + 80k + 64\n");
    }
    SUBCASE("numeric") {
        CHECK(run({"table", "--kind", "G", "--n-max", "2", "--k", "1", "--a", "1"}).out == "0\t1\n1\t1\n2\t3\n");
        CHECK(run({"table", "--kind", "P", "--n-max", "0", "--k", "5"}).out == "0\t0\n");
    }
    SUBCASE("json round trip") {
        const auto r = run({"table", "--kind", "G", "--n-max", "5", "--symbolic", "--format", "json"});
        CHECK(r.code == cli::kOk);
        check_round_trip(r.out);
        const auto j = nlohmann::json::parse(r.out);
        CHECK(j["rows"][4]["value"] == "k^2a + 8ka + 8a");
    }
    SUBCASE("usage errors") {
        CHECK(run({"table", "--kind", "Q", "--n-max", "3", "--symbolic"}).code == cli::kUsage);
        CHECK(run({"table", "--kind", "P", "--n-max", "3"}).code == cli::kUsage);
        CHECK(run({"table", "--kind", "P", "--n-max", "3", "--symbolic", "--k", "2"}).code == cli::kUsage);
        CHECK(run({"table", "--kind", "Z", "--n-max", "3", "--k", "2"}).code == cli::kUsage);
        CHECK(run({"table", "--n-max", "3", "--k", "2"}).code == cli::kUsage);
    }
}

TEST_CASE("eval") {
    CHECK(run({"eval", "--kind", "P", "--k", "1", "--n", "5", "--method", "binomial"}).out == "29\n");
    CHECK(run({"eval", "--kind", "G", "--k", "1", "--a", "1", "--n", "5", "--method", "double-sum"}).out == "41\n");
    CHECK(run({"eval", "--kind", "P", "--k", "2", "--n", "0", "--method", "fast"}).out == "0\n");

    const auto bad = run({"eval", "--kind", "G", "--k", "1", "--a", "1", "--n", "5", "--method", "binomial"});
    CHECK(bad.code == cli::kUsage);
    CHECK(bad.out.empty());
    CHECK_FALSE(bad.err.empty());
    CHECK(run({"eval", "--kind", "P", "--k", "0", "--n", "5"}).code == cli::kUsage);
    CHECK(run({"eval", "--kind", "P", "--k", "1", "--n", "5", "--method", "magic"}).code == cli::kUsage);

    const auto j = run({"eval", "--kind", "G", "--k", "2", "--a", "3", "--n", "40", "--format", "json"});
    check_round_trip(j.out);
    const auto parsed = nlohmann::json::parse(j.out);
    CHECK(parsed["value"] == oracle::gen(2, 3, 41)[40].get_str());
    CHECK(parsed["a"] == 3);
    CHECK_FALSE(nlohmann::json::parse(run({"eval", "--kind", "P", "--k", "2", "--n", "4", "--format", "json"}).out)
                    .contains("a"));
}

TEST_CASE("every eval method prints the same integer") {
    for (int trial = 0; trial < 40; ++trial) {
        const std::string k = std::to_string(oracle::uniform(1, 9));
        const std::string a = std::to_string(oracle::uniform(1, 6));
        const std::string n = std::to_string(oracle::uniform(3, 150));
        for (const char* kind : {"P", "Q", "q", "G"}) {
            std::vector<std::string> methods{"recurrence", "fast", "binet"};
            if (std::string(kind) == "P") methods.push_back("binomial");
            if (std::string(kind) == "G") methods.push_back("double-sum");
            std::string first;
            for (const auto& m : methods) {
                const auto r = run({"eval", "--kind", kind, "--k", k, "--a", a, "--n", n, "--method", m});
                REQUIRE(r.code == cli::kOk);
                if (first.empty()) first = r.out;
                CHECK(r.out == first);
            }
        }
    }
}

TEST_CASE("verify") {
    CHECK(run({"verify", "--identities", "cassini", "--n-max", "1"}).code == cli::kOk);
    const auto r = run({"verify", "--identities", "eigen-verbatim", "--n-max", "5"});
    CHECK(r.code == cli::kVerifiedFailure);
    CHECK(r.out.find("0.75") != std::string::npos);

    const auto j = run({"verify", "--identities", "squares,partition", "--k-max", "2", "--a-max", "2", "--n-max", "6",
                        "--format", "json"});
    CHECK(j.code == cli::kOk);
    check_round_trip(j.out);
    CHECK(nlohmann::json::parse(j.out)["summary"]["fail"] == 0);

    CHECK(run({"verify", "--identities", "nope"}).code == cli::kUsage);
    CHECK(run({"verify", "--k-max", "0"}).code == cli::kUsage);
}

TEST_CASE("matrix") {
    CHECK(run({"matrix", "--kind", "G", "--k", "1", "--a", "1", "--n", "2", "--show", "matrix"}).out == " 3   1\n-1   2\n");
    CHECK(run({"matrix", "--kind", "P", "--k", "1", "--n", "2", "--show", "inverse"}).out == " 2/5  -1/5\n 1/5   2/5\n");
    CHECK(run({"matrix", "--kind", "P", "--k", "1", "--n", "2", "--show", "cofactor"}).out == " 2   1\n-1   2\n");

    const auto j = run({"matrix", "--kind", "G", "--k", "1", "--a", "1", "--n", "2", "--format", "json"});
    check_round_trip(j.out);
    CHECK(nlohmann::json::parse(j.out)["entries"] == nlohmann::json::parse(R"([["3","1"],["-1","2"]])"));

    for (const char* show : {"matrix", "inverse", "theta-phi"})
        for (const char* kind : {"P", "Q", "q", "G"})
            CHECK(run({"matrix", "--kind", kind, "--k", "3", "--a", "2", "--n", "5", "--show", show}).code == cli::kOk);

    CHECK(run({"matrix", "--kind", "P", "--k", "1", "--n", "1", "--show", "cofactor"}).code == cli::kUsage);
    CHECK(run({"matrix", "--kind", "Q", "--k", "1", "--n", "3", "--show", "cofactor"}).code == cli::kUsage);
    CHECK(run({"matrix", "--kind", "P", "--k", "1", "--n", "0"}).code == cli::kUsage);
    CHECK(run({"matrix", "--kind", "P", "--k", "1", "--n", "2", "--show", "eigen"}).code == cli::kUsage);
}

TEST_CASE("eigen") {
    const auto ok = run({"eigen", "--k", "1", "--n", "2"});
    CHECK(ok.code == cli::kOk);
    CHECK(ok.out.find("5.000000") != std::string::npos);
    const auto bad = run({"eigen", "--k", "1", "--n", "2", "--paper-verbatim"});
    CHECK(bad.code == cli::kVerifiedFailure);
    CHECK(bad.out.find("4.250000") != std::string::npos);
    CHECK(bad.out.find("MISMATCH") != std::string::npos);
    CHECK(run({"eigen", "--k", "3", "--n", "1"}).code == cli::kOk);
    CHECK(run({"eigen", "--k", "3", "--n", "1", "--paper-verbatim"}).code == cli::kOk);
    check_round_trip(run({"eigen", "--k", "2", "--n", "6", "--format", "json"}).out);
    CHECK(run({"eigen", "--k", "1"}).code == cli::kUsage);
}

TEST_CASE("bench") {
    const auto zero = run({"bench", "--k", "1", "--n", "0", "--format", "json"});
    CHECK(nlohmann::json::parse(zero.out)["digest"][0] == 0);

    auto digests = [](const std::string& method) {
        const auto r = run({"bench", "--k", "1", "--n", "100000", "--method", method, "--format", "json"});
        REQUIRE(r.code == cli::kOk);
        return nlohmann::json::parse(r.out)["digest"];
    };
    CHECK(digests("fast") == digests("recurrence"));

    const auto rep = run({"bench", "--k", "2", "--n", "10000", "--method", "recurrence", "--repeat", "3", "--format", "json"});
    const auto j = nlohmann::json::parse(rep.out);
    REQUIRE(j["digest"].size() == 3);
    CHECK(j["digest"][0] == j["digest"][1]);
    CHECK(j["digest"][1] == j["digest"][2]);
    CHECK(j["timings_ms_nondeterministic"].size() == 3);
    CHECK(j["digest"][0] == kpell::digest64(oracle::pell(2, 10'001)[10'000]));
}

TEST_CASE("recurrence guard from the environment") {
    ::setenv("KPELL_GUARD_N", "100", 1);
    CHECK(cli::recurrence_guard_from_env() == 100);
    CHECK(run({"eval", "--kind", "P", "--k", "1", "--n", "101"}).code == cli::kUsage);
    CHECK(run({"eval", "--kind", "P", "--k", "1", "--n", "101", "--method", "fast"}).code == cli::kOk);
    CHECK(run({"bench", "--k", "1", "--n", "101", "--method", "recurrence"}).code == cli::kUsage);
    CHECK(run({"eval", "--kind", "P", "--k", "1", "--n", "100"}).code == cli::kOk);

    ::setenv("KPELL_GUARD_N", "junk", 1);
    CHECK_THROWS_AS(cli::recurrence_guard_from_env(), std::invalid_argument);
    CHECK(run({"eval", "--kind", "P", "--k", "1", "--n", "5"}).code == cli::kUsage);

    ::unsetenv("KPELL_GUARD_N");
    CHECK(cli::recurrence_guard_from_env() == kpell::kDefaultRecurrenceGuard);
}

TEST_CASE("exit-code contract under random flag noise") {
    const std::vector<std::string> junk{"--bogus", "-x", "table", "--n-max", "--k", "eval", "7", "--format", "xml"};
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<std::string> args;
        const long len = oracle::uniform(0, 5);
        for (long i = 0; i < len; ++i) args.push_back(junk[static_cast<std::size_t>(oracle::uniform(0, 8))]);
        const int code = run(args).code;
        CHECK((code == cli::kOk || code == cli::kVerifiedFailure || code == cli::kUsage));
    }
    CHECK(run({"--help"}).code == cli::kOk);
    CHECK(run({}).code == cli::kUsage);
    CHECK(run({"frobnicate"}).code == cli::kUsage);
}
