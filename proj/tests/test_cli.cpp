#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "tseq/cli.hpp"

using namespace tseq;
using namespace tseq::cli;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("/tmp/tseq_test_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("finvec text parsing") {
    CHECK(parse_finvec("3e0-2e7").str() == "3e0-2e7");
    CHECK(parse_finvec("e1+e1").str() == "2e1");
    CHECK(parse_finvec("e2-e2").is_zero());
    CHECK(parse_finvec("0").is_zero());
    CHECK(parse_finvec(" e3 + e5 ").str() == "e3+e5");
    CHECK(parse_finvec("-e2").at(2) == -1);

    CHECK_THROWS_WITH(parse_finvec("3x0"), doctest::Contains("position 1"));
    CHECK_THROWS_WITH(parse_finvec("e1+"), doctest::Contains("expected"));
    CHECK_THROWS_WITH(parse_finvec("e1 e2"), doctest::Contains("position"));
    CHECK_THROWS_AS(parse_finvec(""), std::invalid_argument);
}

TEST_CASE("finvec json round-trip") {
    FinVec v = parse_finvec("3e0-2e7");
    auto j = v.to_json();
    CHECK(j.dump() == R"([[0,"3"],[7,"-2"]])");
    CHECK(FinVec::from_json(j) == v);
}

TEST_CASE("fraction parsing") {
    CHECK(cli::parse_fraction("3/2") == Rat(3, 2));
    CHECK(cli::parse_fraction("-7") == Rat(-7));
    CHECK(cli::parse_fraction("4/6") == Rat(2, 3));  // canonicalized
    CHECK_THROWS_AS(cli::parse_fraction("3/0"), std::invalid_argument);
    CHECK_THROWS_AS(cli::parse_fraction("3/-2"), std::invalid_argument);
    CHECK_THROWS_AS(cli::parse_fraction("a/2"), std::invalid_argument);
    CHECK(fraction_str(Rat(5, 2)) == "5/2");
    CHECK(fraction_str(Rat(8, 4)) == "2");
}

TEST_CASE("sequence preset expressions") {
    CHECK(parse_seq_expr("n")(7) == 7);
    CHECK(parse_seq_expr("n^2")(9) == 81);
    CHECK(parse_seq_expr("2^n")(10) == 1024);
    CHECK(parse_seq_expr("2^n+1")(3) == 9);
    CHECK(parse_seq_expr("2^n-1")(3) == 7);
    CHECK(parse_seq_expr("(3/2)^n")(4) == 5);
    CHECK(parse_seq_expr("n+5")(0) == 5);
    CHECK_THROWS_AS(parse_seq_expr("garbage"), std::invalid_argument);
    CHECK_THROWS_AS(parse_seq_expr(""), std::invalid_argument);
}

TEST_CASE("growth preset expressions") {
    CHECK(parse_growth("n^2")(5) == 25);
    CHECK(parse_growth("2^n")(5) == 32);
    CHECK(parse_growth("2^n+n^2")(3) == 17);
    CHECK(parse_growth("(3/2)^n+n^2")(1) == 2);
    CHECK_THROWS_AS(parse_growth("n^0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_growth("(1/2)^n"), std::invalid_argument);
}

TEST_CASE("experiment configs round-trip through parse and serialize") {
    nlohmann::json raw = {
        {"experiment", "thm2-ring"},
        {"params", {{"r", "3/2"}, {"N", 60}, {"witnesses", 2}}},
        {"out", ""},
        {"format", "json"},
    };
    ExperimentConfig cfg = ExperimentConfig::from_json(raw);
    CHECK(cfg.params.at("N") == "60");  // integers normalized to decimal strings
    ExperimentConfig again = ExperimentConfig::from_json(cfg.to_json());
    CHECK(again.to_json() == cfg.to_json());
}

TEST_CASE("experiment config validation") {
    CHECK_THROWS_WITH(ExperimentConfig::from_json({{"experiment", "thm9-nope"}}),
                      doctest::Contains("unknown experiment"));
    CHECK_THROWS_WITH(ExperimentConfig::from_json(
                          {{"experiment", "thm2-ring"}, {"bogus", 1}}),
                      doctest::Contains("unknown key"));
    nlohmann::json bad_param = {{"experiment", "thm2-ring"},
                                {"params", {{"r", "3/2"}, {"junk", 1}}}};
    CHECK_THROWS_WITH((void)run(ExperimentConfig::from_json(bad_param)),
                      doctest::Contains("unknown key 'junk'"));
}

TEST_CASE("experiments dispatch and report verdicts") {
    ExperimentConfig ring = ExperimentConfig::from_json(
        {{"experiment", "thm2-ring"}, {"params", {{"r", "3/2"}, {"N", 60}, {"witnesses", 2}}}});
    RunOutcome oc = run(ring);
    REQUIRE(oc.report.has_value());
    CHECK(oc.report->verdict == Verdict::certified);
    CHECK(oc.exit_code() == 0);

    ExperimentConfig sup = ExperimentConfig::from_json(
        {{"experiment", "thm5-sup"},
         {"params", {{"a", "2^n"}, {"b", "2^n+1"}, {"g", "1"}, {"N", 1000}}}});
    CHECK(run(sup).report->verdict == Verdict::certified);

    ExperimentConfig tau = ExperimentConfig::from_json(
        {{"experiment", "thm6-tau"}, {"params", {{"n0", 3}, {"window", 6}}}});
    CHECK(run(tau).report->verdict == Verdict::certified);

    ExperimentConfig gaps = ExperimentConfig::from_json(
        {{"experiment", "thm1-gaps"}, {"params", {{"seq", "n"}, {"N", 200}, {"window", 10}}}});
    RunOutcome bad = run(gaps);
    CHECK(bad.report->verdict == Verdict::refuted);
    CHECK(bad.exit_code() == 1);

    ExperimentConfig weak = ExperimentConfig::from_json(
        {{"experiment", "thm5-sup"},
         {"params", {{"a", "2^n"}, {"b", "3^n"}, {"g", "1"}, {"N", 100}}}});
    CHECK(run(weak).exit_code() == 2);
}

TEST_CASE("identical configs produce byte-identical reports") {
    ExperimentConfig cfg = ExperimentConfig::from_json(
        {{"experiment", "thm4-amalgam"}, {"params", {{"c", 3}, {"bound", 50}}}});
    RunOutcome a = run(cfg);
    RunOutcome b = run(cfg);
    CHECK(a.payload.dump() == b.payload.dump());
}

TEST_CASE("csv quoting") {
    CHECK(csv_quote("plain") == "plain");
    CHECK(csv_quote("a,b") == "\"a,b\"");
    CHECK(csv_quote("say \"hi\"") == "\"say \"\"hi\"\"\"");
}

TEST_CASE("cli end to end: track writes the documented csv layout") {
    TempFile base("base.json"), out("tracked.csv");
    {
        std::ofstream f(base.path);
        f << R"({"kind":"padic","p":"2","depth":64})";
    }
    std::vector<const char*> argv = {"tseq", "track",  "--base", base.path.c_str(),
                                     "--f",  "n^2",    "--eps",  "default",
                                     "--N",  "6",      "--out",  out.path.c_str(),
                                     "--format", "csv"};
    CHECK(run_cli(static_cast<int>(argv.size()), argv.data()) == 0);
    std::string csv = slurp(out.path);
    CHECK(csv.rfind("n,f(n),eps(n),a_n,k_n", 0) == 0);
    CHECK(csv.find("5,25,5/2,24,3") != std::string::npos);
}

TEST_CASE("cli end to end: config file overrides flags") {
    TempFile cfg("override.json"), out("ring.json");
    {
        std::ofstream f(cfg.path);
        f << R"({"r":"2","N":30,"witnesses":1,"out":")" << out.path << R"("})";
    }
    std::vector<const char*> argv = {"tseq", "ringseq", "--r", "3/2", "--N", "10",
                                     "--config", cfg.path.c_str()};
    CHECK(run_cli(static_cast<int>(argv.size()), argv.data()) == 0);
    auto doc = nlohmann::json::parse(slurp(out.path));
    CHECK(doc.at("params").at("r") == "2");    // config value won
    CHECK(doc.at("params").at("N") == "30");
    CHECK(doc.contains("timestamp"));
}

TEST_CASE("cli end to end: run subcommand with an experiment file") {
    TempFile cfg("exp.json"), out("exp_out.json");
    {
        std::ofstream f(cfg.path);
        nlohmann::json j = {{"experiment", "thm2-ring"},
                            {"params", {{"r", "3/2"}, {"N", 60}, {"witnesses", 2}}},
                            {"out", out.path},
                            {"format", "json"}};
        f << j.dump();
    }
    std::vector<const char*> argv = {"tseq", "run", "--config", cfg.path.c_str()};
    CHECK(run_cli(static_cast<int>(argv.size()), argv.data()) == 0);
    auto doc = nlohmann::json::parse(slurp(out.path));
    CHECK(doc.at("verdict") == "certified");
}

TEST_CASE("cli reports malformed configs with diagnostics") {
    TempFile cfg("broken.json");
    {
        std::ofstream f(cfg.path);
        f << "{ not json";
    }
    std::vector<const char*> argv = {"tseq", "run", "--config", cfg.path.c_str()};
    CHECK(run_cli(static_cast<int>(argv.size()), argv.data()) == 3);
}

TEST_CASE("cli rejects unknown flags") {
    std::vector<const char*> argv = {"tseq", "ringseq", "--nope", "1"};
    CHECK(run_cli(static_cast<int>(argv.size()), argv.data()) != 0);
}
