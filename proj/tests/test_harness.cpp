#include <gtest/gtest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "lcentral/harness/config.hpp"
#include "lcentral/harness/csv.hpp"
#include "lcentral/harness/parallel.hpp"
#include "lcentral/harness/rng.hpp"
#include "lcentral/harness/suites.hpp"

using namespace lcentral;
using namespace lcentral::harness;

namespace {

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("lcentral_test_" + name);
}

}  // namespace

TEST(Csv, HeaderOnly) {
    EXPECT_EQ(to_csv({"a", "b"}, {}), "a,b\n");
}

TEST(Csv, OneRow) {
    EXPECT_EQ(to_csv({"q", "x", "s"}, {{std::int64_t{7}, 0.5, std::string("lemma52[P=1]")}}),
              "q,x,s\n7,0.5,lemma52[P=1]\n");
}

TEST(Csv, Formatting) {
    EXPECT_EQ(format_double(1.0 / 3.0), "0.333333333333");
    EXPECT_EQ(format_double(1e-20), "1e-20");
    EXPECT_EQ(format_double(160.0), "160");
    EXPECT_EQ(format_cell(std::string("a,b")), "\"a,b\"");
    EXPECT_EQ(format_cell(std::string("say \"hi\"")), "\"say \"\"hi\"\"\"");
    EXPECT_EQ(format_cell(std::int64_t{-3}), "-3");
}

TEST(Csv, SchemaMismatch) {
    EXPECT_THROW(to_csv({"a", "b"}, {{std::int64_t{1}}}), precondition_error);
    EXPECT_THROW(to_csv({}, {}), precondition_error);
}

TEST(Csv, UnwritablePath) {
    EXPECT_THROW(emit_csv({}, {"a"}, "/nonexistent-dir/x.csv"), output_error);
    const auto p = temp_path("emit.csv");
    emit_csv({{1.25}}, {"x"}, p.string());
    EXPECT_EQ(read_file(p), "x\n1.25\n");
    std::filesystem::remove(p);
}

TEST(Config, Parse) {
    std::istringstream in("# comment\n\n  qmin = 5\nqmax=9  \nsuite= weil\nqmin=6\n");
    const auto m = parse_config(in);
    EXPECT_EQ(m.size(), 3u);
    EXPECT_EQ(m.at("qmin"), "6");
    EXPECT_EQ(m.at("qmax"), "9");
    EXPECT_EQ(m.at("suite"), "weil");
}

TEST(Config, Errors) {
    std::istringstream no_eq("qmin 5\n");
    EXPECT_THROW(parse_config(no_eq), precondition_error);
    std::istringstream no_key(" = 5\n");
    EXPECT_THROW(parse_config(no_key), precondition_error);
    EXPECT_THROW(load_config("/nonexistent-dir/cfg"), precondition_error);
}

TEST(Rng, Deterministic) {
    KeyedRng a(default_seed, {1, 2, 3}), b(default_seed, {1, 2, 3}), c(default_seed, {1, 2, 4}), d(7, {1, 2, 3});
    bool differs_c = false, differs_d = false;
    for (int i = 0; i < 100; ++i) {
        const auto x = a.next();
        ASSERT_EQ(x, b.next());
        differs_c |= x != c.next();
        differs_d |= x != d.next();
    }
    EXPECT_TRUE(differs_c);
    EXPECT_TRUE(differs_d);
}

TEST(Rng, UniformRange) {
    KeyedRng r(default_seed, {9});
    std::set<std::int64_t> seen;
    for (int i = 0; i < 2000; ++i) {
        const auto x = r.uniform(-3, 4);
        ASSERT_GE(x, -3);
        ASSERT_LE(x, 4);
        seen.insert(x);
    }
    EXPECT_EQ(seen.size(), 8u);
    EXPECT_EQ(r.uniform(5, 5), 5);
}

TEST(Parallel, CoversEveryIndexOnce) {
    for (unsigned t : {1u, 2u, 3u, 8u, 64u}) {
        std::vector<std::atomic<int>> hits(37);
        parallel_for(hits.size(), t, [&](std::size_t i) { ++hits[i]; });
        for (auto& h : hits) ASSERT_EQ(h.load(), 1);
    }
    parallel_for(0, 4, [](std::size_t) { FAIL(); });
}

TEST(Parallel, RethrowsWorkerException) {
    EXPECT_THROW(parallel_for(10, 4, [](std::size_t i) {
                     if (i == 7) throw precondition_error("boom");
                 }),
                 precondition_error);
}

TEST(Parallel, TreeSumFixedShape) {
    std::vector<double> xs;
    for (int i = 1; i <= 1000; ++i) xs.push_back(1.0 / i);
    const double a = tree_sum(xs);
    EXPECT_EQ(a, tree_sum(xs));
    EXPECT_NEAR(a, 7.4854708605503449, 1e-12);
    EXPECT_EQ(tree_sum(std::vector<double>{}), 0.0);
}

TEST(Suites, Names) {
    for (Suite s : all_suites) EXPECT_EQ(parse_suite(suite_name(s)), s);
    EXPECT_THROW(parse_suite("nope"), precondition_error);
}

TEST(Suites, RangeValidation) {
    SweepConfig cfg;
    cfg.qmin = 0;
    EXPECT_THROW(resolve_range(cfg), precondition_error);
    cfg.qmin = 1;
    cfg.samples = -1;
    EXPECT_THROW(resolve_range(cfg), precondition_error);
    cfg.samples = 3;
    cfg.qmax = 2'000'000;
    EXPECT_THROW(resolve_range(cfg), precondition_error);
}

TEST(Suites, ByteIdenticalAcrossThreadCounts) {
    for (Suite s : all_suites) {
        SweepConfig cfg;
        cfg.suite = s;
        switch (s) {
            case Suite::weil: cfg.qmin = 1, cfg.qmax = 120, cfg.samples = 5; break;
            case Suite::lemma51:
            case Suite::lemma52:
            case Suite::lemma53: cfg.qmin = 50, cfg.qmax = 90, cfg.samples = 3; break;
            case Suite::prop42: cfg.qmin = 11, cfg.qmax = 23, cfg.samples = 3; break;
            case Suite::prop43: cfg.qmin = 2, cfg.qmax = 7, cfg.samples = 3; break;
            case Suite::thm12: cfg.qmin = 1, cfg.qmax = 45, cfg.bmax = 4; break;
        }
        std::string first;
        for (unsigned t : {1u, 2u, 8u}) {
            cfg.threads = t;
            const auto text = to_csv(report_schema, report_rows(evaluate_suite(cfg)));
            if (t == 1) {
                first = text;
                ASSERT_GT(std::count(text.begin(), text.end(), '\n'), 1) << suite_name(s);
            } else {
                ASSERT_EQ(text, first) << suite_name(s) << " threads=" << t;
            }
        }
    }
}

TEST(Suites, SeedChangesSamples) {
    SweepConfig cfg;
    cfg.suite = Suite::weil;
    cfg.qmin = 100;
    cfg.qmax = 110;
    cfg.samples = 4;
    const auto a = to_csv(bounds_schema, bounds_rows(evaluate_suite(cfg)));
    cfg.seed = 12345;
    EXPECT_NE(a, to_csv(bounds_schema, bounds_rows(evaluate_suite(cfg))));
}

TEST(Suites, ReportLayout) {
    SweepConfig cfg;
    cfg.suite = Suite::lemma51;
    cfg.qmin = 50;
    cfg.qmax = 60;
    cfg.samples = 2;
    const auto res = evaluate_suite(cfg);
    EXPECT_EQ(res.rows.size(), 22u);
    ASSERT_EQ(res.checks.size(), 1u);
    EXPECT_EQ(res.checks[0].points, 11);
    const auto rows = report_rows(res);
    ASSERT_EQ(rows.size(), 23u);
    EXPECT_EQ(std::get<std::string>(rows.back()[0]), "lemma51[slope]");
    EXPECT_EQ(std::get<std::string>(rows.back()[2]), "slope");
    for (const auto& r : bounds_rows(res)) ASSERT_EQ(r.size(), bounds_schema.size());
}

TEST(Suites, RunSuiteExitCodes) {
    const auto p = temp_path("suite.csv");
    std::ostringstream diag;
    SweepConfig cfg;
    cfg.out = p.string();

    cfg.suite = Suite::weil;
    cfg.qmax = 500;
    EXPECT_EQ(run_suite(cfg, true, &diag), exit_pass);

    cfg.suite = Suite::thm12;
    cfg.qmin = 1;
    cfg.qmax = 125;
    cfg.bmax = 20;
    EXPECT_EQ(run_suite(cfg, true, &diag), exit_usage);
    EXPECT_NE(diag.str().find("error:"), std::string::npos);

    cfg.suite = Suite::prop42;
    cfg.bmax.reset();
    cfg.qmin = 300;
    cfg.qmax = 200;
    EXPECT_EQ(run_suite(cfg, false, &diag), exit_pass);
    EXPECT_EQ(read_file(p), "suite,q,param1,param2,value_abs,envelope,ratio\n");

    cfg.out = "/nonexistent-dir/out.csv";
    EXPECT_EQ(run_suite(cfg, true, &diag), exit_usage);
    std::filesystem::remove(p);
}
