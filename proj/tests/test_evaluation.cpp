#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "svt/evaluate.hpp"
#include "svt/rng.hpp"

using namespace svt;

TEST_CASE("confusion counts") {
    std::vector<int> t(100, 0), p(100, 0);
    for (int i = 0; i < 10; ++i) t[i] = 1, p[i] = 1;
    ConfusionMatrix cm = confusion(t, p);
    CHECK(cm.tp == 10);
    CHECK(cm.tn == 90);
    CHECK(cm.fp == 0);
    CHECK(cm.fn == 0);

    std::fill(p.begin(), p.end(), 0);
    cm = confusion(t, p);
    CHECK(cm.tp == 0);
    CHECK(cm.fn == 10);

    CHECK_THROWS_AS(confusion({0, 1}, {0}), std::invalid_argument);
}

TEST_CASE("metrics from a confusion matrix") {
    ConfusionMatrix cm{50, 10, 25, 100};
    MetricSet m = metrics(cm);
    CHECK(m.precision == doctest::Approx(0.8333).epsilon(1e-4));
    CHECK(m.tpr == doctest::Approx(0.6667).epsilon(1e-4));
    CHECK(m.f_measure == doctest::Approx(0.7407).epsilon(1e-4));
    CHECK(m.g_mean == doctest::Approx(0.7785).epsilon(1e-4));
    CHECK(m.accuracy == doctest::Approx(150.0 / 185.0));
    CHECK(m.g_mean * m.g_mean ==
          doctest::Approx(m.tpr * (100.0 / 110.0)).epsilon(1e-12));

    // all-majority predictor: precision and F are defined as zero
    ConfusionMatrix allneg{0, 0, 10, 90};
    MetricSet m2 = metrics(allneg);
    CHECK(m2.precision == 0.0);
    CHECK(m2.f_measure == 0.0);
    CHECK(m2.tpr == 0.0);

    // perfect predictor
    ConfusionMatrix perfect{10, 0, 0, 90};
    MetricSet m3 = metrics(perfect);
    CHECK(m3.accuracy == 1.0);
    CHECK(m3.precision == 1.0);
    CHECK(m3.tpr == 1.0);
    CHECK(m3.f_measure == 1.0);
    CHECK(m3.g_mean == 1.0);
}

TEST_CASE("metrics of a self-match are all ones") {
    std::vector<int> y{0, 1, 0, 1, 1, 0};
    MetricSet m = metrics(confusion(y, y));
    CHECK(m.accuracy == 1.0);
    CHECK(m.f_measure == 1.0);
    CHECK(m.g_mean == 1.0);
}

TEST_CASE("stratified folds") {
    std::vector<int> labels(100, 0);
    for (int i = 0; i < 9; ++i) labels[i] = 1;
    auto folds = stratified_folds(labels, 3, 5);
    REQUIRE(folds.size() == 3);
    std::set<int> seen;
    std::vector<int> pos_counts, neg_counts;
    for (const auto& f : folds) {
        int pos = 0;
        for (int i : f) {
            CHECK(!seen.count(i));
            seen.insert(i);
            pos += labels[i];
        }
        pos_counts.push_back(pos);
        neg_counts.push_back(static_cast<int>(f.size()) - pos);
    }
    CHECK(seen.size() == labels.size());
    for (int c : pos_counts) CHECK(c == 3);
    for (int c : neg_counts) CHECK((c == 30 || c == 31));

    // determinism and seed sensitivity
    CHECK(stratified_folds(labels, 3, 5) == folds);
    CHECK(stratified_folds(labels, 3, 6) != folds);

    // k = 1 is the whole index set
    auto one = stratified_folds(labels, 1, 0);
    REQUIRE(one.size() == 1);
    CHECK(one[0].size() == labels.size());

    CHECK_THROWS_AS(stratified_folds(labels, 10, 0), std::invalid_argument);
}

TEST_CASE("lambda grid") {
    auto grid = lambda_grid(1000);
    REQUIRE(grid.size() == 11);
    CHECK(grid.front() == doctest::Approx(1e-4).epsilon(1e-12));
    CHECK(grid.back() == doctest::Approx(1.024e-1).epsilon(1e-12));
    for (size_t i = 1; i < grid.size(); ++i) {
        CHECK(grid[i] / grid[i - 1] == 2.0);  // exact: ldexp by one
    }
    auto g2 = lambda_grid(5404);
    CHECK(g2.front() == doctest::Approx(1e-3 * std::pow(5404.0, -1.0 / 3.0)));
    CHECK_THROWS_AS(lambda_grid(0), std::invalid_argument);
}

TEST_CASE("method parsing") {
    CHECK(parse_method("svr") == Method::svr);
    CHECK(parse_method("svr-select") == Method::svr_select);
    CHECK(to_string(Method::bsmote) == "bsmote");
    CHECK(all_methods().size() == 6);
    CHECK_THROWS_AS(parse_method("hddt"), std::invalid_argument);
}

TEST_CASE("nested_cv is deterministic and sane on toy data") {
    Dataset data = toy_generate(30, 150, 3);
    CVConfig cv;
    cv.repetitions = 2;
    cv.seed = 9;
    MethodRun a = nested_cv(data, Method::svr, cv);
    MethodRun b = nested_cv(data, Method::svr, cv);
    REQUIRE(a.per_rep.size() == 2);
    for (int m = 0; m < kMetricCount; ++m) {
        CHECK(metric_value(a.mean, m) == metric_value(b.mean, m));
        CHECK(metric_value(a.mean, m) >= 0.0);
        CHECK(metric_value(a.mean, m) <= 1.0);
        CHECK(metric_value(a.stderr_, m) >= 0.0);
    }
    MethodRun c = nested_cv(data, Method::duplicate, cv);
    CHECK(c.mean.accuracy > 0.5);
}

TEST_CASE("oversamplers with alpha 1 collapse to plain CART") {
    // balanced data: derived alpha is 1, so duplicate/smote/bsmote are no-ops
    Dataset data = toy_generate(60, 60, 21);
    CVConfig cv;
    cv.repetitions = 2;
    cv.seed = 4;
    MethodRun dup = nested_cv(data, Method::duplicate, cv);
    MethodRun smo = nested_cv(data, Method::smote, cv);
    MethodRun bsm = nested_cv(data, Method::bsmote, cv);
    for (int m = 0; m < kMetricCount; ++m) {
        CHECK(metric_value(dup.mean, m) == metric_value(smo.mean, m));
        CHECK(metric_value(dup.mean, m) == metric_value(bsm.mean, m));
    }
}

TEST_CASE("nested_cv rejects degenerate fold requests") {
    Dataset data = toy_generate(2, 40, 1);
    CVConfig cv;
    cv.repetitions = 1;
    CHECK_THROWS_AS(nested_cv(data, Method::svr, cv), std::invalid_argument);
}

TEST_CASE("fixed lambda skips inner selection") {
    Dataset data = toy_generate(20, 100, 13);
    CVConfig cv;
    cv.repetitions = 1;
    cv.seed = 2;
    cv.fixed_lambda = 0.01;
    MethodRun run = nested_cv(data, Method::svr, cv);
    CHECK(run.per_rep.size() == 1);
}

TEST_CASE("average rankings with ties") {
    BenchmarkReport report;
    auto mk = [](double acc) {
        MethodRun r;
        MetricSet m;
        m.accuracy = acc;
        m.precision = acc;
        m.tpr = acc;
        m.f_measure = acc;
        m.g_mean = acc;
        r.mean = m;
        r.per_rep = {m};
        return r;
    };
    report.rows.push_back({"d1", "a", mk(0.9)});
    report.rows.push_back({"d1", "b", mk(0.8)});
    report.rows.push_back({"d1", "c", mk(0.7)});
    auto ranks = average_rankings(report);
    CHECK(ranks["a"]["accuracy"] == doctest::Approx(1.0));
    CHECK(ranks["b"]["accuracy"] == doctest::Approx(2.0));
    CHECK(ranks["c"]["accuracy"] == doctest::Approx(3.0));

    BenchmarkReport tied;
    tied.rows.push_back({"d1", "a", mk(0.9)});
    tied.rows.push_back({"d1", "b", mk(0.9)});
    auto r2 = average_rankings(tied);
    CHECK(r2["a"]["f_measure"] == doctest::Approx(1.5));
    CHECK(r2["b"]["f_measure"] == doctest::Approx(1.5));

    // two datasets average the per-dataset ranks
    tied.rows.push_back({"d2", "a", mk(0.5)});
    tied.rows.push_back({"d2", "b", mk(0.6)});
    auto r3 = average_rankings(tied);
    CHECK(r3["a"]["tpr"] == doctest::Approx((1.5 + 2.0) / 2.0));
    CHECK(r3["b"]["tpr"] == doctest::Approx((1.5 + 1.0) / 2.0));
}

TEST_CASE("report emission formats") {
    BenchmarkReport report;
    MethodRun run;
    MetricSet m;
    m.accuracy = 0.83495;
    m.precision = 0.6749;
    m.tpr = 0.8458;
    m.f_measure = 0.7506;
    m.g_mean = 0.8380;
    run.mean = m;
    run.stderr_.f_measure = 0.0076;
    run.per_rep = {m};
    report.rows.push_back({"phoneme", "svr", run});

    std::ostringstream csv;
    write_report_csv(report, csv);
    CHECK(csv.str().find("dataset,method,metric,mean,stderr\n") == 0);
    CHECK(csv.str().find("phoneme,svr,f_measure,0.7506,0.0076") != std::string::npos);

    std::ostringstream json;
    write_report_json(report, json);
    CHECK(json.str().find("\"f_measure\"") != std::string::npos);

    std::string table = render_report_table(report);
    CHECK(table.find("0.7506(0.0076)") != std::string::npos);
    CHECK(table.find("*") != std::string::npos);  // best mean starred
}
