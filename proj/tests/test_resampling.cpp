#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "svt/resample.hpp"
#include "svt/rng.hpp"

using namespace svt;

namespace {

Dataset clustered(int n_min, int n_maj, uint64_t seed, double spread = 0.1) {
    // minority clustered near (0.2, 0.2), majority spread over the square
    Rng rng(seed);
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    for (int i = 0; i < n_maj; ++i) {
        rows.push_back({rng.uniform(), rng.uniform()});
        labels.push_back(0);
    }
    for (int i = 0; i < n_min; ++i) {
        rows.push_back({0.2 + spread * rng.uniform(), 0.2 + spread * rng.uniform()});
        labels.push_back(1);
    }
    return make_dataset(rows, labels);
}

bool on_segment_between_minority(const Dataset& orig, const Dataset& out, int row) {
    // synthetic rows must be convex combinations of two minority originals
    for (int a = 0; a < orig.n(); ++a) {
        if (orig.y[a] != 1) continue;
        for (int b = 0; b < orig.n(); ++b) {
            if (orig.y[b] != 1 || a == b) continue;
            // solve for u from the first differing coordinate, then verify
            double u = -1.0;
            bool ok = true;
            for (int j = 0; j < orig.d(); ++j) {
                double base = orig.at(a, j), delta = orig.at(b, j) - base;
                double val = out.at(row, j);
                if (std::abs(delta) < 1e-12) {
                    if (std::abs(val - base) > 1e-9) ok = false;
                } else {
                    double cand = (val - base) / delta;
                    if (u < 0.0) {
                        u = cand;
                    } else if (std::abs(cand - u) > 1e-9) {
                        ok = false;
                    }
                }
                if (!ok) break;
            }
            if (ok && u >= -1e-9 && u <= 1.0 + 1e-9) return true;
        }
    }
    return false;
}

}  // namespace

TEST_CASE("duplicate oversampling") {
    Dataset data = clustered(5, 20, 1);
    Dataset out = duplicate_oversample(data, 40, 0);
    CHECK(out.n1 == 200);
    CHECK(out.n0 == 20);
    // originals pass through untouched, in order
    for (int i = 0; i < data.n(); ++i) {
        CHECK(out.y[i] == data.y[i]);
        for (int j = 0; j < data.d(); ++j) CHECK(out.at(i, j) == data.at(i, j));
    }
    // copies equal originals coordinate-wise
    for (int i = data.n(); i < out.n(); ++i) {
        CHECK(on_segment_between_minority(data, out, i));
    }
    Dataset same = duplicate_oversample(data, 1, 9);
    CHECK(same.n() == data.n());
    CHECK(same.x == data.x);
}

TEST_CASE("smote budget, range and segment property") {
    Dataset data = clustered(8, 30, 2);
    Dataset out = smote(data, 5, 5, 123);
    CHECK(out.n1 == 5 * 8);
    CHECK(out.n0 == 30);
    for (int i = data.n(); i < out.n(); ++i) {
        CHECK(out.y[i] == 1);
        for (int j = 0; j < out.d(); ++j) {
            CHECK(out.at(i, j) >= 0.0);
            CHECK(out.at(i, j) <= 1.0);
        }
        CHECK(on_segment_between_minority(data, out, i));
    }
    CHECK(smote(data, 1, 5, 1).n() == data.n());
}

TEST_CASE("smote determinism and substream independence") {
    Dataset data = clustered(6, 25, 3);
    Dataset a = smote(data, 4, 5, 42);
    Dataset b = smote(data, 4, 5, 42);
    CHECK(a.x == b.x);
    Dataset c = smote(data, 4, 5, 43);
    CHECK(a.x != c.x);
}

TEST_CASE("smote with a single minority sample falls back to duplication") {
    Dataset data = clustered(1, 10, 4);
    Dataset out = smote(data, 3, 5, 7);
    CHECK(out.n1 == 3);
    for (int i = data.n(); i < out.n(); ++i) {
        for (int j = 0; j < out.d(); ++j) {
            CHECK(out.at(i, j) == data.at(10, j));  // the only minority row
        }
    }
}

TEST_CASE("borderline smote classifies danger and falls back cleanly") {
    // far-away minority cluster: no danger points, falls back to plain smote
    Dataset safe = clustered(6, 30, 5, 0.05);
    Dataset out = borderline_smote1(safe, 3, 5, 11);
    Dataset plain = smote(safe, 3, 5, 11);
    CHECK(out.x == plain.x);
    CHECK(out.n1 == 3 * 6);

    // mixed data: minority on the class border generates, noise points do not
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    // tight majority block around a lone minority point -> all 5 neighbors
    // majority -> noise, generates nothing
    rows.push_back({0.9, 0.9});
    labels.push_back(1);
    for (int i = 0; i < 8; ++i) {
        rows.push_back({0.88 + 0.004 * i, 0.905});
        labels.push_back(0);
    }
    // borderline row: each minority point sees 3 majority among its 5
    // nearest, and its nearest minority neighbors are all inside the row
    for (int i = 0; i < 6; ++i) {
        rows.push_back({0.08 + 0.02 * i, 0.1});
        labels.push_back(1);
        rows.push_back({0.08 + 0.02 * i, 0.11});
        labels.push_back(0);
    }
    for (int i = 0; i < 10; ++i) {
        rows.push_back({0.4 + 0.05 * i, 0.6});
        labels.push_back(0);
    }
    Dataset mixed = make_dataset(rows, labels);
    Dataset bs = borderline_smote1(mixed, 3, 5, 17);
    CHECK(bs.n1 == 3 * mixed.n1);  // budget conserved
    // all synthetics interpolate inside the borderline row, none from noise
    for (int i = mixed.n(); i < bs.n(); ++i) {
        CHECK(bs.at(i, 0) <= 0.18 + 1e-12);
        CHECK(bs.at(i, 0) >= 0.08 - 1e-12);
        CHECK(bs.at(i, 1) == doctest::Approx(0.1));
    }
}

TEST_CASE("adasyn totals and uniform fallback") {
    Dataset data = clustered(5, 200, 6);
    Dataset out = adasyn(data, 40, 5, 3);
    // beta = 40*5/200 = 1, G = 195
    CHECK(out.n1 - data.n1 == 195);
    CHECK(out.n0 == 200);
    for (int i = data.n(); i < out.n(); ++i) {
        for (int j = 0; j < out.d(); ++j) {
            CHECK(out.at(i, j) >= 0.0);
            CHECK(out.at(i, j) <= 1.0);
        }
    }

    // minority surrounded only by minority: r = 0 everywhere, uniform split
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    for (int i = 0; i < 10; ++i) {
        rows.push_back({0.1 + 0.002 * i, 0.1});
        labels.push_back(1);
    }
    for (int i = 0; i < 30; ++i) {
        rows.push_back({0.8 + 0.005 * i, 0.9});
        labels.push_back(0);
    }
    Dataset far = make_dataset(rows, labels);
    Dataset uni = adasyn(far, 3, 5, 1);
    long g = std::llround(3.0 * 10 / 30.0 * (30 - 10));
    CHECK(uni.n1 - far.n1 == g);
}

TEST_CASE("adasyn largest remainder hits the total exactly") {
    Rng rng(8);
    for (int rep = 0; rep < 25; ++rep) {
        int n_min = 3 + static_cast<int>(rng.below(10));
        int n_maj = n_min + 5 + static_cast<int>(rng.below(40));
        int alpha = 1 + static_cast<int>(rng.below(6));
        Dataset data = clustered(n_min, n_maj, 100 + rep, 0.6);
        Dataset out = adasyn(data, alpha, 5, rep);
        double beta = static_cast<double>(alpha) * n_min / n_maj;
        long expected = std::llround(beta * (n_maj - n_min));
        CHECK(out.n1 - data.n1 == std::max(0L, expected));
    }
}

TEST_CASE("resample dispatch and validation") {
    Dataset data = clustered(4, 12, 9);
    ResampleConfig cfg;
    cfg.method = ResampleMethod::smote;
    cfg.alpha = 3;
    cfg.seed = 5;
    CHECK(resample(data, cfg).n1 == 12);
    cfg.alpha = 0;
    CHECK_THROWS_AS(resample(data, cfg), std::invalid_argument);
    CHECK(parse_resample_method("bsmote") == ResampleMethod::borderline_smote1);
    CHECK_THROWS_AS(parse_resample_method("nope"), std::invalid_argument);
}
