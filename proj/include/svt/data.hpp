#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace svt {

// Feature matrix scaled to [0,1]^d with binary labels, 1 = minority.
struct Dataset {
    std::vector<double> x;  // row-major, n * d
    std::vector<int> y;
    std::vector<std::string> feature_names;
    std::vector<std::pair<double, double>> scaling;  // per-feature (min, max) applied
    std::string name;
    long n0 = 0;
    long n1 = 0;

    int n() const { return static_cast<int>(y.size()); }
    int d() const { return static_cast<int>(feature_names.size()); }
    double at(int i, int j) const { return x[static_cast<size_t>(i) * d() + j]; }
    const double* row(int i) const { return x.data() + static_cast<size_t>(i) * d(); }

    Dataset take(const std::vector<int>& rows) const;
    void recount();
};

// Builds a dataset from rows already in [0,1]^d (throws otherwise).
Dataset make_dataset(const std::vector<std::vector<double>>& rows,
                     const std::vector<int>& labels,
                     std::vector<std::string> names = {});

// Loader configuration for one benchmark dataset.
struct DatasetSpec {
    std::string name;
    std::string path;
    std::string format = "csv";  // csv | keel
    std::vector<std::string> positive_classes;
    std::vector<std::string> negative_classes;   // optional
    std::vector<std::string> dropped_columns;    // names or 0-based indices
    std::string unlisted = "error";              // error | majority | drop
    bool header = true;
};

DatasetSpec read_dataset_spec(const std::string& spec_path);
Dataset load(const DatasetSpec& spec);

// Inverse of the stored min-max scaling (constant features map back to min).
double unscale(const Dataset& ds, int feature, double v);

// Two-dimensional toy data: minority uniform on [0,0.75]x[0.25,0.75],
// majority uniform on the unit square.
Dataset toy_generate(int n_min, int n_maj, uint64_t seed);

// Appends `count` label-independent uniform features named redundant_i.
Dataset add_redundant_features(const Dataset& ds, int count, uint64_t seed);

void write_csv(const Dataset& ds, const std::string& path);

}  // namespace svt
