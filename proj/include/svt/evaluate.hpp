#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "svt/data.hpp"
#include "svt/metrics.hpp"

namespace svt {

// Per-class shuffled round-robin assignment; within each class the fold
// counts differ by at most one. Requires k <= min class count.
std::vector<std::vector<int>> stratified_folds(const std::vector<int>& labels, int k,
                                               uint64_t seed);

// 11 values 2^j * 1e-3 * n^(-1/3), j = 0..10.
std::vector<double> lambda_grid(long n);

enum class Method { svr, svr_select, duplicate, smote, bsmote, adasyn };
Method parse_method(const std::string& name);
std::string to_string(Method m);
const std::vector<Method>& all_methods();

struct CVConfig {
    int repetitions = 20;
    int outer_folds = 3;
    int inner_folds = 5;
    std::vector<double> lambda_grid;  // tuning grid for svr / svr_select
    uint64_t seed = 0;
    int knn = 5;                 // neighbor count for the oversamplers
    double fixed_lambda = -1.0;  // >= 0 skips inner-CV selection for svr methods
};

struct MethodRun {
    std::vector<MetricSet> per_rep;
    MetricSet mean;
    MetricSet stderr_;
};

// Nested stratified cross validation: outer folds estimate out-of-sample
// metrics (pooled over the outer test folds of one repetition), the inner
// folds pick the tuning parameter by pooled F-measure. Returns mean and
// standard error over repetitions.
MethodRun nested_cv(const Dataset& data, Method method, const CVConfig& cv);

struct BenchmarkReport {
    struct Row {
        std::string dataset;
        std::string method;
        MethodRun run;
    };
    std::vector<Row> rows;
};

// method -> metric name -> mean rank across datasets (rank 1 = best mean,
// ties averaged).
std::map<std::string, std::map<std::string, double>> average_rankings(
    const BenchmarkReport& report);

void write_report_csv(const BenchmarkReport& report, std::ostream& out);
void write_report_json(const BenchmarkReport& report, std::ostream& out);
// mean(stderr) table, best mean per (dataset, metric) starred
std::string render_report_table(const BenchmarkReport& report);

}  // namespace svt
