#include "svt/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "svt/cart.hpp"
#include "svt/induction.hpp"
#include "svt/resample.hpp"
#include "svt/rng.hpp"

namespace svt {

std::vector<std::vector<int>> stratified_folds(const std::vector<int>& labels, int k,
                                               uint64_t seed) {
    if (k < 1) throw std::invalid_argument("stratified_folds: k must be >= 1");
    std::vector<int> pos, neg;
    for (size_t i = 0; i < labels.size(); ++i) {
        (labels[i] == 1 ? pos : neg).push_back(static_cast<int>(i));
    }
    size_t min_class = std::min(pos.size(), neg.size());
    if (k > 1 && static_cast<size_t>(k) > min_class) {
        throw std::invalid_argument("stratified_folds: k exceeds the smaller class count");
    }
    std::vector<std::vector<int>> folds(k);
    Rng rng(mix_seed(seed, 0xf01d));
    for (auto* cls : {&neg, &pos}) {
        shuffle(*cls, rng);
        for (size_t t = 0; t < cls->size(); ++t) {
            folds[t % k].push_back((*cls)[t]);
        }
    }
    for (auto& f : folds) std::sort(f.begin(), f.end());
    return folds;
}

std::vector<double> lambda_grid(long n) {
    if (n < 1) throw std::invalid_argument("lambda_grid: n must be >= 1");
    std::vector<double> grid;
    double base = 1e-3 * std::pow(static_cast<double>(n), -1.0 / 3.0);
    for (int j = 0; j <= 10; ++j) {
        grid.push_back(std::ldexp(base, j));  // base * 2^j
    }
    return grid;
}

Method parse_method(const std::string& name) {
    if (name == "svr") return Method::svr;
    if (name == "svr-select" || name == "svr_select") return Method::svr_select;
    if (name == "duplicate") return Method::duplicate;
    if (name == "smote") return Method::smote;
    if (name == "bsmote") return Method::bsmote;
    if (name == "adasyn") return Method::adasyn;
    throw std::invalid_argument("unknown method: " + name);
}

std::string to_string(Method m) {
    switch (m) {
        case Method::svr: return "svr";
        case Method::svr_select: return "svr-select";
        case Method::duplicate: return "duplicate";
        case Method::smote: return "smote";
        case Method::bsmote: return "bsmote";
        case Method::adasyn: return "adasyn";
    }
    return "?";
}

const std::vector<Method>& all_methods() {
    static const std::vector<Method> methods = {Method::svr,   Method::svr_select,
                                                Method::duplicate, Method::smote,
                                                Method::bsmote,    Method::adasyn};
    return methods;
}

namespace {

ClassWeights weights_for(const Dataset& ds) {
    if (ds.n1 == 0) return ClassWeights{1, 1.0};
    return derive_class_weights(ds.n0, ds.n1);
}

Tree fit_svr(const Dataset& train, double lambda, bool feature_selection) {
    FitConfig cfg;
    cfg.lambda = lambda;
    cfg.max_leaves = default_max_leaves(train.n());
    cfg.feature_selection = feature_selection;
    cfg.c0 = 4.0;
    return fit(train, weights_for(train), cfg);
}

// complement of a fold, ascending
std::vector<int> fold_complement(int n, const std::vector<int>& fold) {
    std::vector<bool> excl(n, false);
    for (int i : fold) excl[i] = true;
    std::vector<int> out;
    out.reserve(n - static_cast<int>(fold.size()));
    for (int i = 0; i < n; ++i) {
        if (!excl[i]) out.push_back(i);
    }
    return out;
}

int effective_inner_folds(const Dataset& train, int requested, const std::string& context) {
    long min_class = std::min(train.n0, train.n1);
    if (min_class >= requested) return requested;
    int reduced = std::max<long>(2, min_class);
    std::cerr << "warning: " << context << ": minority count " << min_class
              << " below inner fold count " << requested << ", using " << reduced << " folds\n";
    return reduced;
}

double mean_of(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double stderr_of(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    double m = mean_of(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(v.size() - 1)) /
           std::sqrt(static_cast<double>(v.size()));
}

}  // namespace

MethodRun nested_cv(const Dataset& data, Method method, const CVConfig& cv) {
    if (cv.repetitions < 1) throw std::invalid_argument("nested_cv: repetitions must be >= 1");
    if (cv.outer_folds < 2) throw std::invalid_argument("nested_cv: outer_folds must be >= 2");
    if (data.n1 < cv.outer_folds) {
        throw std::invalid_argument("nested_cv: minority class smaller than outer fold count");
    }
    const bool is_svr = method == Method::svr || method == Method::svr_select;
    std::vector<double> grid = cv.lambda_grid;
    if (is_svr && cv.fixed_lambda < 0.0 && grid.empty()) grid = lambda_grid(data.n());

    MethodRun run;
    for (int rep = 0; rep < cv.repetitions; ++rep) {
        uint64_t rep_seed = mix_seed(cv.seed, 1000 + rep);
        auto outer = stratified_folds(data.y, cv.outer_folds, mix_seed(rep_seed, 1));
        ConfusionMatrix pooled;
        for (int of = 0; of < cv.outer_folds; ++of) {
            std::vector<int> train_idx = fold_complement(data.n(), outer[of]);
            Dataset train = data.take(train_idx);
            Dataset test = data.take(outer[of]);
            uint64_t split_seed = mix_seed(rep_seed, 100 + of);

            Tree model;
            if (is_svr) {
                double chosen = cv.fixed_lambda;
                if (chosen < 0.0) {
                    int k_inner = effective_inner_folds(train, cv.inner_folds,
                                                        data.name + "/" + to_string(method));
                    auto inner = stratified_folds(train.y, k_inner, mix_seed(split_seed, 2));
                    std::vector<ConfusionMatrix> per_lambda(grid.size());
                    for (const auto& val_idx : inner) {
                        Dataset sub = train.take(fold_complement(train.n(), val_idx));
                        Dataset val = train.take(val_idx);
                        for (size_t g = 0; g < grid.size(); ++g) {
                            Tree t = fit_svr(sub, grid[g], method == Method::svr_select);
                            per_lambda[g].add(confusion(val.y, t.predict_all(val)));
                        }
                    }
                    double best_f = -1.0;
                    chosen = grid[0];
                    for (size_t g = 0; g < grid.size(); ++g) {
                        double f = f_measure_of(per_lambda[g]);
                        if (f > best_f) {  // ties keep the smaller lambda
                            best_f = f;
                            chosen = grid[g];
                        }
                    }
                }
                model = fit_svr(train, chosen, method == Method::svr_select);
            } else {
                ResampleMethod rm = parse_resample_method(to_string(method));
                int k_inner = effective_inner_folds(train, cv.inner_folds,
                                                    data.name + "/" + to_string(method));
                auto inner = stratified_folds(train.y, k_inner, mix_seed(split_seed, 2));
                auto fit_tree = [&](const Dataset& sub, int fold) {
                    ResampleConfig rc;
                    rc.method = rm;
                    rc.alpha = weights_for(sub).alpha;
                    rc.k = cv.knn;
                    rc.seed = mix_seed(split_seed, 0x535 + fold + 1);
                    return cart_fit(resample(sub, rc));
                };
                model = select_pruned(train, inner, fit_tree).tree;
            }
            pooled.add(confusion(test.y, model.predict_all(test)));
        }
        run.per_rep.push_back(metrics(pooled));
    }

    for (int m = 0; m < kMetricCount; ++m) {
        std::vector<double> vals;
        vals.reserve(run.per_rep.size());
        for (const auto& ms : run.per_rep) vals.push_back(metric_value(ms, m));
        double mu = mean_of(vals);
        double se = stderr_of(vals);
        auto set = [&](MetricSet& target, double v) {
            switch (m) {
                case 0: target.accuracy = v; break;
                case 1: target.precision = v; break;
                case 2: target.tpr = v; break;
                case 3: target.f_measure = v; break;
                case 4: target.g_mean = v; break;
            }
        };
        set(run.mean, mu);
        set(run.stderr_, se);
    }
    return run;
}

std::map<std::string, std::map<std::string, double>> average_rankings(
    const BenchmarkReport& report) {
    // collect datasets and methods in first-seen order
    std::vector<std::string> datasets, methods;
    for (const auto& row : report.rows) {
        if (std::find(datasets.begin(), datasets.end(), row.dataset) == datasets.end()) {
            datasets.push_back(row.dataset);
        }
        if (std::find(methods.begin(), methods.end(), row.method) == methods.end()) {
            methods.push_back(row.method);
        }
    }
    std::map<std::string, std::map<std::string, double>> sums;
    for (const std::string& ds : datasets) {
        for (int m = 0; m < kMetricCount; ++m) {
            std::vector<std::pair<double, std::string>> means;
            for (const auto& row : report.rows) {
                if (row.dataset != ds) continue;
                means.emplace_back(metric_value(row.run.mean, m), row.method);
            }
            if (means.size() != methods.size()) {
                throw std::invalid_argument(
                    "average_rankings: every method must cover every dataset");
            }
            std::sort(means.begin(), means.end(), [](const auto& a, const auto& b) {
                return a.first > b.first;
            });
            // ties share the average of the ranks they span
            size_t i = 0;
            while (i < means.size()) {
                size_t j = i;
                while (j + 1 < means.size() && means[j + 1].first == means[i].first) ++j;
                double rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
                for (size_t t = i; t <= j; ++t) {
                    sums[means[t].second][kMetricNames[m]] += rank;
                }
                i = j + 1;
            }
        }
    }
    for (auto& [method, per_metric] : sums) {
        for (auto& [metric, sum] : per_metric) {
            sum /= static_cast<double>(datasets.size());
        }
    }
    return sums;
}

namespace {

std::string fmt4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void write_report_csv(const BenchmarkReport& report, std::ostream& out) {
    out << "dataset,method,metric,mean,stderr\n";
    for (const auto& row : report.rows) {
        for (int m = 0; m < kMetricCount; ++m) {
            out << row.dataset << "," << row.method << "," << kMetricNames[m] << ","
                << fmt4(metric_value(row.run.mean, m)) << ","
                << fmt4(metric_value(row.run.stderr_, m)) << "\n";
        }
    }
}

void write_report_json(const BenchmarkReport& report, std::ostream& out) {
    out << "{\"rows\":[";
    for (size_t r = 0; r < report.rows.size(); ++r) {
        const auto& row = report.rows[r];
        if (r) out << ",";
        out << "{\"dataset\":\"" << row.dataset << "\",\"method\":\"" << row.method << "\"";
        for (int m = 0; m < kMetricCount; ++m) {
            out << ",\"" << kMetricNames[m] << "\":{\"mean\":"
                << fmt17(metric_value(row.run.mean, m))
                << ",\"stderr\":" << fmt17(metric_value(row.run.stderr_, m)) << ",\"reps\":[";
            for (size_t i = 0; i < row.run.per_rep.size(); ++i) {
                if (i) out << ",";
                out << fmt17(metric_value(row.run.per_rep[i], m));
            }
            out << "]}";
        }
        out << "}";
    }
    out << "]}\n";
}

std::string render_report_table(const BenchmarkReport& report) {
    std::vector<std::string> datasets;
    for (const auto& row : report.rows) {
        if (std::find(datasets.begin(), datasets.end(), row.dataset) == datasets.end()) {
            datasets.push_back(row.dataset);
        }
    }
    std::ostringstream out;
    out << "dataset      method      ";
    for (int m = 0; m < kMetricCount; ++m) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), " %-16s", kMetricNames[m]);
        out << buf;
    }
    out << "\n";
    for (const std::string& ds : datasets) {
        // best mean per metric, for starring
        double best[kMetricCount];
        for (int m = 0; m < kMetricCount; ++m) {
            best[m] = -1.0;
            for (const auto& row : report.rows) {
                if (row.dataset == ds) best[m] = std::max(best[m], metric_value(row.run.mean, m));
            }
        }
        for (const auto& row : report.rows) {
            if (row.dataset != ds) continue;
            char head[64];
            std::snprintf(head, sizeof(head), "%-12s %-11s", ds.c_str(), row.method.c_str());
            out << head;
            for (int m = 0; m < kMetricCount; ++m) {
                std::string cell = fmt4(metric_value(row.run.mean, m)) + "(" +
                                   fmt4(metric_value(row.run.stderr_, m)) + ")";
                if (metric_value(row.run.mean, m) == best[m]) cell = "*" + cell;
                char buf[48];
                std::snprintf(buf, sizeof(buf), " %-16s", cell.c_str());
                out << buf;
            }
            out << "\n";
        }
    }
    return out.str();
}

}  // namespace svt
