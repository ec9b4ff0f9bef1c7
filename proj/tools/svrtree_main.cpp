// svrtree command-line tool: fit / predict / bench / svr-inspect / toy.
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "svt/cart.hpp"
#include "svt/data.hpp"
#include "svt/evaluate.hpp"
#include "svt/induction.hpp"
#include "svt/resample.hpp"
#include "svt/rng.hpp"
#include "svt/tree.hpp"
#include "svt/version.hpp"

namespace fs = std::filesystem;

namespace {

struct Flag {
    std::string key;
    std::string value;
};

// Reproducibility manifest written next to every output artifact. The
// timestamp honors SOURCE_DATE_EPOCH so pinned runs are byte-identical.
void write_manifest(const std::string& path, const std::string& command,
                    const std::vector<Flag>& flags, uint64_t seed) {
    long long epoch;
    if (const char* sde = std::getenv("SOURCE_DATE_EPOCH")) {
        epoch = std::atoll(sde);
    } else {
        epoch = static_cast<long long>(std::time(nullptr));
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write manifest: " + path);
    out << "{\"command\":\"" << command << "\",\"version\":\"" << SVRTREE_VERSION
        << "\",\"seed\":" << seed << ",\"timestamp\":" << epoch << ",\"config\":{";
    for (size_t i = 0; i < flags.size(); ++i) {
        if (i) out << ",";
        out << "\"" << flags[i].key << "\":\"" << flags[i].value << "\"";
    }
    out << "}}\n";
}

void check_overwrite(const std::string& path, bool force) {
    if (!force && fs::exists(path)) {
        throw std::runtime_error("output exists (use --force to overwrite): " + path);
    }
}

svt::Dataset load_data_arg(const std::string& path) {
    std::string ext = fs::path(path).extension().string();
    if (ext == ".spec") {
        return svt::load(svt::read_dataset_spec(path));
    }
    svt::DatasetSpec spec;
    spec.name = fs::path(path).stem().string();
    spec.path = path;
    spec.format = ext == ".dat" ? "keel" : "csv";
    spec.positive_classes = {"1", "1.0"};
    return svt::load(spec);
}

svt::ClassWeights weights_for(const svt::Dataset& ds, int alpha_override) {
    if (alpha_override > 0) return svt::make_class_weights(alpha_override, ds.n0, ds.n1);
    if (ds.n1 == 0) return svt::ClassWeights{1, 1.0};
    return svt::derive_class_weights(ds.n0, ds.n1);
}

std::string fmt4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

int threads_from_env() {
    if (const char* env = std::getenv("SVRTREE_THREADS")) {
        int t = std::atoi(env);
        if (t > 0) return t;
    }
    return 1;
}

int run_bench(const std::string& spec_dir, std::vector<std::string> method_names, int reps,
              uint64_t seed, const std::string& out_dir, int knn, double fixed_lambda,
              bool force) {
    std::vector<svt::Dataset> datasets;
    std::vector<std::string> spec_files;
    for (const auto& entry : fs::directory_iterator(spec_dir)) {
        if (entry.path().extension() == ".spec") spec_files.push_back(entry.path().string());
    }
    std::sort(spec_files.begin(), spec_files.end());
    if (spec_files.empty()) {
        std::cerr << "error: no .spec files in " << spec_dir << "\n";
        return 1;
    }
    for (const auto& sf : spec_files) {
        try {
            datasets.push_back(svt::load(svt::read_dataset_spec(sf)));
        } catch (const std::exception& e) {
            std::cerr << "warning: skipping " << sf << ": " << e.what() << "\n";
        }
    }
    if (datasets.empty()) {
        std::cerr << "error: all datasets skipped\n";
        return 1;
    }
    if (method_names.empty()) {
        for (svt::Method m : svt::all_methods()) method_names.push_back(svt::to_string(m));
    }

    fs::create_directories(out_dir);
    for (const char* f : {"report.csv", "report.json", "report.txt"}) {
        check_overwrite(out_dir + "/" + std::string(f), force);
    }

    struct Job {
        const svt::Dataset* data;
        svt::Method method;
    };
    std::vector<Job> jobs;
    for (const auto& ds : datasets) {
        for (const auto& mn : method_names) jobs.push_back({&ds, svt::parse_method(mn)});
    }
    auto run_job = [&](const Job& job) {
        svt::CVConfig cv;
        cv.repetitions = reps;
        cv.seed = svt::mix_seed(seed, std::hash<std::string>{}(job.data->name));
        cv.knn = knn;
        cv.fixed_lambda = fixed_lambda;
        cv.lambda_grid = svt::lambda_grid(job.data->n());
        return svt::nested_cv(*job.data, job.method, cv);
    };

    svt::BenchmarkReport report;
    const int threads = threads_from_env();
    if (threads > 1) {
        std::vector<std::future<svt::MethodRun>> futures;
        futures.reserve(jobs.size());
        for (const auto& job : jobs) {
            futures.push_back(std::async(std::launch::async, run_job, job));
        }
        for (size_t i = 0; i < jobs.size(); ++i) {
            report.rows.push_back(
                {jobs[i].data->name, svt::to_string(jobs[i].method), futures[i].get()});
        }
    } else {
        for (const auto& job : jobs) {
            report.rows.push_back({job.data->name, svt::to_string(job.method), run_job(job)});
        }
    }

    {
        std::vector<Flag> flags = {{"datasets", spec_dir},
                                   {"reps", std::to_string(reps)},
                                   {"knn", std::to_string(knn)},
                                   {"out", out_dir}};
        for (const auto& mn : method_names) flags.push_back({"method", mn});
        write_manifest(out_dir + "/manifest.json", "bench", flags, seed);
        std::ofstream csv(out_dir + "/report.csv", std::ios::binary);
        svt::write_report_csv(report, csv);
        std::ofstream json(out_dir + "/report.json", std::ios::binary);
        svt::write_report_json(report, json);
        std::ofstream txt(out_dir + "/report.txt", std::ios::binary);
        txt << svt::render_report_table(report);
        if (datasets.size() > 1) {
            txt << "\naverage rankings\n";
            auto ranks = svt::average_rankings(report);
            for (const auto& [method, per_metric] : ranks) {
                txt << "  " << method << ":";
                for (int m = 0; m < svt::kMetricCount; ++m) {
                    txt << " " << svt::kMetricNames[m] << "=" << fmt4(per_metric.at(svt::kMetricNames[m]));
                }
                txt << "\n";
            }
        }
    }
    std::cout << svt::render_report_table(report);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SVR-regularized classification trees for imbalanced data"};
    app.require_subcommand(1);

    // toy
    auto* toy = app.add_subcommand("toy", "generate the 2-d toy dataset");
    int toy_min = 5, toy_maj = 200;
    uint64_t toy_seed = 0;
    std::string toy_out;
    bool toy_force = false;
    toy->add_option("--n-min", toy_min, "minority sample count");
    toy->add_option("--n-maj", toy_maj, "majority sample count");
    toy->add_option("--seed", toy_seed, "random seed");
    toy->add_option("--out", toy_out, "output CSV path")->required();
    toy->add_flag("--force", toy_force, "overwrite existing output");

    // fit
    auto* fit_cmd = app.add_subcommand("fit", "fit an SVR-regularized tree");
    std::string fit_data, fit_out;
    double fit_lambda = 0.0, fit_c0 = 4.0;
    int fit_max_leaves = 0, fit_alpha = 0;
    bool fit_fs = false, fit_force = false;
    uint64_t fit_seed = 0;
    fit_cmd->add_option("--data", fit_data, "dataset (.csv, .dat, or .spec)")->required();
    fit_cmd->add_option("--lambda", fit_lambda, "SVR penalty");
    fit_cmd->add_option("--max-leaves", fit_max_leaves, "leaf cap (default 2*sqrt(n))");
    fit_cmd->add_flag("--feature-selection", fit_fs, "enable the feature-selection gate");
    fit_cmd->add_option("--c0", fit_c0, "feature-selection gate constant");
    fit_cmd->add_option("--alpha", fit_alpha, "minority weight (default: derived)");
    fit_cmd->add_option("--seed", fit_seed, "random seed (recorded; induction is deterministic)");
    fit_cmd->add_option("--out", fit_out, "output model path")->required();
    fit_cmd->add_flag("--force", fit_force, "overwrite existing output");

    // predict
    auto* pred = app.add_subcommand("predict", "predict labels with a saved model");
    std::string pred_model, pred_data, pred_out;
    bool pred_force = false;
    pred->add_option("--model", pred_model, "model JSON path")->required();
    pred->add_option("--data", pred_data, "dataset (.csv, .dat, or .spec)")->required();
    pred->add_option("--out", pred_out, "output CSV path (default: stdout)");
    pred->add_flag("--force", pred_force, "overwrite existing output");

    // svr-inspect
    auto* inspect = app.add_subcommand("svr-inspect", "report decision-set geometry of a model");
    std::string ins_model;
    int ins_resolution = 0;
    inspect->add_option("--model", ins_model, "model JSON path")->required();
    inspect->add_option("--oracle-resolution", ins_resolution,
                        "cross-check surface on a grid of this resolution");

    // bench
    auto* bench = app.add_subcommand("bench", "nested-CV benchmark over dataset specs");
    std::string bench_specs, bench_out;
    std::vector<std::string> bench_methods;
    int bench_reps = 20, bench_knn = 5;
    uint64_t bench_seed = 0;
    double bench_fixed_lambda = -1.0;
    bool bench_force = false;
    bench->add_option("--datasets", bench_specs, "directory of .spec files")->required();
    bench->add_option("--methods", bench_methods,
                      "svr, svr-select, duplicate, smote, bsmote, adasyn (default: all)")
        ->delimiter(',');
    bench->add_option("--reps", bench_reps, "nested-CV repetitions");
    bench->add_option("--seed", bench_seed, "random seed");
    bench->add_option("--knn", bench_knn, "oversampler neighbor count");
    bench->add_option("--fixed-lambda", bench_fixed_lambda,
                      "skip inner-CV selection and use this lambda for svr methods");
    bench->add_option("--out", bench_out, "output directory")->required();
    bench->add_flag("--force", bench_force, "overwrite existing outputs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (*toy) {
            check_overwrite(toy_out, toy_force);
            svt::Dataset ds = svt::toy_generate(toy_min, toy_maj, toy_seed);
            svt::write_csv(ds, toy_out);
            write_manifest(toy_out + ".manifest.json", "toy",
                           {{"n_min", std::to_string(toy_min)},
                            {"n_maj", std::to_string(toy_maj)},
                            {"out", toy_out}},
                           toy_seed);
            std::cout << "wrote " << ds.n() << " rows to " << toy_out << "\n";
        } else if (*fit_cmd) {
            check_overwrite(fit_out, fit_force);
            svt::Dataset ds = load_data_arg(fit_data);
            svt::FitConfig cfg;
            cfg.lambda = fit_lambda;
            cfg.max_leaves = fit_max_leaves;
            cfg.feature_selection = fit_fs;
            cfg.c0 = fit_c0;
            cfg.seed = fit_seed;
            svt::Tree tree = svt::fit(ds, weights_for(ds, fit_alpha), cfg);
            svt::save_tree(tree, fit_out);
            svt::RiskBreakdown r = svt::risk(tree, ds);
            write_manifest(fit_out + ".manifest.json", "fit",
                           {{"data", fit_data},
                            {"lambda", std::to_string(fit_lambda)},
                            {"max_leaves", std::to_string(fit_max_leaves)},
                            {"feature_selection", fit_fs ? "true" : "false"},
                            {"c0", std::to_string(fit_c0)},
                            {"alpha", std::to_string(tree.weights.alpha)},
                            {"out", fit_out}},
                           fit_seed);
            std::cout << "leaves=" << tree.leaf_count << " signed_impurity="
                      << fmt4(r.signed_impurity) << " svr=" << fmt4(r.svr)
                      << " risk=" << fmt4(r.total) << "\n";
        } else if (*pred) {
            svt::Tree tree = svt::load_tree(pred_model);
            svt::Dataset ds = load_data_arg(pred_data);
            if (ds.d() != tree.dimension) {
                throw std::runtime_error("model dimension " + std::to_string(tree.dimension) +
                                         " does not match data dimension " +
                                         std::to_string(ds.d()));
            }
            std::ostringstream body;
            body << "row,label\n";
            for (int i = 0; i < ds.n(); ++i) {
                body << i << "," << tree.predict(ds.row(i), ds.d()) << "\n";
            }
            if (pred_out.empty()) {
                std::cout << body.str();
            } else {
                check_overwrite(pred_out, pred_force);
                std::ofstream out(pred_out, std::ios::binary);
                out << body.str();
                write_manifest(pred_out + ".manifest.json", "predict",
                               {{"model", pred_model}, {"data", pred_data}, {"out", pred_out}},
                               0);
            }
        } else if (*inspect) {
            svt::Tree tree = svt::load_tree(ins_model);
            svt::BoxUnion region = tree.minority_region();
            if (region.empty()) {
                std::cout << "SVR=0 (empty decision set)\n";
            } else {
                double s = svt::union_surface(region);
                double v = svt::union_volume(region);
                std::cout << "S=" << fmt4(s) << " V=" << fmt4(v) << " SVR=" << fmt4(svt::svr(region))
                          << "\n";
            }
            std::cout << "minority leaves: " << region.boxes.size() << "\n";
            for (const svt::Box& b : region.boxes) {
                std::cout << "  box";
                for (int j = 0; j < b.dim(); ++j) {
                    std::cout << " [" << b.lower[j] << "," << b.upper[j] << "]";
                }
                std::cout << "\n";
            }
            if (ins_resolution >= 2 && !region.empty()) {
                double oracle = svt::grid_surface_oracle(region, ins_resolution);
                std::cout << "grid_oracle(" << ins_resolution << ")=" << fmt4(oracle) << "\n";
            }
        } else if (*bench) {
            return run_bench(bench_specs, bench_methods, bench_reps, bench_seed, bench_out,
                             bench_knn, bench_fixed_lambda, bench_force);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
