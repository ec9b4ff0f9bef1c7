#include "svt/resample.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "svt/rng.hpp"

namespace svt {

ResampleMethod parse_resample_method(const std::string& name) {
    if (name == "duplicate") return ResampleMethod::duplicate;
    if (name == "smote") return ResampleMethod::smote;
    if (name == "bsmote" || name == "borderline_smote1") return ResampleMethod::borderline_smote1;
    if (name == "adasyn") return ResampleMethod::adasyn;
    throw std::invalid_argument("unknown resampling method: " + name);
}

std::string to_string(ResampleMethod m) {
    switch (m) {
        case ResampleMethod::duplicate: return "duplicate";
        case ResampleMethod::smote: return "smote";
        case ResampleMethod::borderline_smote1: return "bsmote";
        case ResampleMethod::adasyn: return "adasyn";
    }
    return "?";
}

namespace {

constexpr uint64_t kStreamTag = 0xabcdULL;

Rng sample_stream(uint64_t seed, int sample_index) {
    return Rng(mix_seed(mix_seed(seed, kStreamTag), static_cast<uint64_t>(sample_index)));
}

double sqdist(const Dataset& ds, int a, int b) {
    double s = 0.0;
    for (int j = 0; j < ds.d(); ++j) {
        double diff = ds.at(a, j) - ds.at(b, j);
        s += diff * diff;
    }
    return s;
}

// k nearest of `target` among `pool` (self excluded), ties by sample index
std::vector<int> k_nearest(const Dataset& ds, int target, const std::vector<int>& pool, int k) {
    std::vector<std::pair<double, int>> dist;
    dist.reserve(pool.size());
    for (int i : pool) {
        if (i == target) continue;
        dist.emplace_back(sqdist(ds, target, i), i);
    }
    int take = std::min<int>(k, static_cast<int>(dist.size()));
    std::partial_sort(dist.begin(), dist.begin() + take, dist.end());
    std::vector<int> out(take);
    for (int t = 0; t < take; ++t) out[t] = dist[t].second;
    return out;
}

void append_row(Dataset& out, const std::vector<double>& row, int label) {
    out.x.insert(out.x.end(), row.begin(), row.end());
    out.y.push_back(label);
}

Dataset copy_frame(const Dataset& ds) {
    Dataset out;
    out.feature_names = ds.feature_names;
    out.scaling = ds.scaling;
    out.name = ds.name;
    out.x = ds.x;
    out.y = ds.y;
    return out;
}

std::vector<int> minority_indices(const Dataset& ds) {
    std::vector<int> out;
    for (int i = 0; i < ds.n(); ++i) {
        if (ds.y[i] == 1) out.push_back(i);
    }
    return out;
}

// SMOTE-style interpolation toward the t-th neighbor (cycled nearest-first)
std::vector<double> synthesize(const Dataset& ds, int i, const std::vector<int>& neighbors,
                               long t, Rng& rng) {
    std::vector<double> row(ds.row(i), ds.row(i) + ds.d());
    if (neighbors.empty()) return row;  // no neighbors: plain copy
    int nn = neighbors[t % neighbors.size()];
    double u = rng.uniform();
    for (int j = 0; j < ds.d(); ++j) {
        row[j] += u * (ds.at(nn, j) - row[j]);
    }
    return row;
}

// #majority among the k nearest neighbors over the whole dataset
std::vector<int> majority_neighbor_counts(const Dataset& ds, const std::vector<int>& minority,
                                          int k) {
    std::vector<int> all(ds.n());
    std::iota(all.begin(), all.end(), 0);
    std::vector<int> counts(minority.size(), 0);
    for (size_t m = 0; m < minority.size(); ++m) {
        for (int nb : k_nearest(ds, minority[m], all, k)) {
            if (ds.y[nb] == 0) counts[m]++;
        }
    }
    return counts;
}

Dataset smote_from(const Dataset& ds, const std::vector<int>& sources,
                   const std::vector<long>& per_source, int k, uint64_t seed) {
    Dataset out = copy_frame(ds);
    std::vector<int> minority = minority_indices(ds);
    for (size_t m = 0; m < sources.size(); ++m) {
        int i = sources[m];
        if (per_source[m] <= 0) continue;
        auto neighbors = k_nearest(ds, i, minority, k);
        Rng rng = sample_stream(seed, i);
        for (long t = 0; t < per_source[m]; ++t) {
            append_row(out, synthesize(ds, i, neighbors, t, rng), 1);
        }
    }
    out.recount();
    return out;
}

}  // namespace

Dataset resample(const Dataset& data, const ResampleConfig& cfg) {
    if (cfg.alpha < 1) throw std::invalid_argument("resample: alpha must be >= 1");
    if (cfg.k < 1) throw std::invalid_argument("resample: k must be >= 1");
    switch (cfg.method) {
        case ResampleMethod::duplicate: return duplicate_oversample(data, cfg.alpha, cfg.seed);
        case ResampleMethod::smote: return smote(data, cfg.alpha, cfg.k, cfg.seed);
        case ResampleMethod::borderline_smote1:
            return borderline_smote1(data, cfg.alpha, cfg.k, cfg.seed);
        case ResampleMethod::adasyn: return adasyn(data, cfg.alpha, cfg.k, cfg.seed);
    }
    throw std::logic_error("resample: unreachable");
}

Dataset duplicate_oversample(const Dataset& data, int alpha, uint64_t seed) {
    (void)seed;  // duplication is deterministic regardless of seed
    if (alpha < 1) throw std::invalid_argument("duplicate_oversample: alpha must be >= 1");
    Dataset out = copy_frame(data);
    for (int i : minority_indices(data)) {
        for (int c = 0; c < alpha - 1; ++c) {
            out.x.insert(out.x.end(), data.row(i), data.row(i) + data.d());
            out.y.push_back(1);
        }
    }
    out.recount();
    return out;
}

Dataset smote(const Dataset& data, int alpha, int k, uint64_t seed) {
    if (alpha < 1) throw std::invalid_argument("smote: alpha must be >= 1");
    if (data.n1 < 2) return duplicate_oversample(data, alpha, seed);
    std::vector<int> minority = minority_indices(data);
    std::vector<long> per(minority.size(), alpha - 1);
    return smote_from(data, minority, per, k, seed);
}

Dataset borderline_smote1(const Dataset& data, int alpha, int k, uint64_t seed) {
    if (alpha < 1) throw std::invalid_argument("borderline_smote1: alpha must be >= 1");
    if (data.n1 < 2) return duplicate_oversample(data, alpha, seed);
    std::vector<int> minority = minority_indices(data);
    std::vector<int> maj_counts = majority_neighbor_counts(data, minority, k);

    // danger: k/2 <= #majority neighbors < k; noise: all k are majority
    std::vector<int> danger;
    for (size_t m = 0; m < minority.size(); ++m) {
        if (2 * maj_counts[m] >= k && maj_counts[m] < k) danger.push_back(minority[m]);
    }
    if (danger.empty()) return smote(data, alpha, k, seed);

    const long budget = static_cast<long>(alpha - 1) * data.n1;
    const long base = budget / static_cast<long>(danger.size());
    const long extra = budget % static_cast<long>(danger.size());
    std::vector<long> per(danger.size(), base);
    for (long m = 0; m < extra; ++m) per[m] += 1;
    return smote_from(data, danger, per, k, seed);
}

Dataset adasyn(const Dataset& data, int alpha, int k, uint64_t seed) {
    if (alpha < 1) throw std::invalid_argument("adasyn: alpha must be >= 1");
    if (data.n1 < 1 || data.n0 < 1) throw std::invalid_argument("adasyn: both classes required");
    std::vector<int> minority = minority_indices(data);

    const double beta = static_cast<double>(alpha) * data.n1 / static_cast<double>(data.n0);
    const long total = std::llround(beta * static_cast<double>(data.n0 - data.n1));
    if (total <= 0) return copy_frame(data);

    std::vector<int> maj_counts = majority_neighbor_counts(data, minority, k);
    double r_sum = 0.0;
    for (int c : maj_counts) r_sum += static_cast<double>(c) / k;

    // quotas by largest remainder, so the counts add up to `total` exactly
    std::vector<double> share(minority.size());
    for (size_t m = 0; m < minority.size(); ++m) {
        share[m] = r_sum > 0.0 ? (static_cast<double>(maj_counts[m]) / k) / r_sum
                               : 1.0 / static_cast<double>(minority.size());
    }
    std::vector<long> per(minority.size());
    long assigned = 0;
    std::vector<std::pair<double, size_t>> rem(minority.size());
    for (size_t m = 0; m < minority.size(); ++m) {
        double q = share[m] * static_cast<double>(total);
        per[m] = static_cast<long>(std::floor(q));
        assigned += per[m];
        rem[m] = {q - std::floor(q), m};
    }
    std::sort(rem.begin(), rem.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    for (long t = 0; t < total - assigned; ++t) per[rem[t].second] += 1;

    return smote_from(data, minority, per, k, seed);
}

}  // namespace svt
