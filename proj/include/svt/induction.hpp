#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "svt/data.hpp"
#include "svt/tree.hpp"

namespace svt {

struct FitConfig {
    double lambda = 0.0;
    int max_leaves = 0;  // 0 -> ceil(2*sqrt(n))
    bool feature_selection = false;
    double c0 = 4.0;
    uint64_t seed = 0;  // reserved; induction is deterministic
};

struct SplitCandidate {
    int feature = -1;
    double threshold = 0.0;
    int left_label = 0;
    int right_label = 0;
    RiskBreakdown risk;
};

// One accepted split, for audit/replay.
struct FitTraceStep {
    int node = -1;
    SplitCandidate chosen;
    double unsplit_risk = 0.0;
    double risk_after = 0.0;
};

struct FitTrace {
    std::vector<FitTraceStep> steps;
};

// Breadth-first greedy minimization of signed impurity + lambda * svr.
// Per dequeued leaf, the minimizer over {unsplit} ∪ {splits × 4 labelings}
// is taken; a split is accepted only on strict risk improvement. Ties prefer
// the unsplit tree, then lowest feature, lowest threshold, label pair in
// order (0,1),(1,0),(0,0),(1,1).
Tree fit(const Dataset& data, const ClassWeights& weights, const FitConfig& config,
         FitTrace* trace = nullptr);

// Midpoints between consecutive distinct sample values, per feature.
// Requires node sample_indices (populated on fitted trees).
std::vector<std::pair<int, double>> candidate_splits(const Tree& t, int node_id,
                                                     const Dataset& data);

// Exact risk of the tree with `node_id` replaced by two labeled children;
// SVR comes from the surface-profile fast path.
RiskBreakdown evaluate_candidate(const Tree& t, int node_id, const SplitCandidate& cand,
                                 const Dataset& data);

// Unsigned tree-impurity decrease of a split (>= 0 by Gini concavity).
double impurity_decrease(const Tree& t, int node_id, int feature, double threshold,
                         const Dataset& data);

// Gate for splits on not-yet-used features: the impurity decrease must beat
// the best decrease on already-used features by at least c0 * lambda.
bool feature_gate(double delta_i, double delta_i0, double c0, double lambda);

// Copy of `t` with node_id split; children stats/sample routing refreshed.
Tree apply_split(const Tree& t, int node_id, const SplitCandidate& cand, const Dataset& data);

int default_max_leaves(int n);  // ceil(2*sqrt(n))

}  // namespace svt
