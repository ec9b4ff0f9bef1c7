#pragma once

#include <string>
#include <vector>

#include "svt/data.hpp"
#include "svt/geometry.hpp"

namespace svt {

// Minority up-weight alpha with normalizer w0 = n / (n0 + alpha*n1), so the
// weighted mass of the whole training set is exactly 1.
struct ClassWeights {
    int alpha = 1;
    double w0 = 1.0;
};

// alpha = largest integer with alpha*n1 <= n0 (at least 1).
ClassWeights derive_class_weights(long n0, long n1);
ClassWeights make_class_weights(int alpha, long n0, long n1);

struct NodeStats {
    double mass = 0.0;  // weighted probability of the node
    double eta = 0.0;   // weighted minority fraction within the node
    long count0 = 0;
    long count1 = 0;
};

NodeStats make_node_stats(long count0, long count1, const ClassWeights& w, long n_total);

double gini(double p0, double p1);
double node_impurity(const NodeStats& s);
int dominant_label(const NodeStats& s);  // eta >= 1/2 -> 1
// Impurity if the label matches the weighted dominant class, else 1 - impurity.
double signed_node_impurity(const NodeStats& s, int label);

struct TreeNode {
    Box region;
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    int label = 0;
    NodeStats stats;
    bool complete = false;
    std::vector<int> sample_indices;  // training-time bookkeeping, not serialized

    bool is_leaf() const { return feature < 0; }
};

struct RiskBreakdown {
    double signed_impurity = 0.0;
    double svr = 0.0;
    double lambda = 0.0;
    double total = 0.0;
};

// Binary axis-aligned split tree over [0,1]^d; nodes[0] is the root.
struct Tree {
    int dimension = 0;
    ClassWeights weights;
    double lambda = 0.0;
    std::vector<TreeNode> nodes;
    int leaf_count = 0;

    int predict(const double* x, int dim) const;
    int predict(const std::vector<double>& x) const;
    std::vector<int> predict_all(const Dataset& data) const;

    std::vector<int> leaf_ids() const;
    BoxUnion minority_region() const;  // union of label-1 leaf regions
    std::vector<int> features_used() const;
};

// Routes every sample to its leaf and refreshes stats (and sample_indices)
// for all nodes; internal-node stats aggregate their subtree.
void populate_stats(Tree& t, const Dataset& data);

// Sum over leaves of mass * signed impurity, from fresh stats (accumulated
// in node-index order).
double tree_signed_impurity(const Tree& t, const Dataset& data);

// Signed impurity + lambda * svr(minority decision set), all from scratch.
RiskBreakdown risk(const Tree& t, const Dataset& data);

// JSON serialization: {feature, threshold, left, right} | {label} node
// objects plus weights, lambda, dimension. Thresholds use 17 significant
// digits so round-trips are bit-faithful. Regions are rebuilt from the
// split structure on load; training stats are not serialized.
std::string tree_to_json(const Tree& t);
Tree tree_from_json(const std::string& text);
void save_tree(const Tree& t, const std::string& path);
Tree load_tree(const std::string& path);

}  // namespace svt
