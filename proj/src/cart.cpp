#include "svt/cart.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

#include "svt/metrics.hpp"

namespace svt {

namespace {

struct WeightedCounts {
    long c0 = 0;
    long c1 = 0;
    long total() const { return c0 + c1; }
    double gini_term() const {  // (weighted count) * gini, scaled by 1/total later
        if (total() == 0) return 0.0;
        double p1 = static_cast<double>(c1) / total();
        return static_cast<double>(total()) * 2.0 * p1 * (1.0 - p1);
    }
};

}  // namespace

Tree cart_fit(const Dataset& data, const std::vector<long>& sample_weights) {
    const int n = data.n();
    const int d = data.d();
    if (n < 1) throw std::invalid_argument("cart_fit: empty dataset");
    if (!sample_weights.empty() && static_cast<int>(sample_weights.size()) != n) {
        throw std::invalid_argument("cart_fit: weight count mismatch");
    }
    auto weight = [&](int i) -> long {
        return sample_weights.empty() ? 1L : sample_weights[i];
    };
    long total_weight = 0;
    for (int i = 0; i < n; ++i) {
        if (weight(i) < 1) throw std::invalid_argument("cart_fit: weights must be >= 1");
        total_weight += weight(i);
    }

    Tree tree;
    tree.dimension = d;
    tree.weights = ClassWeights{1, 1.0};
    tree.lambda = 0.0;
    tree.nodes.emplace_back();
    tree.nodes[0].region = Box::unit(d);
    tree.nodes[0].sample_indices.resize(n);
    for (int i = 0; i < n; ++i) tree.nodes[0].sample_indices[i] = i;
    tree.leaf_count = 1;

    auto stats_of = [&](const WeightedCounts& c) {
        return make_node_stats(c.c0, c.c1, tree.weights, total_weight);
    };
    auto counts_of = [&](const std::vector<int>& idx) {
        WeightedCounts c;
        for (int i : idx) (data.y[i] == 1 ? c.c1 : c.c0) += weight(i);
        return c;
    };

    std::deque<int> queue{0};
    while (!queue.empty()) {
        int id = queue.front();
        queue.pop_front();
        TreeNode& node = tree.nodes[id];
        WeightedCounts nc = counts_of(node.sample_indices);
        node.stats = stats_of(nc);
        node.label = dominant_label(node.stats);
        if (nc.c0 == 0 || nc.c1 == 0) continue;  // pure

        // best Gini-decrease split; ties -> lowest feature, lowest threshold
        double best_child_term = std::numeric_limits<double>::infinity();
        int best_feature = -1;
        double best_threshold = 0.0;
        const double parent_term = nc.gini_term();
        for (int j = 0; j < d; ++j) {
            std::vector<int> order = node.sample_indices;
            std::sort(order.begin(), order.end(), [&](int a, int b) {
                double va = data.at(a, j), vb = data.at(b, j);
                if (va != vb) return va < vb;
                return a < b;
            });
            WeightedCounts left;
            for (size_t t = 0; t + 1 < order.size(); ++t) {
                (data.y[order[t]] == 1 ? left.c1 : left.c0) += weight(order[t]);
                double a = data.at(order[t], j), b = data.at(order[t + 1], j);
                if (b <= a) continue;
                WeightedCounts right{nc.c0 - left.c0, nc.c1 - left.c1};
                double child_term = left.gini_term() + right.gini_term();
                // scan order is ascending (feature, threshold), so strict <
                // keeps the lowest-feature, lowest-threshold tie-break
                if (child_term < best_child_term) {
                    best_child_term = child_term;
                    best_feature = j;
                    best_threshold = (a + b) / 2.0;
                }
            }
        }
        if (best_feature < 0 || best_child_term > parent_term + 1e-12) continue;

        int left_id = static_cast<int>(tree.nodes.size());
        int right_id = left_id + 1;
        tree.nodes.emplace_back();
        tree.nodes.emplace_back();
        TreeNode& parent = tree.nodes[id];
        TreeNode& left = tree.nodes[left_id];
        TreeNode& right = tree.nodes[right_id];
        left.region = parent.region;
        left.region.upper[best_feature] = best_threshold;
        right.region = parent.region;
        right.region.lower[best_feature] = best_threshold;
        for (int i : parent.sample_indices) {
            (data.at(i, best_feature) <= best_threshold ? left : right).sample_indices.push_back(i);
        }
        parent.feature = best_feature;
        parent.threshold = best_threshold;
        parent.left = left_id;
        parent.right = right_id;
        tree.leaf_count++;
        queue.push_back(left_id);
        queue.push_back(right_id);
    }
    return tree;
}

namespace {

// misclassification mass of a node labeled with its own label
double node_error(const TreeNode& nd) {
    return nd.stats.mass * (nd.label == 1 ? 1.0 - nd.stats.eta : nd.stats.eta);
}

struct SubtreeInfo {
    double r_sub = 0.0;
    int leaves = 0;
};

SubtreeInfo subtree_info(const Tree& t, int id, std::vector<SubtreeInfo>& memo) {
    const TreeNode& nd = t.nodes[id];
    SubtreeInfo info;
    if (nd.is_leaf()) {
        info.r_sub = node_error(nd);
        info.leaves = 1;
    } else {
        SubtreeInfo l = subtree_info(t, nd.left, memo);
        SubtreeInfo r = subtree_info(t, nd.right, memo);
        info.r_sub = l.r_sub + r.r_sub;
        info.leaves = l.leaves + r.leaves;
    }
    memo[id] = info;
    return info;
}

// weakest-link value per internal node; +inf elsewhere
std::vector<double> link_values(const Tree& t) {
    std::vector<SubtreeInfo> memo(t.nodes.size());
    subtree_info(t, 0, memo);
    std::vector<double> g(t.nodes.size(), std::numeric_limits<double>::infinity());
    for (size_t id = 0; id < t.nodes.size(); ++id) {
        const TreeNode& nd = t.nodes[id];
        if (nd.is_leaf()) continue;
        // unreachable nodes keep +inf
        g[id] = (node_error(nd) - memo[id].r_sub) / (memo[id].leaves - 1);
    }
    // mark unreachable internal entries
    std::vector<bool> reachable(t.nodes.size(), false);
    std::deque<int> stack{0};
    while (!stack.empty()) {
        int id = stack.back();
        stack.pop_back();
        reachable[id] = true;
        if (!t.nodes[id].is_leaf()) {
            stack.push_back(t.nodes[id].left);
            stack.push_back(t.nodes[id].right);
        }
    }
    for (size_t id = 0; id < t.nodes.size(); ++id) {
        if (!reachable[id]) g[id] = std::numeric_limits<double>::infinity();
    }
    return g;
}

int clone_collapsed(const Tree& src, int id, const std::vector<bool>& collapse, Tree& dst) {
    int nid = static_cast<int>(dst.nodes.size());
    dst.nodes.push_back(src.nodes[id]);
    dst.nodes[nid].sample_indices.clear();
    if (src.nodes[id].is_leaf() || collapse[id]) {
        TreeNode& nd = dst.nodes[nid];
        nd.feature = -1;
        nd.left = nd.right = -1;
        nd.label = src.nodes[id].is_leaf() ? src.nodes[id].label : dominant_label(nd.stats);
        return nid;
    }
    int l = clone_collapsed(src, src.nodes[id].left, collapse, dst);
    dst.nodes[nid].left = l;
    int r = clone_collapsed(src, src.nodes[id].right, collapse, dst);
    dst.nodes[nid].right = r;
    return nid;
}

// collapse every internal node with link value <= alpha (one pass)
bool collapse_links_at(Tree& t, double alpha) {
    std::vector<double> g = link_values(t);
    std::vector<bool> collapse(t.nodes.size(), false);
    bool any = false;
    for (size_t id = 0; id < t.nodes.size(); ++id) {
        if (g[id] <= alpha) {
            collapse[id] = true;
            any = true;
        }
    }
    if (!any) return false;
    Tree pruned;
    pruned.dimension = t.dimension;
    pruned.weights = t.weights;
    pruned.lambda = t.lambda;
    clone_collapsed(t, 0, collapse, pruned);
    pruned.leaf_count = static_cast<int>(pruned.leaf_ids().size());
    t = std::move(pruned);
    return true;
}

double min_link(const Tree& t) {
    std::vector<double> g = link_values(t);
    return *std::min_element(g.begin(), g.end());
}

}  // namespace

PruneSequence prune_path(const Tree& t, const Dataset* data) {
    Tree work = t;
    if (data) populate_stats(work, *data);
    for (TreeNode& nd : work.nodes) nd.sample_indices.clear();

    PruneSequence seq;
    seq.alphas.push_back(0.0);
    seq.trees.push_back(work);
    while (!work.nodes[0].is_leaf()) {
        double a = min_link(work);
        collapse_links_at(work, a);
        if (a <= seq.alphas.back()) {
            // equal critical values merge, keeping the most-collapsed tree
            seq.trees.back() = work;
        } else {
            seq.alphas.push_back(a);
            seq.trees.push_back(work);
        }
    }
    return seq;
}

Tree prune_at(const Tree& t, double alpha) {
    Tree work = t;
    while (!work.nodes[0].is_leaf() && min_link(work) <= alpha) {
        collapse_links_at(work, min_link(work));
    }
    return work;
}

PrunedSelection select_pruned(const Dataset& train,
                              const std::vector<std::vector<int>>& val_folds,
                              const std::function<Tree(const Dataset&, int)>& fit_tree) {
    Tree reference = fit_tree(train, -1);
    PruneSequence path = prune_path(reference);

    // geometric midpoints of consecutive critical alphas, one per subtree
    const size_t K = path.alphas.size();
    std::vector<double> candidates;
    for (size_t i = 0; i < K; ++i) {
        if (i + 1 < K) {
            candidates.push_back(std::sqrt(path.alphas[i] * path.alphas[i + 1]));
        } else {
            candidates.push_back(path.alphas[i]);
        }
    }

    PrunedSelection sel;
    sel.alpha = candidates[0];
    if (candidates.size() > 1 && !val_folds.empty()) {
        std::vector<ConfusionMatrix> pooled(candidates.size());
        for (size_t f = 0; f < val_folds.size(); ++f) {
            const auto& val_idx = val_folds[f];
            std::vector<bool> in_val(train.n(), false);
            for (int i : val_idx) in_val[i] = true;
            std::vector<int> fit_idx;
            for (int i = 0; i < train.n(); ++i) {
                if (!in_val[i]) fit_idx.push_back(i);
            }
            Dataset sub = train.take(fit_idx);
            Dataset val = train.take(val_idx);
            Tree fold_tree = fit_tree(sub, static_cast<int>(f));
            // candidates ascend, so pruning can proceed incrementally
            Tree work = fold_tree;
            for (size_t c = 0; c < candidates.size(); ++c) {
                work = prune_at(work, candidates[c]);
                pooled[c].add(confusion(val.y, work.predict_all(val)));
            }
        }
        double best_f = -1.0;
        for (size_t c = 0; c < candidates.size(); ++c) {
            double f = f_measure_of(pooled[c]);
            if (f > best_f) {  // ties keep the smaller alpha (larger tree)
                best_f = f;
                sel.alpha = candidates[c];
            }
        }
        sel.cv_f_measure = best_f;
    }
    sel.tree = prune_at(reference, sel.alpha);
    return sel;
}

}  // namespace svt
