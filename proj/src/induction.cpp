#include "svt/induction.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace svt {

int default_max_leaves(int n) {
    return std::max(1, static_cast<int>(std::ceil(2.0 * std::sqrt(static_cast<double>(n)))));
}

bool feature_gate(double delta_i, double delta_i0, double c0, double lambda) {
    return delta_i >= delta_i0 + c0 * lambda;
}

namespace {

constexpr int kPairCount = 4;
// label pairs in tie-break order
constexpr int kPairLeft[kPairCount] = {0, 1, 0, 1};
constexpr int kPairRight[kPairCount] = {1, 0, 0, 1};

LabelAssignment assignment_of(int zl, int zr) {
    if (zl == 1 && zr == 0) return LabelAssignment::left1_right0;
    if (zl == 0 && zr == 1) return LabelAssignment::left0_right1;
    if (zl == 0) return LabelAssignment::both0;
    return LabelAssignment::both1;
}

struct CandidateThreshold {
    double threshold;
    long left_n;   // samples routed left
    long left_c1;  // minority among them
};

// thresholds (with prefix counts) from a node-local sorted order
std::vector<CandidateThreshold> thresholds_from_order(const Dataset& data, int feature,
                                                      const std::vector<int>& order) {
    std::vector<CandidateThreshold> out;
    const long m = static_cast<long>(order.size());
    long c1 = 0;
    for (long t = 0; t + 1 < m; ++t) {
        c1 += data.y[order[t]];
        double a = data.at(order[t], feature);
        double b = data.at(order[t + 1], feature);
        if (b > a) out.push_back({(a + b) / 2.0, t + 1, c1});
    }
    return out;
}

struct BestChoice {
    bool is_split = false;
    double total = 0.0;
    int feature = 0;
    double threshold = 0.0;
    int pair_rank = 0;
    double signed_impurity = 0.0;
    double surface = 0.0;
    double volume = 0.0;
    double left_contrib = 0.0;
    double right_contrib = 0.0;
    NodeStats left_stats, right_stats;

    bool beats(const BestChoice& other) const {
        if (total != other.total) return total < other.total;
        if (!other.is_split) return false;  // ties prefer the unsplit tree
        if (feature != other.feature) return feature < other.feature;
        if (threshold != other.threshold) return threshold < other.threshold;
        return pair_rank < other.pair_rank;
    }
};

}  // namespace

Tree fit(const Dataset& data, const ClassWeights& weights, const FitConfig& config,
         FitTrace* trace) {
    const int n = data.n();
    const int d = data.d();
    if (n < 1 || d < 1) throw std::invalid_argument("fit: empty dataset");
    if (config.lambda < 0.0) throw std::invalid_argument("fit: lambda must be >= 0");
    if (config.c0 <= 0.0) throw std::invalid_argument("fit: c0 must be > 0");
    const int max_leaves = config.max_leaves > 0 ? config.max_leaves : default_max_leaves(n);
    const double lambda = config.lambda;

    // one global sort per feature; node-local orders are extracted stably
    std::vector<std::vector<int>> global_order(d);
    for (int j = 0; j < d; ++j) {
        auto& ord = global_order[j];
        ord.resize(n);
        for (int i = 0; i < n; ++i) ord[i] = i;
        std::sort(ord.begin(), ord.end(), [&](int a, int b) {
            double va = data.at(a, j), vb = data.at(b, j);
            if (va != vb) return va < vb;
            return a < b;
        });
    }

    Tree tree;
    tree.dimension = d;
    tree.weights = weights;
    tree.lambda = lambda;
    tree.nodes.emplace_back();
    {
        TreeNode& root = tree.nodes[0];
        root.region = Box::unit(d);
        root.sample_indices.resize(n);
        for (int i = 0; i < n; ++i) root.sample_indices[i] = i;
        long c1 = 0;
        for (int v : data.y) c1 += v;
        root.stats = make_node_stats(n - c1, c1, weights, n);
        root.label = dominant_label(root.stats);
    }
    tree.leaf_count = 1;

    std::vector<std::vector<std::vector<int>>> orders;  // per node, per feature
    orders.push_back(global_order);

    std::vector<bool> used_feature(d, false);
    std::vector<int> minority_leaves;
    double surface_cur = 0.0, volume_cur = 0.0;
    if (tree.nodes[0].label == 1) {
        minority_leaves.push_back(0);
        surface_cur = box_surface(tree.nodes[0].region);
        volume_cur = box_volume(tree.nodes[0].region);
    }
    double total_signed =
        tree.nodes[0].stats.mass * signed_node_impurity(tree.nodes[0].stats, tree.nodes[0].label);

    std::deque<int> queue{0};
    std::vector<char> side(n, 0);  // scratch for partitioning

    while (!queue.empty() && tree.leaf_count < max_leaves) {
        const int id = queue.front();
        queue.pop_front();
        const long nprime = static_cast<long>(tree.nodes[id].sample_indices.size());
        if (nprime < 2) {
            tree.nodes[id].complete = true;
            orders[id].clear();
            continue;
        }

        const Box node_box = tree.nodes[id].region;
        const NodeStats node_stats = tree.nodes[id].stats;
        const int node_label = tree.nodes[id].label;
        const double node_contrib = node_stats.mass * signed_node_impurity(node_stats, node_label);
        const double base_signed = total_signed - node_contrib;
        const double unsplit_risk =
            total_signed + lambda * (volume_cur > 0.0 ? surface_cur / volume_cur : 0.0);

        BoxUnion other(d);
        for (int lid : minority_leaves) {
            if (lid != id) other.add(tree.nodes[lid].region);
        }
        double s_other, v_other;
        if (node_label == 1) {
            double contact = 0.0;
            for (const Box& b : other.boxes) contact += contact_area(node_box, b);
            s_other = surface_cur - box_surface(node_box) + 2.0 * contact;
            v_other = volume_cur - box_volume(node_box);
        } else {
            s_other = surface_cur;
            v_other = volume_cur;
        }

        BestChoice best;
        best.total = unsplit_risk;
        const double node_impur = node_impurity(node_stats);
        double delta_i0 = 0.0;

        // used features are scanned first so delta_i0 is complete before
        // any not-yet-used feature is gated
        for (int phase = 0; phase < 2; ++phase) {
            for (int j = 0; j < d; ++j) {
                if (used_feature[j] != (phase == 0)) continue;
                auto cands = thresholds_from_order(data, j, orders[id][j]);
                if (cands.empty()) continue;
                auto profiles = surface_profiles(node_box, other, j, s_other);
                double slab = 1.0;
                for (int k = 0; k < d; ++k) {
                    if (k != j) slab *= node_box.side(k);
                }
                const double lo = node_box.lower[j], hi = node_box.upper[j];

                for (const auto& c : cands) {
                    NodeStats ls = make_node_stats(c.left_n - c.left_c1, c.left_c1, weights, n);
                    NodeStats rs = make_node_stats(node_stats.count0 - ls.count0,
                                                   node_stats.count1 - ls.count1, weights, n);
                    if (config.feature_selection) {
                        double di = node_stats.mass * node_impur - ls.mass * node_impurity(ls) -
                                    rs.mass * node_impurity(rs);
                        if (phase == 0) {
                            delta_i0 = std::max(delta_i0, di);
                        } else if (!feature_gate(di, delta_i0, config.c0, lambda)) {
                            continue;
                        }
                    }
                    for (int rank = 0; rank < kPairCount; ++rank) {
                        const int zl = kPairLeft[rank], zr = kPairRight[rank];
                        const auto& prof =
                            profiles[static_cast<int>(assignment_of(zl, zr))];
                        double s = prof.value(c.threshold);
                        double v = v_other;
                        if (zl == 1) v += (c.threshold - lo) * slab;
                        if (zr == 1) v += (hi - c.threshold) * slab;
                        double lc = ls.mass * signed_node_impurity(ls, zl);
                        double rc = rs.mass * signed_node_impurity(rs, zr);
                        BestChoice cur;
                        cur.is_split = true;
                        cur.signed_impurity = base_signed + lc + rc;
                        cur.surface = s;
                        cur.volume = v;
                        cur.total = cur.signed_impurity + lambda * (v > 0.0 ? s / v : 0.0);
                        cur.feature = j;
                        cur.threshold = c.threshold;
                        cur.pair_rank = rank;
                        cur.left_contrib = lc;
                        cur.right_contrib = rc;
                        cur.left_stats = ls;
                        cur.right_stats = rs;
                        if (cur.beats(best)) best = cur;
                    }
                }
            }
        }

        if (!best.is_split || best.total >= unsplit_risk) {
            tree.nodes[id].complete = true;
            orders[id].clear();
            continue;
        }

        // accept the split
        const int j = best.feature;
        const double thr = best.threshold;
        const int left_id = static_cast<int>(tree.nodes.size());
        const int right_id = left_id + 1;
        tree.nodes.emplace_back();
        tree.nodes.emplace_back();
        orders.emplace_back(std::vector<std::vector<int>>(d));
        orders.emplace_back(std::vector<std::vector<int>>(d));

        TreeNode& parent = tree.nodes[id];
        TreeNode& left = tree.nodes[left_id];
        TreeNode& right = tree.nodes[right_id];

        left.region = parent.region;
        left.region.upper[j] = thr;
        right.region = parent.region;
        right.region.lower[j] = thr;
        left.label = kPairLeft[best.pair_rank];
        right.label = kPairRight[best.pair_rank];
        left.stats = best.left_stats;
        right.stats = best.right_stats;

        for (int i : parent.sample_indices) side[i] = data.at(i, j) <= thr ? 1 : 2;
        for (int i : parent.sample_indices) {
            (side[i] == 1 ? left : right).sample_indices.push_back(i);
        }
        for (int f = 0; f < d; ++f) {
            orders[left_id][f].reserve(left.sample_indices.size());
            orders[right_id][f].reserve(right.sample_indices.size());
            for (int i : orders[id][f]) {
                orders[side[i] == 1 ? left_id : right_id][f].push_back(i);
            }
        }
        orders[id].clear();

        parent.feature = j;
        parent.threshold = thr;
        parent.left = left_id;
        parent.right = right_id;

        total_signed = base_signed + best.left_contrib + best.right_contrib;
        surface_cur = best.surface;
        volume_cur = best.volume;
        minority_leaves.erase(std::remove(minority_leaves.begin(), minority_leaves.end(), id),
                              minority_leaves.end());
        if (left.label == 1) minority_leaves.push_back(left_id);
        if (right.label == 1) minority_leaves.push_back(right_id);
        used_feature[j] = true;
        tree.leaf_count++;
        queue.push_back(left_id);
        queue.push_back(right_id);

        if (trace) {
            FitTraceStep step;
            step.node = id;
            step.chosen.feature = j;
            step.chosen.threshold = thr;
            step.chosen.left_label = left.label;
            step.chosen.right_label = right.label;
            step.chosen.risk.signed_impurity = best.signed_impurity;
            step.chosen.risk.svr = best.volume > 0.0 ? best.surface / best.volume : 0.0;
            step.chosen.risk.lambda = lambda;
            step.chosen.risk.total = best.total;
            step.unsplit_risk = unsplit_risk;
            step.risk_after = best.total;
            trace->steps.push_back(step);
        }
    }

    return tree;
}

std::vector<std::pair<int, double>> candidate_splits(const Tree& t, int node_id,
                                                     const Dataset& data) {
    const TreeNode& node = t.nodes.at(node_id);
    std::vector<std::pair<int, double>> out;
    if (node.sample_indices.size() < 2) return out;
    for (int j = 0; j < t.dimension; ++j) {
        std::vector<int> order = node.sample_indices;
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            double va = data.at(a, j), vb = data.at(b, j);
            if (va != vb) return va < vb;
            return a < b;
        });
        for (auto& c : thresholds_from_order(data, j, order)) {
            out.emplace_back(j, c.threshold);
        }
    }
    return out;
}

namespace {

// stats of the two children of a proposed split
std::pair<NodeStats, NodeStats> split_counts(const Tree& t, const TreeNode& node,
                                             const Dataset& data, int feature,
                                             double threshold) {
    long l0 = 0, l1 = 0, r0 = 0, r1 = 0;
    for (int i : node.sample_indices) {
        bool left = data.at(i, feature) <= threshold;
        if (data.y[i] == 1) {
            (left ? l1 : r1)++;
        } else {
            (left ? l0 : r0)++;
        }
    }
    return {make_node_stats(l0, l1, t.weights, data.n()),
            make_node_stats(r0, r1, t.weights, data.n())};
}

}  // namespace

RiskBreakdown evaluate_candidate(const Tree& t, int node_id, const SplitCandidate& cand,
                                 const Dataset& data) {
    const TreeNode& node = t.nodes.at(node_id);
    if (!node.is_leaf()) throw std::invalid_argument("evaluate_candidate: node is not a leaf");
    if (cand.feature < 0 || cand.feature >= t.dimension) {
        throw std::invalid_argument("evaluate_candidate: feature out of range");
    }

    double base_signed = 0.0;
    BoxUnion other(t.dimension);
    for (size_t k = 0; k < t.nodes.size(); ++k) {
        const TreeNode& nd = t.nodes[k];
        if (!nd.is_leaf() || static_cast<int>(k) == node_id) continue;
        base_signed += nd.stats.mass * signed_node_impurity(nd.stats, nd.label);
        if (nd.label == 1) other.add(nd.region);
    }
    double v_other = union_volume(other);

    auto [ls, rs] = split_counts(t, node, data, cand.feature, cand.threshold);
    auto profiles = surface_profiles(node.region, other, cand.feature);
    const auto& prof = profiles[static_cast<int>(assignment_of(cand.left_label, cand.right_label))];

    double slab = 1.0;
    for (int k = 0; k < t.dimension; ++k) {
        if (k != cand.feature) slab *= node.region.side(k);
    }
    double s = prof.value(cand.threshold);
    double v = v_other;
    if (cand.left_label == 1) v += (cand.threshold - node.region.lower[cand.feature]) * slab;
    if (cand.right_label == 1) v += (node.region.upper[cand.feature] - cand.threshold) * slab;

    RiskBreakdown r;
    r.lambda = t.lambda;
    r.signed_impurity = base_signed + ls.mass * signed_node_impurity(ls, cand.left_label) +
                        rs.mass * signed_node_impurity(rs, cand.right_label);
    r.svr = v > 0.0 ? s / v : 0.0;
    r.total = r.signed_impurity + r.lambda * r.svr;
    return r;
}

double impurity_decrease(const Tree& t, int node_id, int feature, double threshold,
                         const Dataset& data) {
    const TreeNode& node = t.nodes.at(node_id);
    auto [ls, rs] = split_counts(t, node, data, feature, threshold);
    return node.stats.mass * node_impurity(node.stats) - ls.mass * node_impurity(ls) -
           rs.mass * node_impurity(rs);
}

Tree apply_split(const Tree& t, int node_id, const SplitCandidate& cand, const Dataset& data) {
    Tree out = t;
    TreeNode& node = out.nodes.at(node_id);
    if (!node.is_leaf()) throw std::invalid_argument("apply_split: node is not a leaf");
    const int left_id = static_cast<int>(out.nodes.size());
    const int right_id = left_id + 1;
    out.nodes.emplace_back();
    out.nodes.emplace_back();
    TreeNode& parent = out.nodes[node_id];
    TreeNode& left = out.nodes[left_id];
    TreeNode& right = out.nodes[right_id];
    left.region = parent.region;
    left.region.upper[cand.feature] = cand.threshold;
    right.region = parent.region;
    right.region.lower[cand.feature] = cand.threshold;
    left.label = cand.left_label;
    right.label = cand.right_label;
    parent.feature = cand.feature;
    parent.threshold = cand.threshold;
    parent.left = left_id;
    parent.right = right_id;
    out.leaf_count++;
    populate_stats(out, data);
    return out;
}

}  // namespace svt
