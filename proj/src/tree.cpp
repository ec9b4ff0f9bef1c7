#include "svt/tree.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace svt {

ClassWeights derive_class_weights(long n0, long n1) {
    if (n1 < 1) throw std::invalid_argument("derive_class_weights: no minority samples");
    if (n0 < n1) throw std::invalid_argument("derive_class_weights: n0 must be >= n1");
    int alpha = static_cast<int>(n0 / n1);
    if (alpha < 1) alpha = 1;
    return make_class_weights(alpha, n0, n1);
}

ClassWeights make_class_weights(int alpha, long n0, long n1) {
    if (alpha < 1) throw std::invalid_argument("class weights: alpha must be >= 1");
    ClassWeights w;
    w.alpha = alpha;
    w.w0 = static_cast<double>(n0 + n1) / (static_cast<double>(n0) + static_cast<double>(alpha) * n1);
    return w;
}

NodeStats make_node_stats(long count0, long count1, const ClassWeights& w, long n_total) {
    NodeStats s;
    s.count0 = count0;
    s.count1 = count1;
    double wc = static_cast<double>(count0) + static_cast<double>(w.alpha) * count1;
    s.mass = w.w0 * wc / static_cast<double>(n_total);
    s.eta = wc > 0.0 ? static_cast<double>(w.alpha) * count1 / wc : 0.0;
    return s;
}

double gini(double p0, double p1) {
    if (p0 < 0.0 || p1 < 0.0 || std::abs(p0 + p1 - 1.0) > 1e-9) {
        throw std::invalid_argument("gini: (p0, p1) must lie on the simplex");
    }
    return 1.0 - (p0 * p0 + p1 * p1);  // grouped so gini is exactly symmetric
}

double node_impurity(const NodeStats& s) {
    if (s.mass <= 0.0) return 0.0;
    return 2.0 * s.eta * (1.0 - s.eta);
}

int dominant_label(const NodeStats& s) { return s.eta >= 0.5 ? 1 : 0; }

double signed_node_impurity(const NodeStats& s, int label) {
    if (s.mass <= 0.0) return 0.0;
    double i = node_impurity(s);
    return label == dominant_label(s) ? i : 1.0 - i;
}

int Tree::predict(const double* x, int dim) const {
    if (dim != dimension) throw std::invalid_argument("predict: dimension mismatch");
    if (nodes.empty()) throw std::logic_error("predict: empty tree");
    int id = 0;
    while (!nodes[id].is_leaf()) {
        const TreeNode& nd = nodes[id];
        id = x[nd.feature] <= nd.threshold ? nd.left : nd.right;
    }
    return nodes[id].label;
}

int Tree::predict(const std::vector<double>& x) const {
    return predict(x.data(), static_cast<int>(x.size()));
}

std::vector<int> Tree::predict_all(const Dataset& data) const {
    std::vector<int> out(data.n());
    for (int i = 0; i < data.n(); ++i) out[i] = predict(data.row(i), data.d());
    return out;
}

std::vector<int> Tree::leaf_ids() const {
    std::vector<int> ids;
    for (size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].is_leaf()) ids.push_back(static_cast<int>(i));
    }
    return ids;
}

BoxUnion Tree::minority_region() const {
    BoxUnion u(dimension);
    for (const TreeNode& nd : nodes) {
        if (nd.is_leaf() && nd.label == 1) u.add(nd.region);
    }
    return u;
}

std::vector<int> Tree::features_used() const {
    std::vector<bool> used(dimension, false);
    for (const TreeNode& nd : nodes) {
        if (!nd.is_leaf()) used[nd.feature] = true;
    }
    std::vector<int> out;
    for (int j = 0; j < dimension; ++j) {
        if (used[j]) out.push_back(j);
    }
    return out;
}

void populate_stats(Tree& t, const Dataset& data) {
    if (data.d() != t.dimension) throw std::invalid_argument("populate_stats: dimension mismatch");
    for (TreeNode& nd : t.nodes) nd.sample_indices.clear();
    std::vector<std::pair<long, long>> counts(t.nodes.size(), {0, 0});
    for (int i = 0; i < data.n(); ++i) {
        const double* x = data.row(i);
        int id = 0;
        for (;;) {
            t.nodes[id].sample_indices.push_back(i);
            if (data.y[i] == 1) counts[id].second++; else counts[id].first++;
            if (t.nodes[id].is_leaf()) break;
            id = x[t.nodes[id].feature] <= t.nodes[id].threshold ? t.nodes[id].left
                                                                 : t.nodes[id].right;
        }
    }
    for (size_t k = 0; k < t.nodes.size(); ++k) {
        t.nodes[k].stats = make_node_stats(counts[k].first, counts[k].second, t.weights, data.n());
    }
}

double tree_signed_impurity(const Tree& t, const Dataset& data) {
    Tree copy = t;
    populate_stats(copy, data);
    double total = 0.0;
    for (const TreeNode& nd : copy.nodes) {
        if (nd.is_leaf()) total += nd.stats.mass * signed_node_impurity(nd.stats, nd.label);
    }
    return total;
}

RiskBreakdown risk(const Tree& t, const Dataset& data) {
    RiskBreakdown r;
    r.lambda = t.lambda;
    r.signed_impurity = tree_signed_impurity(t, data);
    r.svr = svr(t.minority_region());
    r.total = r.signed_impurity + r.lambda * r.svr;
    return r;
}

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_node(const Tree& t, int id, std::string& out) {
    const TreeNode& nd = t.nodes[id];
    if (nd.is_leaf()) {
        out += "{\"label\":";
        out += std::to_string(nd.label);
        out += "}";
        return;
    }
    out += "{\"feature\":";
    out += std::to_string(nd.feature);
    out += ",\"threshold\":";
    out += fmt17(nd.threshold);
    out += ",\"left\":";
    write_node(t, nd.left, out);
    out += ",\"right\":";
    write_node(t, nd.right, out);
    out += "}";
}

int read_node(const nlohmann::json& j, Tree& t, const Box& region) {
    int id = static_cast<int>(t.nodes.size());
    t.nodes.emplace_back();
    t.nodes[id].region = region;
    if (j.contains("label")) {
        t.nodes[id].label = j.at("label").get<int>();
        if (t.nodes[id].label != 0 && t.nodes[id].label != 1) {
            throw std::runtime_error("tree json: label must be 0 or 1");
        }
        return id;
    }
    int feature = j.at("feature").get<int>();
    double threshold = j.at("threshold").get<double>();
    if (feature < 0 || feature >= t.dimension) {
        throw std::runtime_error("tree json: feature index out of range");
    }
    t.nodes[id].feature = feature;
    t.nodes[id].threshold = threshold;
    Box left = region, right = region;
    left.upper[feature] = threshold;
    right.lower[feature] = threshold;
    int l = read_node(j.at("left"), t, left);
    t.nodes[id].left = l;
    int r = read_node(j.at("right"), t, right);
    t.nodes[id].right = r;
    return id;
}

}  // namespace

std::string tree_to_json(const Tree& t) {
    std::string out = "{\"format\":\"svrtree-model\",\"version\":1,\"dimension\":";
    out += std::to_string(t.dimension);
    out += ",\"lambda\":";
    out += fmt17(t.lambda);
    out += ",\"weights\":{\"alpha\":";
    out += std::to_string(t.weights.alpha);
    out += ",\"w0\":";
    out += fmt17(t.weights.w0);
    out += "},\"root\":";
    write_node(t, 0, out);
    out += "}\n";
    return out;
}

Tree tree_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    Tree t;
    t.dimension = j.at("dimension").get<int>();
    if (t.dimension < 1) throw std::runtime_error("tree json: dimension must be >= 1");
    t.lambda = j.at("lambda").get<double>();
    t.weights.alpha = j.at("weights").at("alpha").get<int>();
    t.weights.w0 = j.at("weights").at("w0").get<double>();
    read_node(j.at("root"), t, Box::unit(t.dimension));
    t.leaf_count = static_cast<int>(t.leaf_ids().size());
    return t;
}

void save_tree(const Tree& t, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << tree_to_json(t);
}

Tree load_tree(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return tree_from_json(ss.str());
}

}  // namespace svt
