#include "svt/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

namespace svt {

namespace {

constexpr double kDisjointTol = 1e-12;

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

Box::Box(std::vector<double> lo, std::vector<double> hi)
    : lower(std::move(lo)), upper(std::move(hi)) {
    require(lower.size() == upper.size(), "Box: lower/upper size mismatch");
    require(!lower.empty(), "Box: dimension must be >= 1");
    for (size_t j = 0; j < lower.size(); ++j) {
        require(lower[j] <= upper[j], "Box: lower > upper");
        require(lower[j] >= 0.0 && upper[j] <= 1.0, "Box: coordinates outside [0,1]");
    }
}

Box Box::unit(int dim) {
    return Box(std::vector<double>(dim, 0.0), std::vector<double>(dim, 1.0));
}

bool Box::contains(const std::vector<double>& x) const {
    require(static_cast<int>(x.size()) == dim(), "Box::contains: dimension mismatch");
    for (int j = 0; j < dim(); ++j) {
        if (x[j] < lower[j] || x[j] > upper[j]) return false;
    }
    return true;
}

BoxUnion::BoxUnion(int dim, std::vector<Box> b) : dimension(dim), boxes(std::move(b)) {
    for (const Box& bx : boxes) {
        require(bx.dim() == dimension, "BoxUnion: box dimension mismatch");
    }
}

void BoxUnion::add(Box b) {
    require(b.dim() == dimension, "BoxUnion::add: box dimension mismatch");
    boxes.push_back(std::move(b));
}

double box_volume(const Box& b) {
    double v = 1.0;
    for (int j = 0; j < b.dim(); ++j) v *= b.side(j);
    return v;
}

double box_surface(const Box& b) {
    const int d = b.dim();
    double total = 0.0;
    for (int j = 0; j < d; ++j) {
        double face = 1.0;
        for (int k = 0; k < d; ++k) {
            if (k != j) face *= b.side(k);
        }
        total += face;
    }
    return 2.0 * total;
}

double intersection_volume(const Box& a, const Box& b) {
    require(a.dim() == b.dim(), "intersection_volume: dimension mismatch");
    double v = 1.0;
    for (int j = 0; j < a.dim(); ++j) {
        double w = std::min(a.upper[j], b.upper[j]) - std::max(a.lower[j], b.lower[j]);
        if (w <= 0.0) return 0.0;
        v *= w;
    }
    return v;
}

double contact_area(const Box& a, const Box& b) {
    require(a.dim() == b.dim(), "contact_area: dimension mismatch");
    const int d = a.dim();
    double total = 0.0;
    for (int j = 0; j < d; ++j) {
        if (a.upper[j] == b.lower[j] || b.upper[j] == a.lower[j]) {
            double area = 1.0;
            for (int k = 0; k < d; ++k) {
                if (k == j) continue;
                double w = std::min(a.upper[k], b.upper[k]) - std::max(a.lower[k], b.lower[k]);
                if (w <= 0.0) {
                    area = 0.0;
                    break;
                }
                area *= w;
            }
            total += area;
        }
    }
    return total;
}

namespace {

void check_disjoint(const BoxUnion& u) {
    const size_t m = u.boxes.size();
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = i + 1; j < m; ++j) {
            if (intersection_volume(u.boxes[i], u.boxes[j]) > kDisjointTol) {
                throw std::invalid_argument("BoxUnion: boxes have overlapping interiors");
            }
        }
    }
}

}  // namespace

double union_surface(const BoxUnion& u) {
    if (u.boxes.empty()) return 0.0;
    check_disjoint(u);
    double s = 0.0;
    for (const Box& b : u.boxes) s += box_surface(b);
    const size_t m = u.boxes.size();
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = i + 1; j < m; ++j) {
            s -= 2.0 * contact_area(u.boxes[i], u.boxes[j]);
        }
    }
    return s;
}

double union_volume(const BoxUnion& u) {
    if (u.boxes.empty()) return 0.0;
    check_disjoint(u);
    double v = 0.0;
    for (const Box& b : u.boxes) v += box_volume(b);
    return v;
}

double svr(const BoxUnion& u) {
    if (u.boxes.empty()) return 0.0;
    double v = union_volume(u);
    if (v <= 0.0) return 0.0;
    return union_surface(u) / v;
}

double grid_surface_oracle(const BoxUnion& u, int resolution) {
    require(resolution >= 2, "grid_surface_oracle: resolution must be >= 2");
    const int d = u.dimension;
    require(d >= 1, "grid_surface_oracle: dimension must be >= 1");

    uint64_t cells = 1;
    for (int j = 0; j < d; ++j) {
        cells *= static_cast<uint64_t>(resolution);
        require(cells <= 50'000'000ULL, "grid_surface_oracle: grid too large");
    }
    if (u.boxes.empty()) return 0.0;

    const double h = 1.0 / resolution;
    std::vector<char> inside(cells, 0);

    // stride of axis j in the flattened index
    std::vector<uint64_t> stride(d, 1);
    for (int j = 1; j < d; ++j) stride[j] = stride[j - 1] * resolution;

    // mark cells whose center lies in a box: (i + 0.5) * h in [lo, hi]
    std::vector<int> first(d), last(d), idx(d);
    for (const Box& b : u.boxes) {
        bool empty_range = false;
        for (int j = 0; j < d; ++j) {
            first[j] = static_cast<int>(std::ceil(b.lower[j] * resolution - 0.5));
            last[j] = static_cast<int>(std::floor(b.upper[j] * resolution - 0.5));
            first[j] = std::max(first[j], 0);
            last[j] = std::min(last[j], resolution - 1);
            if (first[j] > last[j]) empty_range = true;
        }
        if (empty_range) continue;
        idx = first;
        for (;;) {
            uint64_t c = 0;
            for (int j = 0; j < d; ++j) c += static_cast<uint64_t>(idx[j]) * stride[j];
            inside[c] = 1;
            int j = 0;
            while (j < d && ++idx[j] > last[j]) {
                idx[j] = first[j];
                ++j;
            }
            if (j == d) break;
        }
    }

    uint64_t faces = 0;
    for (uint64_t c = 0; c < cells; ++c) {
        if (!inside[c]) continue;
        uint64_t rem = c;
        for (int j = 0; j < d; ++j) {
            idx[j] = static_cast<int>(rem % resolution);
            rem /= resolution;
        }
        for (int j = 0; j < d; ++j) {
            if (idx[j] == 0 || !inside[c - stride[j]]) ++faces;
            if (idx[j] == resolution - 1 || !inside[c + stride[j]]) ++faces;
        }
    }
    return static_cast<double>(faces) * std::pow(h, d - 1);
}

double SurfaceProfile::value(double x) const {
    int s = segment_of(x);
    return slopes[s] * x + intercepts[s];
}

int SurfaceProfile::segment_of(double x) const {
    auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), x);
    return static_cast<int>(it - breakpoints.begin());
}

namespace {

// Assembles a continuous piecewise-linear function from slope-change events.
struct ProfileBuilder {
    double anchor_x = 0.0;
    double anchor_value = 0.0;
    double base_slope = 0.0;
    std::map<double, double> dslope;  // position -> slope change

    void add_ramp(double at, double ds) { dslope[at] += ds; }

    SurfaceProfile build(int feature, LabelAssignment assign, double lo, double hi) const {
        SurfaceProfile p;
        p.feature = feature;
        p.assignment = assign;
        double slope = base_slope;
        double value = anchor_value;
        // fold events at or before the left end into the initial slope
        auto it = dslope.begin();
        for (; it != dslope.end() && it->first <= lo; ++it) slope += it->second;
        p.slopes.push_back(slope);
        p.intercepts.push_back(value - slope * anchor_x);
        for (; it != dslope.end(); ++it) {
            if (it->first >= hi) break;
            if (it->second == 0.0) continue;
            double bx = it->first;
            value = p.slopes.back() * bx + p.intercepts.back();
            slope += it->second;
            p.breakpoints.push_back(bx);
            p.slopes.push_back(slope);
            p.intercepts.push_back(value - slope * bx);
        }
        return p;
    }
};

double overlap(const Box& a, const Box& b, int axis) {
    return std::min(a.upper[axis], b.upper[axis]) - std::max(a.lower[axis], b.lower[axis]);
}

}  // namespace

std::vector<SurfaceProfile> surface_profiles(const Box& node_box,
                                             const BoxUnion& other_minority,
                                             int feature) {
    for (const Box& b : other_minority.boxes) {
        if (intersection_volume(node_box, b) > kDisjointTol) {
            throw std::invalid_argument("surface_profiles: node overlaps a minority box");
        }
    }
    return surface_profiles(node_box, other_minority, feature, union_surface(other_minority));
}

std::vector<SurfaceProfile> surface_profiles(const Box& node_box,
                                             const BoxUnion& other_minority,
                                             int feature, double other_surface) {
    const int d = node_box.dim();
    require(feature >= 0 && feature < d, "surface_profiles: feature out of range");
    require(other_minority.boxes.empty() || other_minority.dimension == d,
            "surface_profiles: dimension mismatch");

    const double lo = node_box.lower[feature];
    const double hi = node_box.upper[feature];
    const double s_other = other_surface;

    // cross-section area P and perimeter factor Q of the moving sub-box
    double cross_area = 1.0;
    double perim = 0.0;
    for (int k = 0; k < d; ++k) {
        if (k == feature) continue;
        cross_area *= node_box.side(k);
        double p = 1.0;
        for (int l = 0; l < d; ++l) {
            if (l != feature && l != k) p *= node_box.side(l);
        }
        perim += p;
    }

    ProfileBuilder left, right;
    left.anchor_x = lo;
    left.base_slope = 2.0 * perim;
    right.anchor_x = lo;
    right.base_slope = -2.0 * perim;

    // contact terms, split into: constant contacts on the fixed j-faces, and
    // ramps from contacts on the node's side faces (axes != feature), whose
    // area grows linearly while the threshold sweeps the box's j-window.
    double left_const_contact = 0.0;   // at x = lo
    double right_const_contact = 0.0;  // at x = lo (includes fully-open windows)
    double full_contact = 0.0;         // node vs others, for the both1 constant
    for (const Box& b : other_minority.boxes) {
        full_contact += contact_area(node_box, b);
        // fixed faces of the children on axis `feature`
        double theta = 1.0;
        for (int k = 0; k < d; ++k) {
            if (k == feature) continue;
            double w = overlap(node_box, b, k);
            if (w <= 0.0) {
                theta = 0.0;
                break;
            }
            theta *= w;
        }
        if (theta > 0.0) {
            if (b.upper[feature] == lo) left_const_contact += theta;
            if (b.lower[feature] == hi) right_const_contact += theta;
        }
        // side-face contacts: window of b's extent on `feature` inside the node
        double s = std::max(lo, b.lower[feature]);
        double e = std::min(hi, b.upper[feature]);
        if (s >= e) continue;
        for (int k = 0; k < d; ++k) {
            if (k == feature) continue;
            if (b.upper[k] != node_box.lower[k] && b.lower[k] != node_box.upper[k]) continue;
            double cperp = 1.0;
            for (int l = 0; l < d; ++l) {
                if (l == feature || l == k) continue;
                double w = overlap(node_box, b, l);
                if (w <= 0.0) {
                    cperp = 0.0;
                    break;
                }
                cperp *= w;
            }
            if (cperp <= 0.0) continue;
            // left child: contact grows with slope cperp on [s, e]
            left.add_ramp(s, -2.0 * cperp);
            left.add_ramp(e, 2.0 * cperp);
            // right child: contact shrinks with slope -cperp on [s, e]
            right.add_ramp(s, 2.0 * cperp);
            right.add_ramp(e, -2.0 * cperp);
            // right child's contact at x = lo spans the whole window
            right_const_contact += cperp * (e - s);
        }
    }

    // surfaces of the degenerate children at x = lo
    left.anchor_value = s_other + 2.0 * cross_area - 2.0 * left_const_contact;
    right.anchor_value =
        s_other + 2.0 * cross_area + 2.0 * perim * (hi - lo) - 2.0 * right_const_contact;

    std::vector<SurfaceProfile> out;
    out.push_back(left.build(feature, LabelAssignment::left1_right0, lo, hi));
    out.push_back(right.build(feature, LabelAssignment::left0_right1, lo, hi));

    SurfaceProfile both0;
    both0.feature = feature;
    both0.assignment = LabelAssignment::both0;
    both0.slopes = {0.0};
    both0.intercepts = {s_other};
    out.push_back(both0);

    SurfaceProfile both1;
    both1.feature = feature;
    both1.assignment = LabelAssignment::both1;
    both1.slopes = {0.0};
    both1.intercepts = {s_other + box_surface(node_box) - 2.0 * full_contact};
    out.push_back(both1);
    return out;
}

}  // namespace svt
