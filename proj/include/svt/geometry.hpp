#pragma once

#include <vector>

namespace svt {

// Axis-aligned hyperrectangle in the unit cube [0,1]^d.
struct Box {
    std::vector<double> lower;
    std::vector<double> upper;

    Box() = default;
    Box(std::vector<double> lo, std::vector<double> hi);

    static Box unit(int dim);

    int dim() const { return static_cast<int>(lower.size()); }
    double side(int j) const { return upper[j] - lower[j]; }
    bool contains(const std::vector<double>& x) const;  // closed box
};

// Finite union of interior-disjoint boxes. Disjointness is the caller's
// contract; union_surface/union_volume verify it and throw on violation.
struct BoxUnion {
    int dimension = 0;
    std::vector<Box> boxes;

    BoxUnion() = default;
    explicit BoxUnion(int dim) : dimension(dim) {}
    BoxUnion(int dim, std::vector<Box> b);

    bool empty() const { return boxes.empty(); }
    void add(Box b);
};

double box_volume(const Box& b);
// 2 * sum_j prod_{k != j} side_k  (the (d-1)-measure of the boundary)
double box_surface(const Box& b);

// Volume of a ∩ b (0 if disjoint).
double intersection_volume(const Box& a, const Box& b);

// (d-1)-measure of the shared face between two interior-disjoint boxes.
double contact_area(const Box& a, const Box& b);

// Boundary measure of the union; faces lying on the domain boundary count.
double union_surface(const BoxUnion& u);
double union_volume(const BoxUnion& u);

// surface/volume, with svr(empty or zero-volume set) := 0.
double svr(const BoxUnion& u);

// Rasterization cross-check: counts inside/outside cell faces on a
// resolution^d grid. Exact when all faces are grid-aligned.
double grid_surface_oracle(const BoxUnion& u, int resolution);

// The four ways to label the two children of a split.
enum class LabelAssignment {
    left1_right0 = 0,
    left0_right1 = 1,
    both0 = 2,
    both1 = 3,
};

// Piecewise-linear surface of the minority decision set as a function of the
// split threshold x on one feature. Segments are closed on the left:
// segment i covers [breakpoints[i-1], breakpoints[i]).
struct SurfaceProfile {
    int feature = -1;
    LabelAssignment assignment = LabelAssignment::both0;
    std::vector<double> breakpoints;  // sorted, strictly inside the node extent
    std::vector<double> slopes;       // breakpoints.size() + 1 entries
    std::vector<double> intercepts;

    double value(double x) const;
    // Index of the segment containing x; useful for in-order batch walks.
    int segment_of(double x) const;
};

// Profiles of union_surface(other_minority ∪ child-with-label-1) against the
// threshold on `feature`, one per label assignment (both0/both1 constant).
// Valid for thresholds strictly inside the node's extent on `feature`.
std::vector<SurfaceProfile> surface_profiles(const Box& node_box,
                                             const BoxUnion& other_minority,
                                             int feature);

// Batch variant: takes union_surface(other_minority) precomputed and skips
// the pairwise disjointness verification.
std::vector<SurfaceProfile> surface_profiles(const Box& node_box,
                                             const BoxUnion& other_minority,
                                             int feature, double other_surface);

}  // namespace svt
