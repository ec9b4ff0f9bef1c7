#pragma once

#include <functional>
#include <vector>

#include "svt/data.hpp"
#include "svt/tree.hpp"

namespace svt {

// Gini CART on the (resampled) empirical measure: greedy impurity-decrease
// splits at midpoints, grown until leaves are pure or unsplittable; leaf
// label = majority class. Optional positive integer sample weights.
Tree cart_fit(const Dataset& data, const std::vector<long>& sample_weights = {});

// Nested weakest-link subtree sequence with its critical alphas.
struct PruneSequence {
    std::vector<double> alphas;  // strictly increasing, starting at 0
    std::vector<Tree> trees;     // trees[i+1] is a subtree of trees[i]
};

// Uses the tree's stored stats (as populated by cart_fit on the data it was
// trained on); pass `data` to recompute them instead.
PruneSequence prune_path(const Tree& t, const Dataset* data = nullptr);

// Smallest subtree in the weakest-link sequence whose links all have
// g > alpha (collapses while min g <= alpha).
Tree prune_at(const Tree& t, double alpha);

struct PrunedSelection {
    double alpha = 0.0;
    Tree tree;
    double cv_f_measure = 0.0;
};

// Picks the pruning alpha maximizing pooled inner-CV F-measure over the
// candidate values (geometric midpoints of consecutive critical alphas,
// ties -> smaller alpha), then prunes the reference tree at it.
// fit_tree(subset, fold) trains a tree on `subset`; fold = -1 marks the
// reference fit on the whole training set.
PrunedSelection select_pruned(const Dataset& train,
                              const std::vector<std::vector<int>>& val_folds,
                              const std::function<Tree(const Dataset&, int)>& fit_tree);

}  // namespace svt
