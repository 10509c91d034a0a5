#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sockscope/features.hpp"

namespace sockscope {

struct ForestParams {
    int n_trees = 100;
    int max_depth = 0;           // 0 = unlimited
    int features_per_split = 0;  // 0 = ceil(sqrt(F))
    bool bootstrap = true;
    std::uint64_t seed = 0;
};

// Binary decision tree over optional-valued features. Absent values follow
// the split's learned default direction (the side holding the majority of
// the present training rows).
struct TreeNode {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0;
    bool default_left = true;
    int left = -1;
    int right = -1;
    double leaf_value = 0;  // positive-class fraction
};

struct Tree {
    std::vector<TreeNode> nodes;  // nodes[0] is the root
};

struct ForestModel {
    ForestParams params;
    FeatureSchema schema;
    std::vector<Tree> trees;
    std::vector<double> importances;  // mean impurity decrease per feature, sums to 1

    double predict(const FeatureVector& row) const;
};

// Gini-criterion random forest. Deterministic given the seed; per-tree RNG
// streams make parallel and serial training agree. Throws when the dataset
// holds a single class.
ForestModel train_forest(const Dataset& dataset, const ForestParams& params, int threads = 1);

// Restrict training and prediction to a feature subset (used by per-set
// evaluation); indices refer to the dataset schema.
ForestModel train_forest_subset(const Dataset& dataset, const ForestParams& params,
                                const std::vector<std::size_t>& feature_subset, int threads = 1);

// Versioned, self-describing JSON serialization. Loading verifies the format
// version; predicting through a model whose schema hash differs from the
// vectors' schema is refused.
void save_model(const ForestModel& model, const std::filesystem::path& path);
ForestModel load_model(const std::filesystem::path& path);

std::vector<double> predict_scores(const ForestModel& model, const Dataset& dataset);

}  // namespace sockscope
