#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sockscope/forest.hpp"

namespace sockscope {

// Mann-Whitney ROC AUC: the probability that a random positive outranks a
// random negative, ties counting one half. Throws unless both classes occur.
double roc_auc(const std::vector<double>& scores, const std::vector<int>& labels);

struct EvalReport {
    int folds = 0;
    std::vector<double> per_fold_auc;
    double mean_auc = 0;
    std::map<std::string, double> importances;  // mean impurity decrease
    ForestParams params;
    std::uint64_t seed = 0;
};

// Stratified k-fold cross validation with a seeded shuffle. Rows sharing a
// group_key always land in the same fold (for the pair task this keeps every
// S1 out of both sides of a split). Requires at least k rows per class.
EvalReport cross_validate(const Dataset& dataset, int folds, const ForestParams& params,
                          std::uint64_t seed, int threads = 1);

struct AblationReport {
    std::map<std::string, EvalReport> per_set;        // each named set alone
    EvalReport all_features;                          // union
    std::vector<std::string> forward_selection_order; // greedy set order
    std::vector<double> forward_selection_auc;        // cumulative mean AUC
};

// Cross-validates each named feature set alone, the union, and a greedy
// forward selection over sets.
AblationReport feature_set_ablation(const Dataset& dataset, const std::vector<std::string>& sets,
                                    int folds, const ForestParams& params, std::uint64_t seed,
                                    int threads = 1);

// Returns a copy of the dataset with labels permuted (seeded); the
// permutation-null baseline for sanity checks.
Dataset permute_labels(const Dataset& dataset, std::uint64_t seed);

}  // namespace sockscope
