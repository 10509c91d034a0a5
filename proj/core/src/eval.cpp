#include "sockscope/eval.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "sockscope/util.hpp"

namespace sockscope {

double roc_auc(const std::vector<double>& scores, const std::vector<int>& labels) {
    if (scores.size() != labels.size())
        throw std::invalid_argument("roc_auc: scores/labels size mismatch");
    std::size_t n_pos = 0, n_neg = 0;
    for (int l : labels) (l ? n_pos : n_neg) += 1;
    if (n_pos == 0 || n_neg == 0)
        throw std::invalid_argument("roc_auc: both classes must be present");

    // rank-sum with average ranks over ties
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    double rank_sum_pos = 0;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
        const double avg_rank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j));
        for (std::size_t k = i; k < j; ++k)
            if (labels[order[k]]) rank_sum_pos += avg_rank;
        i = j;
    }
    const double np = static_cast<double>(n_pos);
    const double nn = static_cast<double>(n_neg);
    return (rank_sum_pos - np * (np + 1.0) / 2.0) / (np * nn);
}

namespace {

// Deterministic grouped, stratified fold assignment: shuffle group keys,
// then deal them round-robin within each class mix so folds stay balanced.
std::vector<int> assign_folds(const Dataset& dataset, int folds, std::uint64_t seed) {
    struct Group {
        std::string key;
        std::vector<std::size_t> rows;
        std::size_t positives = 0;
    };
    std::map<std::string, Group> groups;
    for (std::size_t i = 0; i < dataset.rows.size(); ++i) {
        Group& g = groups[dataset.rows[i].group_key.empty() ? dataset.rows[i].unit_id
                                                            : dataset.rows[i].group_key];
        g.rows.push_back(i);
        g.positives += static_cast<std::size_t>(dataset.rows[i].label);
    }

    std::vector<Group> shuffled;
    shuffled.reserve(groups.size());
    for (auto& [key, g] : groups) {
        g.key = key;
        shuffled.push_back(std::move(g));
    }
    Rng rng(seed);
    rng.shuffle(shuffled);

    // Deal per stratum: pure-negative, pure-positive and mixed groups each
    // rotate through folds independently.
    std::vector<int> fold_of(dataset.rows.size(), 0);
    int next_neg = 0, next_pos = 0, next_mix = 0;
    for (const Group& g : shuffled) {
        int* counter = &next_mix;
        if (g.positives == 0) counter = &next_neg;
        else if (g.positives == g.rows.size()) counter = &next_pos;
        const int fold = *counter % folds;
        ++*counter;
        for (std::size_t row : g.rows) fold_of[row] = fold;
    }
    return fold_of;
}

Dataset subset_rows(const Dataset& dataset, const std::vector<std::size_t>& rows) {
    Dataset out;
    out.schema = dataset.schema;
    out.provenance = dataset.provenance;
    out.rows.reserve(rows.size());
    for (std::size_t r : rows) out.rows.push_back(dataset.rows[r]);
    return out;
}

EvalReport cross_validate_features(const Dataset& dataset, int folds, const ForestParams& params,
                                   std::uint64_t seed,
                                   const std::vector<std::size_t>& features, int threads) {
    if (folds < 2) throw std::invalid_argument("cross_validate: need at least 2 folds");
    std::size_t n_pos = 0, n_neg = 0;
    for (const DatasetRow& r : dataset.rows) (r.label ? n_pos : n_neg) += 1;
    if (n_pos < static_cast<std::size_t>(folds) || n_neg < static_cast<std::size_t>(folds))
        throw std::invalid_argument("cross_validate: need at least k rows per class");

    const std::vector<int> fold_of = assign_folds(dataset, folds, seed);

    EvalReport report;
    report.folds = folds;
    report.params = params;
    report.seed = seed;
    std::vector<double> importance_sum(dataset.schema.size(), 0.0);

    for (int fold = 0; fold < folds; ++fold) {
        std::vector<std::size_t> train_rows, test_rows;
        for (std::size_t i = 0; i < dataset.rows.size(); ++i)
            (fold_of[i] == fold ? test_rows : train_rows).push_back(i);
        if (test_rows.empty()) throw std::invalid_argument("cross_validate: empty fold");

        const Dataset train = subset_rows(dataset, train_rows);
        ForestParams fold_params = params;
        fold_params.seed = splitmix64(seed ^ (0x2545f4914f6cdd1dull * (fold + 1)));
        const ForestModel model = train_forest_subset(train, fold_params, features, threads);

        std::vector<double> scores;
        std::vector<int> labels;
        scores.reserve(test_rows.size());
        for (std::size_t r : test_rows) {
            scores.push_back(model.predict(dataset.rows[r].features));
            labels.push_back(dataset.rows[r].label);
        }
        report.per_fold_auc.push_back(roc_auc(scores, labels));
        for (std::size_t i = 0; i < importance_sum.size(); ++i)
            importance_sum[i] += model.importances[i];
    }

    for (double auc : report.per_fold_auc) report.mean_auc += auc;
    report.mean_auc /= static_cast<double>(folds);
    for (std::size_t i = 0; i < importance_sum.size(); ++i)
        if (importance_sum[i] > 0)
            report.importances[dataset.schema.names[i]] =
                importance_sum[i] / static_cast<double>(folds);
    return report;
}

std::vector<std::size_t> all_features(const Dataset& dataset) {
    std::vector<std::size_t> f(dataset.schema.size());
    std::iota(f.begin(), f.end(), std::size_t{0});
    return f;
}

}  // namespace

EvalReport cross_validate(const Dataset& dataset, int folds, const ForestParams& params,
                          std::uint64_t seed, int threads) {
    return cross_validate_features(dataset, folds, params, seed, all_features(dataset), threads);
}

AblationReport feature_set_ablation(const Dataset& dataset, const std::vector<std::string>& sets,
                                    int folds, const ForestParams& params, std::uint64_t seed,
                                    int threads) {
    AblationReport report;
    std::map<std::string, std::vector<std::size_t>> set_features;
    for (const std::string& set : sets) set_features[set] = dataset.schema.set_indices(set);

    for (const std::string& set : sets)
        report.per_set.emplace(
            set, cross_validate_features(dataset, folds, params, seed, set_features[set], threads));
    report.all_features = cross_validate(dataset, folds, params, seed, threads);

    // Greedy forward selection over whole sets.
    std::vector<std::string> remaining = sets;
    std::vector<std::size_t> selected;
    while (!remaining.empty()) {
        std::string best_set;
        double best_auc = -1;
        std::vector<std::size_t> best_features;
        for (const std::string& set : remaining) {
            std::vector<std::size_t> candidate = selected;
            const auto& extra = set_features[set];
            candidate.insert(candidate.end(), extra.begin(), extra.end());
            std::sort(candidate.begin(), candidate.end());
            const double auc =
                cross_validate_features(dataset, folds, params, seed, candidate, threads).mean_auc;
            if (auc > best_auc) {
                best_auc = auc;
                best_set = set;
                best_features = std::move(candidate);
            }
        }
        selected = std::move(best_features);
        report.forward_selection_order.push_back(best_set);
        report.forward_selection_auc.push_back(best_auc);
        remaining.erase(std::find(remaining.begin(), remaining.end(), best_set));
    }
    return report;
}

Dataset permute_labels(const Dataset& dataset, std::uint64_t seed) {
    Dataset out = dataset;
    std::vector<int> labels;
    labels.reserve(out.rows.size());
    for (const DatasetRow& r : out.rows) labels.push_back(r.label);
    Rng rng(seed);
    rng.shuffle(labels);
    for (std::size_t i = 0; i < out.rows.size(); ++i) out.rows[i].label = labels[i];
    return out;
}

}  // namespace sockscope
