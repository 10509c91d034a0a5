#include "sockscope/forest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "sockscope/util.hpp"

namespace sockscope {

namespace {

constexpr int kModelFormatVersion = 1;

struct SplitChoice {
    int feature = -1;
    double threshold = 0;
    bool default_left = true;
    double decrease = 0;
};

double gini(double n_pos, double n_total) {
    if (n_total <= 0) return 0;
    const double p = n_pos / n_total;
    return 2.0 * p * (1.0 - p);
}

class TreeBuilder {
public:
    TreeBuilder(const Dataset& dataset, const std::vector<std::size_t>& features,
                const ForestParams& params, std::uint64_t tree_seed,
                std::vector<double>& importance_accumulator)
        : dataset_(dataset),
          features_(features),
          params_(params),
          rng_(tree_seed),
          importances_(importance_accumulator) {}

    Tree build() {
        std::vector<std::size_t> rows(dataset_.rows.size());
        if (params_.bootstrap) {
            for (std::size_t& r : rows) r = rng_.index(dataset_.rows.size());
        } else {
            for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
        }
        n_total_ = static_cast<double>(rows.size());
        Tree tree;
        grow(tree, std::move(rows), 0);
        return tree;
    }

private:
    int grow(Tree& tree, std::vector<std::size_t> rows, int depth) {
        const int node_index = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();

        double n_pos = 0;
        for (std::size_t r : rows) n_pos += dataset_.rows[r].label;
        const double n = static_cast<double>(rows.size());
        tree.nodes[node_index].leaf_value = n > 0 ? n_pos / n : 0.0;

        const bool pure = n_pos == 0 || n_pos == n;
        const bool too_deep = params_.max_depth > 0 && depth >= params_.max_depth;
        if (rows.size() < 2 || pure || too_deep) return node_index;

        const SplitChoice split = best_split(rows, n_pos);
        if (split.feature < 0) return node_index;

        std::vector<std::size_t> left_rows, right_rows;
        for (std::size_t r : rows) {
            const auto& v = dataset_.rows[r].features.values[static_cast<std::size_t>(split.feature)];
            const bool go_left = v ? (*v <= split.threshold) : split.default_left;
            (go_left ? left_rows : right_rows).push_back(r);
        }
        if (left_rows.empty() || right_rows.empty()) return node_index;

        importances_[static_cast<std::size_t>(split.feature)] +=
            split.decrease * (n / n_total_);

        rows.clear();
        rows.shrink_to_fit();
        TreeNode& node = tree.nodes[node_index];
        node.feature = split.feature;
        node.threshold = split.threshold;
        node.default_left = split.default_left;
        const int left = grow(tree, std::move(left_rows), depth + 1);
        const int right = grow(tree, std::move(right_rows), depth + 1);
        tree.nodes[node_index].left = left;
        tree.nodes[node_index].right = right;
        return node_index;
    }

    SplitChoice best_split(const std::vector<std::size_t>& rows, double n_pos) {
        const double n = static_cast<double>(rows.size());
        const double impurity = gini(n_pos, n);

        // sample ceil(sqrt(F)) distinct candidate features
        std::size_t per_split = params_.features_per_split > 0
                                    ? static_cast<std::size_t>(params_.features_per_split)
                                    : static_cast<std::size_t>(
                                          std::ceil(std::sqrt(static_cast<double>(features_.size()))));
        per_split = std::min(per_split, features_.size());
        std::vector<std::size_t> candidates = features_;
        for (std::size_t i = 0; i < per_split; ++i) {
            const std::size_t j = i + rng_.index(candidates.size() - i);
            std::swap(candidates[i], candidates[j]);
        }
        candidates.resize(per_split);

        SplitChoice best;
        for (std::size_t f : candidates) {
            std::vector<std::pair<double, int>> present;  // (value, label)
            present.reserve(rows.size());
            double absent_n = 0, absent_pos = 0;
            for (std::size_t r : rows) {
                const auto& v = dataset_.rows[r].features.values[f];
                if (v) {
                    present.emplace_back(*v, dataset_.rows[r].label);
                } else {
                    absent_n += 1;
                    absent_pos += dataset_.rows[r].label;
                }
            }
            if (present.size() < 2) continue;
            std::sort(present.begin(), present.end());

            double left_n = 0, left_pos = 0;
            double present_n = static_cast<double>(present.size());
            double present_pos = 0;
            for (const auto& [_, label] : present) present_pos += label;

            for (std::size_t i = 0; i + 1 < present.size(); ++i) {
                left_n += 1;
                left_pos += present[i].second;
                if (present[i].first == present[i + 1].first) continue;

                const bool default_left = left_n >= present_n - left_n;
                const double ln = left_n + (default_left ? absent_n : 0.0);
                const double lp = left_pos + (default_left ? absent_pos : 0.0);
                const double rn = (present_n - left_n) + (default_left ? 0.0 : absent_n);
                const double rp = (present_pos - left_pos) + (default_left ? 0.0 : absent_pos);
                const double weighted =
                    (ln * gini(lp, ln) + rn * gini(rp, rn)) / n;
                const double decrease = impurity - weighted;
                if (decrease > best.decrease + 1e-12) {
                    best.feature = static_cast<int>(f);
                    best.threshold = 0.5 * (present[i].first + present[i + 1].first);
                    best.default_left = default_left;
                    best.decrease = decrease;
                }
            }
        }
        return best;
    }

    const Dataset& dataset_;
    const std::vector<std::size_t>& features_;
    const ForestParams& params_;
    Rng rng_;
    std::vector<double>& importances_;
    double n_total_ = 0;
};

double predict_tree(const Tree& tree, const FeatureVector& row) {
    int at = 0;
    while (tree.nodes[static_cast<std::size_t>(at)].feature >= 0) {
        const TreeNode& node = tree.nodes[static_cast<std::size_t>(at)];
        const auto& v = row.values[static_cast<std::size_t>(node.feature)];
        const bool go_left = v ? (*v <= node.threshold) : node.default_left;
        at = go_left ? node.left : node.right;
    }
    return tree.nodes[static_cast<std::size_t>(at)].leaf_value;
}

ForestModel train_impl(const Dataset& dataset, const ForestParams& params,
                       const std::vector<std::size_t>& features, int threads) {
    if (dataset.rows.empty()) throw std::invalid_argument("train_forest: empty dataset");
    bool has_pos = false, has_neg = false;
    for (const DatasetRow& r : dataset.rows) (r.label ? has_pos : has_neg) = true;
    if (!has_pos || !has_neg)
        throw std::invalid_argument("train_forest: dataset holds a single class");
    if (params.n_trees <= 0) throw std::invalid_argument("train_forest: n_trees must be > 0");

    ForestModel model;
    model.params = params;
    model.schema = dataset.schema;
    model.trees.resize(static_cast<std::size_t>(params.n_trees));

    std::vector<std::vector<double>> per_tree_importance(
        static_cast<std::size_t>(params.n_trees),
        std::vector<double>(dataset.schema.size(), 0.0));

    auto train_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t t = begin; t < end; ++t) {
            TreeBuilder builder(dataset, features, params,
                                splitmix64(params.seed ^ (0x9e3779b97f4a7c15ull * (t + 1))),
                                per_tree_importance[t]);
            model.trees[t] = builder.build();
        }
    };

    const std::size_t n_trees = static_cast<std::size_t>(params.n_trees);
    const std::size_t n_workers =
        std::max<std::size_t>(1, std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), n_trees));
    if (n_workers == 1) {
        train_range(0, n_trees);
    } else {
        std::vector<std::thread> workers;
        const std::size_t chunk = (n_trees + n_workers - 1) / n_workers;
        for (std::size_t w = 0; w < n_workers; ++w) {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(n_trees, begin + chunk);
            if (begin < end) workers.emplace_back(train_range, begin, end);
        }
        for (auto& worker : workers) worker.join();
    }

    model.importances.assign(dataset.schema.size(), 0.0);
    for (const auto& imp : per_tree_importance)
        for (std::size_t i = 0; i < imp.size(); ++i) model.importances[i] += imp[i];
    double total = 0;
    for (double v : model.importances) total += v;
    if (total > 0)
        for (double& v : model.importances) v /= total;
    return model;
}

}  // namespace

double ForestModel::predict(const FeatureVector& row) const {
    if (row.values.size() != schema.size())
        throw std::invalid_argument("predict: feature vector does not match model schema");
    double sum = 0;
    for (const Tree& tree : trees) sum += predict_tree(tree, row);
    return sum / static_cast<double>(trees.size());
}

ForestModel train_forest(const Dataset& dataset, const ForestParams& params, int threads) {
    std::vector<std::size_t> all(dataset.schema.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return train_impl(dataset, params, all, threads);
}

ForestModel train_forest_subset(const Dataset& dataset, const ForestParams& params,
                                const std::vector<std::size_t>& feature_subset, int threads) {
    if (feature_subset.empty())
        throw std::invalid_argument("train_forest_subset: empty feature subset");
    return train_impl(dataset, params, feature_subset, threads);
}

void save_model(const ForestModel& model, const std::filesystem::path& path) {
    nlohmann::ordered_json doc;
    doc["format"] = "sockscope-forest";
    doc["format_version"] = kModelFormatVersion;
    doc["version"] = kVersion;
    doc["schema"] = model.schema.names;
    char hash_hex[17];
    std::snprintf(hash_hex, sizeof hash_hex, "%016llx",
                  static_cast<unsigned long long>(model.schema.hash()));
    doc["schema_hash"] = hash_hex;
    doc["params"] = {{"n_trees", model.params.n_trees},
                     {"max_depth", model.params.max_depth},
                     {"features_per_split", model.params.features_per_split},
                     {"bootstrap", model.params.bootstrap},
                     {"seed", model.params.seed}};
    doc["importances"] = model.importances;
    nlohmann::ordered_json trees = nlohmann::ordered_json::array();
    for (const Tree& tree : model.trees) {
        nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
        for (const TreeNode& n : tree.nodes)
            nodes.push_back({n.feature, n.threshold, n.default_left ? 1 : 0, n.left, n.right,
                             n.leaf_value});
        trees.push_back(std::move(nodes));
    }
    doc["trees"] = std::move(trees);

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write model file " + path.string());
    out << doc.dump(2) << "\n";
}

ForestModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open model file " + path.string());
    nlohmann::json doc = nlohmann::json::parse(in);
    if (doc.value("format", "") != "sockscope-forest")
        throw std::runtime_error(path.string() + " is not a forest model file");
    if (doc.value("format_version", -1) != kModelFormatVersion)
        throw std::runtime_error("unsupported model format version");

    ForestModel model;
    model.schema.names = doc.at("schema").get<std::vector<std::string>>();
    char hash_hex[17];
    std::snprintf(hash_hex, sizeof hash_hex, "%016llx",
                  static_cast<unsigned long long>(model.schema.hash()));
    if (doc.at("schema_hash").get<std::string>() != hash_hex)
        throw std::runtime_error("model schema hash mismatch");
    const auto& p = doc.at("params");
    model.params.n_trees = p.at("n_trees").get<int>();
    model.params.max_depth = p.at("max_depth").get<int>();
    model.params.features_per_split = p.at("features_per_split").get<int>();
    model.params.bootstrap = p.at("bootstrap").get<bool>();
    model.params.seed = p.at("seed").get<std::uint64_t>();
    model.importances = doc.at("importances").get<std::vector<double>>();
    for (const auto& tree_doc : doc.at("trees")) {
        Tree tree;
        for (const auto& n : tree_doc) {
            TreeNode node;
            node.feature = n.at(0).get<int>();
            node.threshold = n.at(1).get<double>();
            node.default_left = n.at(2).get<int>() != 0;
            node.left = n.at(3).get<int>();
            node.right = n.at(4).get<int>();
            node.leaf_value = n.at(5).get<double>();
            tree.nodes.push_back(node);
        }
        model.trees.push_back(std::move(tree));
    }
    return model;
}

std::vector<double> predict_scores(const ForestModel& model, const Dataset& dataset) {
    if (dataset.schema.hash() != model.schema.hash())
        throw std::invalid_argument("predict_scores: dataset schema does not match the model");
    std::vector<double> scores;
    scores.reserve(dataset.rows.size());
    for (const DatasetRow& row : dataset.rows) scores.push_back(model.predict(row.features));
    return scores;
}

}  // namespace sockscope
