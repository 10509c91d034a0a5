#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sockscope/behavior.hpp"
#include "sockscope/corpus.hpp"
#include "sockscope/detect.hpp"
#include "sockscope/graph.hpp"
#include "sockscope/lexicon.hpp"
#include "sockscope/taxonomy.hpp"

namespace sockscope {

// Fixed, ordered feature name list. Names carry a set prefix ("activity:",
// "community:", "post:", "pair:") used for per-set evaluation.
struct FeatureSchema {
    std::vector<std::string> names;

    std::size_t size() const { return names.size(); }
    std::uint64_t hash() const;
    std::size_t index_of(const std::string& name) const;
    std::vector<std::size_t> set_indices(const std::string& set_prefix) const;
};

struct FeatureVector {
    std::vector<std::optional<double>> values;  // absent = undefined feature
};

FeatureSchema account_feature_schema(const Lexicon& lexicon);

// Emits the activity / community / post feature sets for one account.
// Undefined entries (an account that drew no votes, an isolated node's
// reciprocity, a single post's inter-post gap) stay absent rather than 0.
FeatureVector account_features(const Corpus& corpus, const std::string& account_id,
                               const Lexicon& lexicon, const ReplyNetwork& network,
                               const FeatureSchema& schema);

FeatureSchema pair_feature_schema(const FeatureSchema& account_schema);

// |a - b| per account feature (absent when either side is), plus the pair
// interaction features from PairActivityStats.
FeatureVector pair_features(const FeatureVector& a, const FeatureVector& b,
                            const PairActivityStats& stats, const FeatureSchema& account_schema,
                            const FeatureSchema& pair_schema);

struct DatasetRow {
    FeatureVector features;
    int label = 0;       // 1 = sockpuppet / sockpuppet pair
    std::string unit_id;
    std::string group_key;  // rows sharing a key stay in one CV fold
};

struct Dataset {
    FeatureSchema schema;
    std::vector<DatasetRow> rows;
    std::string provenance;
};

// Task 1 (is an account a sockpuppet?): one positive row per sockpuppet with
// a match, one negative row per matched ordinary account. Balanced exactly;
// unmatched sockpuppets are dropped.
Dataset build_task1_dataset(const Corpus& corpus, const std::vector<SockGroup>& groups,
                            const std::vector<MatchResult>& matches, const Lexicon& lexicon,
                            const ReplyNetwork& network);

// Task 2 (are two accounts a sockpuppet pair?): positive row per detected
// pair (S1 = the member with more posts), negative row pairing S1 with its
// matched ordinary account. Rows sharing an S1 share a fold key.
Dataset build_task2_dataset(const Corpus& corpus, const std::vector<SockGroup>& groups,
                            const std::vector<MatchResult>& matches, const Lexicon& lexicon,
                            const ReplyNetwork& network, int window_minutes = 15);

}  // namespace sockscope
