#include "sockscope/features.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sockscope/text.hpp"
#include "sockscope/util.hpp"

namespace sockscope {

std::uint64_t FeatureSchema::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const std::string& name : names) {
        h = fnv1a64(name, h);
        h = fnv1a64("\n", h);
    }
    return h;
}

std::size_t FeatureSchema::index_of(const std::string& name) const {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw std::invalid_argument("unknown feature: " + name);
    return static_cast<std::size_t>(it - names.begin());
}

std::vector<std::size_t> FeatureSchema::set_indices(const std::string& set_prefix) const {
    std::vector<std::size_t> out;
    const std::string prefix = set_prefix + ":";
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i].rfind(prefix, 0) == 0) out.push_back(i);
    if (out.empty()) throw std::invalid_argument("unknown feature set: " + set_prefix);
    return out;
}

FeatureSchema account_feature_schema(const Lexicon& lexicon) {
    FeatureSchema s;
    s.names = {
        "activity:n_posts",
        "activity:reply_proportion",
        "activity:mean_interpost_gap_s",
        "activity:tenure_days",
        "activity:ego_clustering",
        "activity:ego_reciprocity",
        "community:blocked",
        "community:upvote_fraction",
        "community:reported_fraction",
        "community:deleted_fraction",
    };
    for (const std::string& cat : lexicon.categories()) s.names.push_back("post:cat_" + cat);
    const char* post_features[] = {
        "post:n_chars",           "post:n_syllables",     "post:n_words",
        "post:n_sentences",       "post:frac_uppercase",  "post:frac_punctuation",
        "post:frac_special",      "post:frac_alphabetic", "post:syllables_per_word",
        "post:words_per_sentence", "post:mean_word_length", "post:mean_post_words",
        "post:ari",               "post:agreement",       "post:sentiment_pos",
        "post:sentiment_neg",     "post:sentiment_compound", "post:emotion_strength",
    };
    for (const char* f : post_features) s.names.push_back(f);
    return s;
}

FeatureVector account_features(const Corpus& corpus, const std::string& account_id,
                               const Lexicon& lexicon, const ReplyNetwork& network,
                               const FeatureSchema& schema) {
    const auto& posts = corpus.posts_by(account_id);
    if (posts.empty())
        throw std::invalid_argument("account_features: " + account_id + " has no posts");

    FeatureVector fv;
    fv.values.assign(schema.size(), std::nullopt);
    auto set = [&](const std::string& name, double value) {
        fv.values[schema.index_of(name)] = value;
    };

    // activity
    const double n = static_cast<double>(posts.size());
    std::size_t replies = 0;
    for (std::size_t idx : posts)
        if (corpus.posts()[idx].parent_id) ++replies;
    set("activity:n_posts", n);
    set("activity:reply_proportion", static_cast<double>(replies) / n);
    if (posts.size() >= 2) {
        double gap_sum = 0;
        for (std::size_t i = 1; i < posts.size(); ++i)
            gap_sum += static_cast<double>(corpus.posts()[posts[i]].timestamp -
                                           corpus.posts()[posts[i - 1]].timestamp);
        set("activity:mean_interpost_gap_s", gap_sum / (n - 1.0));
    }
    const std::int64_t first = corpus.posts()[posts.front()].timestamp;
    const std::int64_t last = corpus.posts()[posts.back()].timestamp;
    set("activity:tenure_days", static_cast<double>(last - first) / 86400.0);
    if (network.has_node(account_id)) {
        set("activity:ego_clustering", local_clustering(network, account_id));
        const EgoNetwork ego = ego_network(network, account_id);
        if (!ego.edges.empty()) set("activity:ego_reciprocity", reciprocity(ego));
    }

    // community
    const CommunityFeedback fb = community_feedback(corpus, account_id);
    set("community:blocked", fb.blocked ? 1.0 : 0.0);
    if (fb.downvote_fraction) set("community:upvote_fraction", 1.0 - *fb.downvote_fraction);
    set("community:reported_fraction", fb.reported_fraction);
    set("community:deleted_fraction", fb.deleted_fraction);

    // post (linguistic) features; absent for accounts whose posts hold no words
    bool any_words = false;
    std::size_t n_chars = 0, n_syllables = 0, n_words = 0, n_sentences = 0;
    for (std::size_t idx : posts) {
        const TokenizedText t = tokenize(corpus.posts()[idx].text);
        if (t.words.empty()) continue;
        any_words = true;
        n_chars += t.chars.total;
        n_words += t.word_count();
        n_sentences += t.sentence_count();
        for (int syl : t.syllables) n_syllables += static_cast<std::size_t>(syl);
    }
    if (any_words) {
        const LanguageProfile profile = user_profile(corpus, account_id, lexicon);
        for (const auto& [name, value] : profile) set("post:" + name, value);
        set("post:n_chars", static_cast<double>(n_chars));
        set("post:n_syllables", static_cast<double>(n_syllables));
        set("post:n_words", static_cast<double>(n_words));
        set("post:n_sentences", static_cast<double>(n_sentences));
    }
    return fv;
}

FeatureSchema pair_feature_schema(const FeatureSchema& account_schema) {
    FeatureSchema s;
    s.names = account_schema.names;
    s.names.push_back("pair:common_subdiscussions");
    s.names.push_back("pair:co_posts_within_window");
    s.names.push_back("pair:cross_votes");
    return s;
}

FeatureVector pair_features(const FeatureVector& a, const FeatureVector& b,
                            const PairActivityStats& stats, const FeatureSchema& account_schema,
                            const FeatureSchema& pair_schema) {
    if (a.values.size() != account_schema.size() || b.values.size() != account_schema.size())
        throw std::invalid_argument("pair_features: schema mismatch");

    FeatureVector fv;
    fv.values.assign(pair_schema.size(), std::nullopt);
    for (std::size_t i = 0; i < account_schema.size(); ++i) {
        if (a.values[i] && b.values[i]) fv.values[i] = std::abs(*a.values[i] - *b.values[i]);
    }
    fv.values[pair_schema.index_of("pair:common_subdiscussions")] =
        static_cast<double>(stats.common_subdiscussions);
    fv.values[pair_schema.index_of("pair:co_posts_within_window")] =
        static_cast<double>(stats.co_posts_within_window);
    fv.values[pair_schema.index_of("pair:cross_votes")] =
        static_cast<double>(stats.votes_a_on_b + stats.votes_b_on_a);
    return fv;
}

namespace {

// S1 of a detected pair: the member with more posts, ties to the smaller id.
const std::string& pair_s1(const Corpus& corpus, const SockPair& pair) {
    const std::size_t na = corpus.posts_by(pair.account_a).size();
    const std::size_t nb = corpus.posts_by(pair.account_b).size();
    if (na != nb) return na > nb ? pair.account_a : pair.account_b;
    return pair.account_a;
}

}  // namespace

Dataset build_task1_dataset(const Corpus& corpus, const std::vector<SockGroup>& groups,
                            const std::vector<MatchResult>& matches, const Lexicon& lexicon,
                            const ReplyNetwork& network) {
    Dataset ds;
    ds.schema = account_feature_schema(lexicon);
    ds.provenance = "task1: sockpuppet vs matched ordinary account";

    std::set<std::string> socks;
    for (const SockGroup& g : groups) socks.insert(g.members.begin(), g.members.end());

    for (const MatchResult& m : matches) {
        if (!m.ordinary) continue;
        if (!socks.contains(m.sockpuppet))
            throw std::invalid_argument("task1: matched unit " + m.sockpuppet +
                                        " is not a detected sockpuppet");
        DatasetRow pos;
        pos.features = account_features(corpus, m.sockpuppet, lexicon, network, ds.schema);
        pos.label = 1;
        pos.unit_id = m.sockpuppet;
        pos.group_key = m.sockpuppet;
        ds.rows.push_back(std::move(pos));

        DatasetRow neg;
        neg.features = account_features(corpus, *m.ordinary, lexicon, network, ds.schema);
        neg.label = 0;
        neg.unit_id = *m.ordinary;
        neg.group_key = *m.ordinary;
        ds.rows.push_back(std::move(neg));
    }
    if (ds.rows.empty()) throw std::invalid_argument("task1: no matched sockpuppets");
    return ds;
}

Dataset build_task2_dataset(const Corpus& corpus, const std::vector<SockGroup>& groups,
                            const std::vector<MatchResult>& matches, const Lexicon& lexicon,
                            const ReplyNetwork& network, int window_minutes) {
    const FeatureSchema account_schema = account_feature_schema(lexicon);

    Dataset ds;
    ds.schema = pair_feature_schema(account_schema);
    ds.provenance = "task2: sockpuppet pair vs (S1, matched ordinary) pair";

    std::map<std::string, std::string> match_of;
    for (const MatchResult& m : matches)
        if (m.ordinary) match_of[m.sockpuppet] = *m.ordinary;

    std::map<std::string, FeatureVector> cache;
    auto features_of = [&](const std::string& id) -> const FeatureVector& {
        auto it = cache.find(id);
        if (it == cache.end())
            it = cache.emplace(id, account_features(corpus, id, lexicon, network, account_schema))
                     .first;
        return it->second;
    };

    for (const SockGroup& g : groups) {
        for (const SockPair& pair : g.pairs) {
            const std::string& s1 = pair_s1(corpus, pair);
            const std::string& s2 = s1 == pair.account_a ? pair.account_b : pair.account_a;
            auto matched = match_of.find(s1);
            if (matched == match_of.end()) continue;

            DatasetRow pos;
            pos.features = pair_features(features_of(s1), features_of(s2),
                                         pair_activity(corpus, s1, s2, window_minutes),
                                         account_schema, ds.schema);
            pos.label = 1;
            pos.unit_id = s1 + "|" + s2;
            pos.group_key = s1;
            ds.rows.push_back(std::move(pos));

            DatasetRow neg;
            neg.features =
                pair_features(features_of(s1), features_of(matched->second),
                              pair_activity(corpus, s1, matched->second, window_minutes),
                              account_schema, ds.schema);
            neg.label = 0;
            neg.unit_id = s1 + "|" + matched->second;
            neg.group_key = s1;
            ds.rows.push_back(std::move(neg));
        }
    }
    if (ds.rows.empty()) throw std::invalid_argument("task2: no matched pairs");
    return ds;
}

}  // namespace sockscope
