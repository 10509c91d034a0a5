#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sockscope/corpus.hpp"

namespace sockscope {

// Consecutive-run structure of a group's interleaved post sequence. Entropy
// uses natural log; members with no posts are simply absent.
struct SwitchEntropy {
    std::map<std::string, double> entropy;              // nats
    std::map<std::string, std::vector<std::size_t>> runs;  // run lengths in sequence order
};

// Interleaves all members' posts by (timestamp, post_id), splits the sequence
// into maximal same-author runs, and reports per-member run lengths plus
// entropy_X = -sum (r_i/n_X) ln(r_i/n_X) over X's runs.
SwitchEntropy switch_entropy(const Corpus& corpus, const std::vector<std::string>& members);

struct PairActivityStats {
    std::size_t common_subdiscussions = 0;
    std::size_t co_posts_within_window = 0;  // unordered cross post pairs, same discussion
    std::size_t votes_a_on_b = 0;
    std::size_t votes_b_on_a = 0;
    std::optional<double> positive_vote_fraction;       // absent without cross votes
    std::optional<double> posts_before_second_fraction;  // absent unless both post
};

PairActivityStats pair_activity(const Corpus& corpus, const std::string& account_a,
                                const std::string& account_b, int window_minutes = 15);

// Fraction of the first-posting member's posts made strictly before the
// second member's first post. Requires >= 2 members with posts.
double creation_timing(const Corpus& corpus, const std::vector<std::string>& members);

struct CommunityFeedback {
    std::optional<double> downvote_fraction;  // absent when the posts drew no votes
    double reported_fraction = 0;
    double deleted_fraction = 0;
    bool blocked = false;
};

CommunityFeedback community_feedback(const Corpus& corpus, const std::string& account_id);

}  // namespace sockscope
