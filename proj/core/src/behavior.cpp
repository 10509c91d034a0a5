#include "sockscope/behavior.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace sockscope {

SwitchEntropy switch_entropy(const Corpus& corpus, const std::vector<std::string>& members) {
    // Gather (post index, author); posts_by lists are already time-ordered,
    // so a merge by index yields the interleaved sequence.
    std::vector<std::pair<std::size_t, std::string>> sequence;
    for (const std::string& member : members)
        for (std::size_t idx : corpus.posts_by(member)) sequence.emplace_back(idx, member);
    std::sort(sequence.begin(), sequence.end());

    SwitchEntropy out;
    for (std::size_t i = 0; i < sequence.size();) {
        std::size_t j = i;
        while (j < sequence.size() && sequence[j].second == sequence[i].second) ++j;
        out.runs[sequence[i].second].push_back(j - i);
        i = j;
    }
    for (const auto& [member, runs] : out.runs) {
        double total = 0;
        for (std::size_t r : runs) total += static_cast<double>(r);
        double h = 0;
        for (std::size_t r : runs) {
            const double p = static_cast<double>(r) / total;
            h -= p * std::log(p);
        }
        out.entropy[member] = h;
    }
    return out;
}

PairActivityStats pair_activity(const Corpus& corpus, const std::string& account_a,
                                const std::string& account_b, int window_minutes) {
    if (!corpus.has_account(account_a)) throw std::invalid_argument("unknown account " + account_a);
    if (!corpus.has_account(account_b)) throw std::invalid_argument("unknown account " + account_b);
    const std::int64_t window_seconds = static_cast<std::int64_t>(window_minutes) * 60;

    PairActivityStats stats;
    const auto& posts_a = corpus.posts_by(account_a);
    const auto& posts_b = corpus.posts_by(account_b);

    {
        std::unordered_set<std::string> roots_a;
        for (std::size_t i : posts_a) roots_a.insert(corpus.subdiscussion_root(i));
        std::unordered_set<std::string> counted;
        for (std::size_t i : posts_b) {
            const std::string& root = corpus.subdiscussion_root(i);
            if (roots_a.contains(root)) counted.insert(root);
        }
        stats.common_subdiscussions = counted.size();
    }

    for (std::size_t i : posts_a) {
        const Post& pa = corpus.posts()[i];
        for (std::size_t j : posts_b) {
            const Post& pb = corpus.posts()[j];
            if (pa.discussion_id != pb.discussion_id) continue;
            if (std::abs(pa.timestamp - pb.timestamp) <= window_seconds)
                ++stats.co_posts_within_window;
        }
    }

    std::size_t positive = 0, total_votes = 0;
    auto count_votes = [&](const std::string& voter, const std::string& author,
                           std::size_t& counter) {
        for (std::size_t v : corpus.votes_by(voter)) {
            const VoteRecord& vote = corpus.votes()[v];
            const Post* post = corpus.find_post(vote.post_id);
            if (post == nullptr || post->author_id != author) continue;
            ++counter;
            ++total_votes;
            if (vote.sign > 0) ++positive;
        }
    };
    count_votes(account_a, account_b, stats.votes_a_on_b);
    count_votes(account_b, account_a, stats.votes_b_on_a);
    if (total_votes > 0)
        stats.positive_vote_fraction =
            static_cast<double>(positive) / static_cast<double>(total_votes);

    if (!posts_a.empty() && !posts_b.empty())
        stats.posts_before_second_fraction = creation_timing(corpus, {account_a, account_b});

    return stats;
}

double creation_timing(const Corpus& corpus, const std::vector<std::string>& members) {
    // first post timestamp per member that has posts
    std::vector<std::pair<std::int64_t, std::string>> firsts;
    for (const std::string& member : members) {
        const auto& posts = corpus.posts_by(member);
        if (!posts.empty()) firsts.emplace_back(corpus.posts()[posts.front()].timestamp, member);
    }
    if (firsts.size() < 2)
        throw std::invalid_argument("creation_timing: need at least two members with posts");
    std::sort(firsts.begin(), firsts.end());

    const std::string& first_member = firsts[0].second;
    const std::int64_t second_first_post = firsts[1].first;

    const auto& posts = corpus.posts_by(first_member);
    std::size_t before = 0;
    for (std::size_t idx : posts)
        if (corpus.posts()[idx].timestamp < second_first_post) ++before;
    return static_cast<double>(before) / static_cast<double>(posts.size());
}

CommunityFeedback community_feedback(const Corpus& corpus, const std::string& account_id) {
    const auto& posts = corpus.posts_by(account_id);
    if (posts.empty())
        throw std::invalid_argument("community_feedback: account " + account_id + " has no posts");

    CommunityFeedback fb;
    std::int64_t up = 0, down = 0;
    std::size_t reported = 0, deleted = 0;
    for (std::size_t idx : posts) {
        const Post& p = corpus.posts()[idx];
        up += p.upvotes;
        down += p.downvotes;
        if (p.reported) ++reported;
        if (p.deleted) ++deleted;
    }
    if (up + down > 0)
        fb.downvote_fraction = static_cast<double>(down) / static_cast<double>(up + down);
    fb.reported_fraction = static_cast<double>(reported) / static_cast<double>(posts.size());
    fb.deleted_fraction = static_cast<double>(deleted) / static_cast<double>(posts.size());
    fb.blocked = corpus.account(account_id).blocked;
    return fb;
}

}  // namespace sockscope
