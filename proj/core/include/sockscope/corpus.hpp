#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace sockscope {

struct Account {
    std::string account_id;
    std::string display_name;      // may be empty, never absent
    std::string email_local_part;  // portion before '@'; domains are never ingested
    bool blocked = false;

    friend bool operator==(const Account&, const Account&) = default;
};

struct Post {
    std::string post_id;
    std::string author_id;
    std::string discussion_id;
    std::optional<std::string> parent_id;  // absent for root posts
    std::string ip;                        // opaque anonymized token
    std::int64_t timestamp = 0;            // seconds since Unix epoch, UTC
    std::string text;
    std::int64_t upvotes = 0;
    std::int64_t downvotes = 0;
    bool reported = false;
    bool deleted = false;

    friend bool operator==(const Post&, const Post&) = default;
};

struct VoteRecord {
    std::string voter_id;
    std::string post_id;
    int sign = 1;  // +1 or -1

    friend bool operator==(const VoteRecord&, const VoteRecord&) = default;
    friend auto operator<=>(const VoteRecord&, const VoteRecord&) = default;
};

// Raised by build_corpus when record sets violate corpus invariants.
class CorpusError : public std::runtime_error {
public:
    explicit CorpusError(std::vector<std::string> issues);
    const std::vector<std::string>& issues() const { return issues_; }

private:
    std::vector<std::string> issues_;
};

// Immutable, indexed view of one community's activity log. Posts are held in
// (timestamp, post_id) order; every post belongs to exactly one sub-discussion
// rooted at its parent chain's root post.
class Corpus {
public:
    Corpus() = default;

    const std::vector<Account>& accounts() const { return accounts_; }
    const std::vector<Post>& posts() const { return posts_; }
    const std::vector<VoteRecord>& votes() const { return votes_; }

    bool has_account(const std::string& account_id) const;
    const Account& account(const std::string& account_id) const;

    const Post* find_post(const std::string& post_id) const;
    std::size_t post_index(const std::string& post_id) const;

    // Sorted discussion ids; per-discussion post indices in time order.
    const std::vector<std::string>& discussion_ids() const { return discussion_ids_; }
    const std::vector<std::size_t>& discussion_posts(const std::string& discussion_id) const;

    // Sub-discussion = one root post plus the transitive closure of its replies.
    const std::string& subdiscussion_root(std::size_t post_index) const;
    const std::vector<std::size_t>& subdiscussion_posts(const std::string& root_post_id) const;
    std::vector<std::string> subdiscussion_roots() const;

    // Time-ordered post indices authored by the account (empty if none).
    const std::vector<std::size_t>& posts_by(const std::string& account_id) const;

    // Vote indices by voter (empty if none).
    const std::vector<std::size_t>& votes_by(const std::string& account_id) const;

    friend bool operator==(const Corpus& a, const Corpus& b) {
        return a.accounts_ == b.accounts_ && a.posts_ == b.posts_ && a.votes_ == b.votes_;
    }

    friend Corpus build_corpus(std::vector<Account> accounts, std::vector<Post> posts,
                               std::vector<VoteRecord> votes);

private:
    std::vector<Account> accounts_;
    std::vector<Post> posts_;
    std::vector<VoteRecord> votes_;

    std::unordered_map<std::string, std::size_t> account_index_;
    std::unordered_map<std::string, std::size_t> post_index_;
    std::vector<std::string> discussion_ids_;
    std::unordered_map<std::string, std::vector<std::size_t>> discussion_index_;
    std::vector<std::string> root_of_;  // per post: root post id of its sub-discussion
    std::unordered_map<std::string, std::vector<std::size_t>> subdiscussion_index_;
    std::unordered_map<std::string, std::vector<std::size_t>> author_index_;
    std::unordered_map<std::string, std::vector<std::size_t>> voter_index_;
};

// Sorts posts by (timestamp, post_id), builds discussion and sub-discussion
// indexes, and enforces corpus invariants. Throws CorpusError listing every
// offending record when authors are unknown, parents are missing, cross
// discussions, or form cycles, or when ids/votes are duplicated.
Corpus build_corpus(std::vector<Account> accounts, std::vector<Post> posts,
                    std::vector<VoteRecord> votes);

struct ValidationReport {
    std::size_t n_accounts = 0;
    std::size_t n_posts = 0;
    std::size_t n_votes = 0;
    std::size_t n_distinct_ips = 0;
    std::size_t n_discussions = 0;
    std::vector<std::string> violations;  // must be empty for downstream use
};

ValidationReport validate_corpus(const Corpus& corpus);

}  // namespace sockscope
