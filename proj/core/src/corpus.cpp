#include "sockscope/corpus.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_set>

namespace sockscope {

namespace {

std::string join_issues(const std::vector<std::string>& issues) {
    std::ostringstream os;
    os << "corpus has " << issues.size() << " issue(s)";
    for (std::size_t i = 0; i < issues.size() && i < 8; ++i) os << "; " << issues[i];
    if (issues.size() > 8) os << "; ...";
    return os.str();
}

}  // namespace

CorpusError::CorpusError(std::vector<std::string> issues)
    : std::runtime_error(join_issues(issues)), issues_(std::move(issues)) {}

bool Corpus::has_account(const std::string& account_id) const {
    return account_index_.contains(account_id);
}

const Account& Corpus::account(const std::string& account_id) const {
    auto it = account_index_.find(account_id);
    if (it == account_index_.end()) throw std::invalid_argument("unknown account: " + account_id);
    return accounts_[it->second];
}

const Post* Corpus::find_post(const std::string& post_id) const {
    auto it = post_index_.find(post_id);
    return it == post_index_.end() ? nullptr : &posts_[it->second];
}

std::size_t Corpus::post_index(const std::string& post_id) const {
    auto it = post_index_.find(post_id);
    if (it == post_index_.end()) throw std::invalid_argument("unknown post: " + post_id);
    return it->second;
}

const std::vector<std::size_t>& Corpus::discussion_posts(const std::string& discussion_id) const {
    static const std::vector<std::size_t> empty;
    auto it = discussion_index_.find(discussion_id);
    return it == discussion_index_.end() ? empty : it->second;
}

const std::string& Corpus::subdiscussion_root(std::size_t post_index) const {
    return root_of_.at(post_index);
}

const std::vector<std::size_t>& Corpus::subdiscussion_posts(const std::string& root_post_id) const {
    static const std::vector<std::size_t> empty;
    auto it = subdiscussion_index_.find(root_post_id);
    return it == subdiscussion_index_.end() ? empty : it->second;
}

std::vector<std::string> Corpus::subdiscussion_roots() const {
    std::vector<std::string> roots;
    roots.reserve(subdiscussion_index_.size());
    for (const auto& [root, _] : subdiscussion_index_) roots.push_back(root);
    std::sort(roots.begin(), roots.end());
    return roots;
}

const std::vector<std::size_t>& Corpus::posts_by(const std::string& account_id) const {
    static const std::vector<std::size_t> empty;
    auto it = author_index_.find(account_id);
    return it == author_index_.end() ? empty : it->second;
}

const std::vector<std::size_t>& Corpus::votes_by(const std::string& account_id) const {
    static const std::vector<std::size_t> empty;
    auto it = voter_index_.find(account_id);
    return it == voter_index_.end() ? empty : it->second;
}

Corpus build_corpus(std::vector<Account> accounts, std::vector<Post> posts,
                    std::vector<VoteRecord> votes) {
    std::vector<std::string> issues;

    Corpus c;
    c.accounts_ = std::move(accounts);
    c.posts_ = std::move(posts);
    c.votes_ = std::move(votes);

    for (std::size_t i = 0; i < c.accounts_.size(); ++i) {
        auto [it, inserted] = c.account_index_.emplace(c.accounts_[i].account_id, i);
        if (!inserted) issues.push_back("duplicate account_id: " + c.accounts_[i].account_id);
    }

    std::sort(c.posts_.begin(), c.posts_.end(), [](const Post& a, const Post& b) {
        if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
        return a.post_id < b.post_id;
    });

    for (std::size_t i = 0; i < c.posts_.size(); ++i) {
        const Post& p = c.posts_[i];
        auto [it, inserted] = c.post_index_.emplace(p.post_id, i);
        if (!inserted) issues.push_back("duplicate post_id: " + p.post_id);
        if (!c.account_index_.contains(p.author_id))
            issues.push_back("post " + p.post_id + " references unknown author " + p.author_id);
    }

    for (std::size_t i = 0; i < c.posts_.size(); ++i) {
        const Post& p = c.posts_[i];
        if (!p.parent_id) continue;
        auto it = c.post_index_.find(*p.parent_id);
        if (it == c.post_index_.end()) {
            issues.push_back("post " + p.post_id + " references unknown parent " + *p.parent_id);
        } else if (c.posts_[it->second].discussion_id != p.discussion_id) {
            issues.push_back("post " + p.post_id + " has parent " + *p.parent_id +
                             " in a different discussion");
        }
    }

    {
        std::set<std::pair<std::string, std::string>> seen;
        for (const VoteRecord& v : c.votes_) {
            if (!seen.emplace(v.voter_id, v.post_id).second)
                issues.push_back("duplicate vote (" + v.voter_id + ", " + v.post_id + ")");
        }
    }

    if (!issues.empty()) throw CorpusError(std::move(issues));

    // Resolve each post's sub-discussion root by chasing the parent chain.
    c.root_of_.assign(c.posts_.size(), std::string());
    std::vector<char> state(c.posts_.size(), 0);  // 0 unvisited, 1 on current walk, 2 resolved
    for (std::size_t i = 0; i < c.posts_.size(); ++i) {
        if (state[i] == 2) continue;
        std::vector<std::size_t> chain;
        std::size_t cur = i;
        std::string root_id;
        while (true) {
            if (state[cur] == 2) {
                root_id = c.root_of_[cur];
                break;
            }
            if (state[cur] == 1)
                throw CorpusError({"parent cycle involving post " + c.posts_[cur].post_id});
            state[cur] = 1;
            chain.push_back(cur);
            if (!c.posts_[cur].parent_id) {
                root_id = c.posts_[cur].post_id;
                break;
            }
            cur = c.post_index_.at(*c.posts_[cur].parent_id);
        }
        for (std::size_t idx : chain) {
            c.root_of_[idx] = root_id;
            state[idx] = 2;
        }
    }

    for (std::size_t i = 0; i < c.posts_.size(); ++i) {
        const Post& p = c.posts_[i];
        c.discussion_index_[p.discussion_id].push_back(i);
        c.subdiscussion_index_[c.root_of_[i]].push_back(i);
        c.author_index_[p.author_id].push_back(i);
    }
    c.discussion_ids_.reserve(c.discussion_index_.size());
    for (const auto& [id, _] : c.discussion_index_) c.discussion_ids_.push_back(id);
    std::sort(c.discussion_ids_.begin(), c.discussion_ids_.end());

    std::sort(c.votes_.begin(), c.votes_.end());
    for (std::size_t i = 0; i < c.votes_.size(); ++i)
        c.voter_index_[c.votes_[i].voter_id].push_back(i);

    return c;
}

ValidationReport validate_corpus(const Corpus& corpus) {
    ValidationReport r;
    r.n_accounts = corpus.accounts().size();
    r.n_posts = corpus.posts().size();
    r.n_votes = corpus.votes().size();
    r.n_discussions = corpus.discussion_ids().size();

    std::unordered_set<std::string> ips;
    for (const Post& p : corpus.posts()) ips.insert(p.ip);
    r.n_distinct_ips = ips.size();

    for (const Post& p : corpus.posts()) {
        if (p.timestamp < 0)
            r.violations.push_back("post " + p.post_id + " has negative timestamp");
        if (p.upvotes < 0 || p.downvotes < 0)
            r.violations.push_back("post " + p.post_id + " has negative vote counts");
    }
    for (const VoteRecord& v : corpus.votes()) {
        if (v.sign != 1 && v.sign != -1)
            r.violations.push_back("vote (" + v.voter_id + ", " + v.post_id + ") has sign " +
                                   std::to_string(v.sign));
        if (corpus.find_post(v.post_id) == nullptr)
            r.violations.push_back("vote references missing post " + v.post_id);
        if (!corpus.has_account(v.voter_id))
            r.violations.push_back("vote references missing voter " + v.voter_id);
    }

    // Sub-discussion partition: union of sub-discussions covers posts exactly once.
    std::size_t covered = 0;
    for (const std::string& root : corpus.subdiscussion_roots())
        covered += corpus.subdiscussion_posts(root).size();
    if (covered != corpus.posts().size())
        r.violations.push_back("sub-discussions do not partition the post set");

    return r;
}

}  // namespace sockscope
