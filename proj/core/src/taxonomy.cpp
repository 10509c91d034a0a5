#include "sockscope/taxonomy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "sockscope/text.hpp"
#include "sockscope/unicode.hpp"

namespace sockscope {

std::size_t levenshtein(std::string_view a, std::string_view b) {
    const std::vector<char32_t> x = nfc_latin(decode_utf8(a));
    const std::vector<char32_t> y = nfc_latin(decode_utf8(b));
    if (x.empty()) return y.size();
    if (y.empty()) return x.size();

    std::vector<std::size_t> row(y.size() + 1);
    std::iota(row.begin(), row.end(), std::size_t{0});
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::size_t diagonal = row[0];
        row[0] = i + 1;
        for (std::size_t j = 0; j < y.size(); ++j) {
            const std::size_t up = row[j + 1];
            if (x[i] == y[j]) {
                row[j + 1] = diagonal;
            } else {
                row[j + 1] = 1 + std::min({diagonal, up, row[j]});
            }
            diagonal = up;
        }
    }
    return row[y.size()];
}

const char* to_string(Deceptiveness d) {
    return d == Deceptiveness::Pretender ? "pretender" : "non_pretender";
}

const char* to_string(Supportiveness s) {
    switch (s) {
        case Supportiveness::Supporter: return "supporter";
        case Supportiveness::Dissenter: return "dissenter";
        default: return "non_supporter";
    }
}

namespace {

std::string ascii_lower(std::string s) {
    for (char& c : s)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 0x20);
    return s;
}

}  // namespace

DeceptivenessLabel classify_deceptiveness(const Account& a, const Account& b,
                                          std::size_t threshold, bool case_fold) {
    if (a.display_name.empty() || b.display_name.empty())
        throw std::invalid_argument("classify_deceptiveness: missing display name");

    DeceptivenessLabel out;
    if (case_fold) {
        out.name_distance = levenshtein(ascii_lower(a.display_name), ascii_lower(b.display_name));
    } else {
        out.name_distance = levenshtein(a.display_name, b.display_name);
    }
    out.email_distance = levenshtein(a.email_local_part, b.email_local_part);
    out.label =
        out.name_distance < threshold ? Deceptiveness::NonPretender : Deceptiveness::Pretender;
    return out;
}

SupportivenessLabel classify_supportiveness(const Corpus& corpus, const std::string& s1,
                                            const std::string& s2, const Lexicon& lexicon) {
    SupportivenessLabel out;

    auto agreement_of = [&](const Post& p) -> std::optional<double> {
        const TokenizedText t = tokenize(p.text);
        if (t.words.empty()) return std::nullopt;
        return agreement_score(t, lexicon);
    };

    // Replies by `replier` aimed at `target`, directly or through exactly one
    // intermediary post by a third account.
    auto collect = [&](const std::string& replier, const std::string& target) {
        for (std::size_t idx : corpus.posts_by(replier)) {
            const Post& reply = corpus.posts()[idx];
            if (!reply.parent_id) continue;
            const Post* parent = corpus.find_post(*reply.parent_id);
            if (parent == nullptr) continue;

            if (parent->author_id == target) {
                if (auto a = agreement_of(reply))
                    out.interactions.push_back({replier, target, reply.post_id, false, *a});
                continue;
            }
            if (parent->author_id == replier || parent->author_id == s1 ||
                parent->author_id == s2 || !parent->parent_id)
                continue;
            const Post* grandparent = corpus.find_post(*parent->parent_id);
            if (grandparent == nullptr || grandparent->author_id != target) continue;

            const auto reply_agreement = agreement_of(reply);
            const auto via_agreement = agreement_of(*parent);
            if (!reply_agreement || !via_agreement) continue;
            // The intermediary disagreed with the target, so disagreeing with
            // the intermediary counts as agreeing with the target.
            const double adjusted =
                *via_agreement < 0 ? -*reply_agreement : *reply_agreement;
            out.interactions.push_back({replier, target, reply.post_id, true, adjusted});
        }
    };
    collect(s2, s1);
    collect(s1, s2);

    if (out.interactions.empty()) return out;

    double sum = 0;
    for (const InteractionRecord& r : out.interactions) sum += r.adjusted_agreement;
    out.aggregate = sum / static_cast<double>(out.interactions.size());
    if (out.aggregate > 0) {
        out.label = Supportiveness::Supporter;
    } else if (out.aggregate < 0) {
        out.label = Supportiveness::Dissenter;
    } else {
        out.label = Supportiveness::NonSupporter;
    }
    return out;
}

OrdinaryMatcher::OrdinaryMatcher(const Corpus& corpus, const std::vector<SockGroup>& groups)
    : corpus_(corpus) {
    std::set<std::string> socks;
    for (const SockGroup& g : groups) socks.insert(g.members.begin(), g.members.end());
    for (const Account& a : corpus.accounts()) {
        if (socks.contains(a.account_id)) continue;
        if (corpus.posts_by(a.account_id).empty()) continue;
        candidates_.push_back(a.account_id);
    }
    std::sort(candidates_.begin(), candidates_.end());
}

MatchResult OrdinaryMatcher::match(const std::string& sockpuppet_id) {
    MatchResult result;
    result.sockpuppet = sockpuppet_id;

    const auto& sock_posts = corpus_.posts_by(sockpuppet_id);
    if (sock_posts.empty())
        throw std::invalid_argument("match: sockpuppet " + sockpuppet_id + " has no posts");

    auto discussions_of = [&](const std::string& id) -> const std::set<std::string>& {
        auto it = discussions_.find(id);
        if (it == discussions_.end()) {
            std::set<std::string> ds;
            for (std::size_t idx : corpus_.posts_by(id))
                ds.insert(corpus_.posts()[idx].discussion_id);
            it = discussions_.emplace(id, std::move(ds)).first;
        }
        return it->second;
    };

    const double sock_count = static_cast<double>(sock_posts.size());
    const auto& sock_discussions = discussions_of(sockpuppet_id);

    double best_score = std::numeric_limits<double>::infinity();
    std::string best;
    double best_ratio = 0, best_jaccard = 0;

    for (const std::string& candidate : candidates_) {
        if (used_.contains(candidate)) continue;
        const double cand_count = static_cast<double>(corpus_.posts_by(candidate).size());
        const auto& cand_discussions = discussions_of(candidate);

        std::size_t common = 0;
        for (const std::string& d : sock_discussions)
            if (cand_discussions.contains(d)) ++common;
        const std::size_t unioned = sock_discussions.size() + cand_discussions.size() - common;
        const double jaccard =
            unioned == 0 ? 0.0 : static_cast<double>(common) / static_cast<double>(unioned);

        const double ratio = cand_count / sock_count;
        if ((ratio > 2.0 || ratio < 0.5) && jaccard == 0.0) continue;  // caliper

        const double score = std::abs(std::log(ratio)) - jaccard;
        if (score < best_score) {
            best_score = score;
            best = candidate;
            best_ratio = ratio;
            best_jaccard = jaccard;
        }
    }

    if (!best.empty()) {
        used_.insert(best);
        result.ordinary = best;
        result.post_count_ratio = best_ratio;
        result.discussion_jaccard = best_jaccard;
    }
    return result;
}

std::optional<double> JointTableRow::pretender_fraction() const {
    const std::size_t total = pretenders + non_pretenders;
    if (total == 0) return std::nullopt;
    return static_cast<double>(pretenders) / static_cast<double>(total);
}

std::optional<double> JointTableRow::non_pretender_fraction() const {
    const std::size_t total = pretenders + non_pretenders;
    if (total == 0) return std::nullopt;
    return static_cast<double>(non_pretenders) / static_cast<double>(total);
}

JointTable joint_table(const std::vector<std::pair<Deceptiveness, Supportiveness>>& labels) {
    if (labels.empty()) throw std::invalid_argument("joint_table: empty input");
    JointTable t;
    for (const auto& [d, s] : labels) {
        JointTableRow& row = s == Supportiveness::Supporter      ? t.supporter
                             : s == Supportiveness::NonSupporter ? t.non_supporter
                                                                 : t.dissenter;
        if (d == Deceptiveness::Pretender) {
            ++row.pretenders;
        } else {
            ++row.non_pretenders;
        }
    }
    return t;
}

std::map<std::size_t, std::size_t> name_distance_histogram(const Corpus& corpus,
                                                           const std::vector<SockPair>& pairs) {
    std::map<std::size_t, std::size_t> hist;
    for (const SockPair& p : pairs) {
        const Account& a = corpus.account(p.account_a);
        const Account& b = corpus.account(p.account_b);
        ++hist[levenshtein(a.display_name, b.display_name)];
    }
    return hist;
}

}  // namespace sockscope
