#include "sockscope/detect.hpp"

#include <algorithm>
#include <map>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "sockscope/unicode.hpp"
#include "sockscope/util.hpp"

namespace sockscope {

void DetectionParams::validate() const {
    if (window_minutes <= 0) throw std::invalid_argument("window_minutes must be > 0");
    if (min_discussions < 1) throw std::invalid_argument("min_discussions must be >= 1");
    if (ip_trim_fraction < 0.0 || ip_trim_fraction >= 0.5 || account_trim_fraction < 0.0 ||
        account_trim_fraction >= 0.5)
        throw std::invalid_argument("trim fractions must lie in [0, 0.5)");
}

namespace {

// Shared trimming rule for IPs and accounts: rank by count descending with id
// tiebreak, take the top floor(N*fraction), extend through ties at the cutoff
// count, and fall back to the plain top-k when the extension would sweep the
// whole list.
std::set<std::string> trim_top(const std::unordered_map<std::string, std::size_t>& counts,
                               double fraction) {
    std::set<std::string> excluded;
    if (counts.empty() || fraction <= 0.0) return excluded;

    std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(), counts.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    const std::size_t n = ranked.size();
    const std::size_t k = static_cast<std::size_t>(static_cast<double>(n) * fraction + 1e-9);
    if (k == 0) return excluded;

    const std::size_t cutoff_count = ranked[k - 1].second;
    std::size_t end = k;
    while (end < n && ranked[end].second == cutoff_count) ++end;
    if (end == n && k < n) end = k;  // uniform tie: keep the rank-based top-k

    for (std::size_t i = 0; i < end; ++i) excluded.insert(ranked[i].first);
    return excluded;
}

}  // namespace

Exclusions filter_noisy(const Corpus& corpus, const DetectionParams& params) {
    params.validate();

    std::unordered_map<std::string, std::unordered_set<std::string>> accounts_per_ip;
    std::unordered_map<std::string, std::unordered_set<std::string>> ips_per_account;
    for (const Post& p : corpus.posts()) {
        accounts_per_ip[p.ip].insert(p.author_id);
        ips_per_account[p.author_id].insert(p.ip);
    }

    std::unordered_map<std::string, std::size_t> ip_counts;
    for (const auto& [ip, accounts] : accounts_per_ip) ip_counts[ip] = accounts.size();
    std::unordered_map<std::string, std::size_t> account_counts;
    for (const auto& [account, ips] : ips_per_account) account_counts[account] = ips.size();

    Exclusions ex;
    ex.ips = trim_top(ip_counts, params.ip_trim_fraction);
    ex.accounts = trim_top(account_counts, params.account_trim_fraction);
    return ex;
}

namespace {

struct PairKey {
    std::string a, b;  // a < b
    bool operator<(const PairKey& o) const { return std::tie(a, b) < std::tie(o.a, o.b); }
    bool operator==(const PairKey& o) const { return a == o.a && b == o.b; }
};

using EvidenceMap = std::map<PairKey, std::vector<PairEvidence>>;

// Scans one discussion for same-IP post pairs within the window.
void scan_discussion(const Corpus& corpus, const std::string& discussion_id,
                     std::int64_t window_seconds, const Exclusions& exclusions,
                     EvidenceMap& evidence) {
    std::unordered_map<std::string, std::vector<std::size_t>> by_ip;
    for (std::size_t idx : corpus.discussion_posts(discussion_id)) {
        const Post& p = corpus.posts()[idx];
        if (exclusions.ips.contains(p.ip)) continue;
        if (exclusions.accounts.contains(p.author_id)) continue;
        by_ip[p.ip].push_back(idx);  // discussion_posts is time-ordered
    }

    for (const auto& [ip, indices] : by_ip) {
        for (std::size_t j = 1; j < indices.size(); ++j) {
            const Post& pj = corpus.posts()[indices[j]];
            for (std::size_t i = j; i-- > 0;) {
                const Post& pi = corpus.posts()[indices[i]];
                const std::int64_t delta = pj.timestamp - pi.timestamp;
                if (delta > window_seconds) break;
                if (pi.author_id == pj.author_id) continue;
                const bool i_first = pi.author_id < pj.author_id;
                const Post& pa = i_first ? pi : pj;
                const Post& pb = i_first ? pj : pi;
                evidence[{pa.author_id, pb.author_id}].push_back(
                    {discussion_id, pa.post_id, pb.post_id, ip, delta});
            }
        }
    }
}

}  // namespace

std::vector<SockPair> find_sockpuppet_pairs(const Corpus& corpus, const DetectionParams& params,
                                            const Exclusions& exclusions, int threads) {
    params.validate();
    const std::int64_t window_seconds = static_cast<std::int64_t>(params.window_minutes) * 60;
    const auto& discussions = corpus.discussion_ids();

    const int n_threads =
        std::max(1, std::min<int>(threads, static_cast<int>(discussions.size())));
    std::vector<EvidenceMap> partial(static_cast<std::size_t>(n_threads));
    if (n_threads == 1) {
        for (const std::string& d : discussions)
            scan_discussion(corpus, d, window_seconds, exclusions, partial[0]);
    } else {
        std::vector<std::thread> workers;
        workers.reserve(static_cast<std::size_t>(n_threads));
        for (int t = 0; t < n_threads; ++t) {
            workers.emplace_back([&, t] {
                for (std::size_t d = static_cast<std::size_t>(t); d < discussions.size();
                     d += static_cast<std::size_t>(n_threads))
                    scan_discussion(corpus, discussions[d], window_seconds, exclusions,
                                    partial[static_cast<std::size_t>(t)]);
            });
        }
        for (auto& w : workers) w.join();
    }

    // Deterministic merge: map order is fixed, shard order is fixed.
    EvidenceMap merged = std::move(partial[0]);
    for (std::size_t t = 1; t < partial.size(); ++t)
        for (auto& [key, items] : partial[t]) {
            auto& dst = merged[key];
            dst.insert(dst.end(), items.begin(), items.end());
        }

    std::vector<SockPair> pairs;
    for (auto& [key, items] : merged) {
        std::sort(items.begin(), items.end());
        std::unordered_set<std::string> discussions_seen;
        for (const PairEvidence& e : items) discussions_seen.insert(e.discussion_id);
        if (discussions_seen.size() < static_cast<std::size_t>(params.min_discussions)) continue;
        SockPair pair;
        pair.account_a = key.a;
        pair.account_b = key.b;
        pair.evidence = std::move(items);
        pair.distinct_evidence_discussions = discussions_seen.size();
        pairs.push_back(std::move(pair));
    }
    return pairs;  // map iteration order keeps (a, b) sorted
}

std::vector<SockGroup> group_pairs(std::vector<SockPair> pairs) {
    // union-find over the accounts appearing in pairs
    std::map<std::string, std::string> parent;
    std::function<std::string(const std::string&)> find = [&](const std::string& x) {
        auto it = parent.find(x);
        if (it->second == x) return x;
        const std::string root = find(it->second);
        it->second = root;
        return root;
    };
    auto ensure = [&](const std::string& x) {
        parent.try_emplace(x, x);
    };
    for (const SockPair& p : pairs) {
        ensure(p.account_a);
        ensure(p.account_b);
        const std::string ra = find(p.account_a);
        const std::string rb = find(p.account_b);
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    }

    std::map<std::string, SockGroup> by_root;
    for (const auto& [account, _] : parent) by_root[find(account)].members.push_back(account);
    for (SockPair& p : pairs) by_root[find(p.account_a)].pairs.push_back(std::move(p));

    std::vector<SockGroup> groups;
    groups.reserve(by_root.size());
    for (auto& [_, g] : by_root) {
        std::sort(g.members.begin(), g.members.end());
        std::sort(g.pairs.begin(), g.pairs.end(), [](const SockPair& x, const SockPair& y) {
            return std::tie(x.account_a, x.account_b) < std::tie(y.account_a, y.account_b);
        });
        groups.push_back(std::move(g));
    }
    return groups;
}

void designate_primary(SockGroup& group, const Corpus& corpus) {
    std::string best;
    std::size_t best_posts = 0;
    std::int64_t best_first = 0;
    for (const std::string& member : group.members) {
        const auto& posts = corpus.posts_by(member);
        const std::size_t n = posts.size();
        const std::int64_t first =
            posts.empty() ? std::numeric_limits<std::int64_t>::max()
                          : corpus.posts()[posts.front()].timestamp;
        bool better = false;
        if (best.empty() || n > best_posts) {
            better = true;
        } else if (n == best_posts) {
            if (first < best_first) better = true;
            else if (first == best_first && member < best) better = true;
        }
        if (better) {
            best = member;
            best_posts = n;
            best_first = first;
        }
    }
    group.primary = best;
}

std::vector<SockGroup> detect_sockpuppets(const Corpus& corpus, const DetectionParams& params,
                                          int threads) {
    const Exclusions exclusions = filter_noisy(corpus, params);
    std::vector<SockGroup> groups =
        group_pairs(find_sockpuppet_pairs(corpus, params, exclusions, threads));
    for (SockGroup& g : groups) designate_primary(g, corpus);
    return groups;
}

namespace {

// Per-pair calibration metrics over the full cross product of the two
// accounts' posts: |Δt| in seconds and |length difference| in codepoints.
struct PairMetrics {
    std::optional<double> gap_median;
    std::optional<double> length_diff_median;
};

PairMetrics pair_metrics(const Corpus& corpus, const std::string& a, const std::string& b) {
    const auto& pa = corpus.posts_by(a);
    const auto& pb = corpus.posts_by(b);
    std::vector<double> gaps, diffs;
    gaps.reserve(pa.size() * pb.size());
    diffs.reserve(pa.size() * pb.size());
    for (std::size_t i : pa) {
        const Post& x = corpus.posts()[i];
        const double len_x = static_cast<double>(codepoint_count(x.text));
        for (std::size_t j : pb) {
            const Post& y = corpus.posts()[j];
            gaps.push_back(std::abs(static_cast<double>(x.timestamp - y.timestamp)));
            diffs.push_back(std::abs(len_x - static_cast<double>(codepoint_count(y.text))));
        }
    }
    return {median_opt(std::move(gaps)), median_opt(std::move(diffs))};
}

}  // namespace

std::vector<CalibrationPoint> calibration_curves(const Corpus& corpus, DetectionParams params,
                                                 const std::vector<int>& k_range,
                                                 std::uint64_t seed) {
    if (k_range.empty()) throw std::invalid_argument("calibration_curves: empty K range");
    params.validate();
    const Exclusions exclusions = filter_noisy(corpus, params);

    std::vector<CalibrationPoint> points;
    points.reserve(k_range.size());
    for (const int k : k_range) {
        DetectionParams p = params;
        p.min_discussions = k;
        const std::vector<SockPair> pairs = find_sockpuppet_pairs(corpus, p, exclusions);

        CalibrationPoint point;
        point.k = k;
        point.identified_pairs = pairs.size();

        std::set<std::string> pair_members;
        std::vector<double> sock_gaps, sock_diffs;
        for (const SockPair& sp : pairs) {
            pair_members.insert(sp.account_a);
            pair_members.insert(sp.account_b);
            const PairMetrics m = pair_metrics(corpus, sp.account_a, sp.account_b);
            if (m.gap_median) sock_gaps.push_back(*m.gap_median);
            if (m.length_diff_median) sock_diffs.push_back(*m.length_diff_median);
        }
        point.sock_gap_median_seconds = median_opt(std::move(sock_gaps));
        point.sock_length_diff_median = median_opt(std::move(sock_diffs));

        // Equal number of uniformly sampled ordinary pairs (accounts outside
        // any identified pair, with at least one post each).
        std::vector<std::string> ordinary;
        for (const Account& a : corpus.accounts())
            if (!pair_members.contains(a.account_id) && !corpus.posts_by(a.account_id).empty())
                ordinary.push_back(a.account_id);
        std::sort(ordinary.begin(), ordinary.end());

        Rng rng(seed ^ static_cast<std::uint64_t>(k));
        std::vector<double> rand_gaps, rand_diffs;
        const std::size_t wanted = std::max<std::size_t>(pairs.size(), 1);
        if (ordinary.size() >= 2) {
            for (std::size_t s = 0; s < wanted; ++s) {
                const std::size_t i = rng.index(ordinary.size());
                std::size_t j = rng.index(ordinary.size() - 1);
                if (j >= i) ++j;
                const PairMetrics m = pair_metrics(corpus, ordinary[i], ordinary[j]);
                if (m.gap_median) rand_gaps.push_back(*m.gap_median);
                if (m.length_diff_median) rand_diffs.push_back(*m.length_diff_median);
            }
        }
        point.random_gap_median_seconds = median_opt(std::move(rand_gaps));
        point.random_length_diff_median = median_opt(std::move(rand_diffs));

        points.push_back(std::move(point));
    }
    return points;
}

}  // namespace sockscope
