#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sockscope/corpus.hpp"

namespace sockscope {

struct DetectionParams {
    int window_minutes = 15;          // T
    int min_discussions = 3;          // K_min
    double ip_trim_fraction = 0.05;   // top IPs by distinct-account use
    double account_trim_fraction = 0.05;  // top accounts by distinct-IP use

    void validate() const;
};

struct Exclusions {
    std::set<std::string> ips;
    std::set<std::string> accounts;
};

// Ranks IPs by the number of distinct accounts posting from them and accounts
// by the number of distinct IPs they use, and excludes the top trim fraction
// of each. Ties at the cutoff count are all excluded; if that tie extension
// would exclude every item (a uniform tie), the exclusion falls back to the
// rank-based top-k with ids breaking ties.
Exclusions filter_noisy(const Corpus& corpus, const DetectionParams& params);

struct PairEvidence {
    std::string discussion_id;
    std::string post_a_id;  // authored by account_a
    std::string post_b_id;  // authored by account_b
    std::string ip;
    std::int64_t delta_seconds = 0;

    friend auto operator<=>(const PairEvidence&, const PairEvidence&) = default;
};

struct SockPair {
    std::string account_a;  // account_a < account_b
    std::string account_b;
    std::vector<PairEvidence> evidence;  // sorted
    std::size_t distinct_evidence_discussions = 0;

    friend bool operator==(const SockPair&, const SockPair&) = default;
};

// Returns every account pair that posted from the same IP in the same
// discussion within the time window, in at least min_discussions distinct
// discussions. Posts from excluded IPs or excluded authors never contribute
// evidence. Output is sorted by (account_a, account_b).
std::vector<SockPair> find_sockpuppet_pairs(const Corpus& corpus, const DetectionParams& params,
                                            const Exclusions& exclusions, int threads = 1);

struct SockGroup {
    std::vector<std::string> members;  // sorted, size >= 2
    std::string primary;
    std::vector<SockPair> pairs;  // constituent pairs, sorted
};

// Connected components of the pair graph; members and pairs sorted.
std::vector<SockGroup> group_pairs(std::vector<SockPair> pairs);

// primary = member with the most posts; ties break on earliest first post,
// then smallest account id.
void designate_primary(SockGroup& group, const Corpus& corpus);

// filter -> pairs -> groups -> primaries, in one call.
std::vector<SockGroup> detect_sockpuppets(const Corpus& corpus, const DetectionParams& params,
                                          int threads = 1);

// Per-K statistics behind the K_min calibration plot: medians, across
// identified pairs and across an equal number of seeded random ordinary
// pairs, of each pair's median cross-post time gap and post-length
// difference (length in codepoints).
struct CalibrationPoint {
    int k = 0;
    std::size_t identified_pairs = 0;
    std::optional<double> sock_gap_median_seconds;
    std::optional<double> sock_length_diff_median;
    std::optional<double> random_gap_median_seconds;
    std::optional<double> random_length_diff_median;
};

std::vector<CalibrationPoint> calibration_curves(const Corpus& corpus, DetectionParams params,
                                                 const std::vector<int>& k_range,
                                                 std::uint64_t seed);

}  // namespace sockscope
