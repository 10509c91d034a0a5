#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sockscope/corpus.hpp"
#include "sockscope/detect.hpp"
#include "sockscope/lexicon.hpp"

namespace sockscope {

// Unit-cost edit distance over Unicode scalar values after canonical
// composition of the Latin repertoire; case is preserved.
std::size_t levenshtein(std::string_view a, std::string_view b);

enum class Deceptiveness { Pretender, NonPretender };

const char* to_string(Deceptiveness d);

struct DeceptivenessLabel {
    std::size_t name_distance = 0;
    std::size_t email_distance = 0;  // reported, not used for the label
    Deceptiveness label = Deceptiveness::NonPretender;
};

// NonPretender iff the display-name distance is below the threshold. Display
// names are compared case-sensitively unless case_fold is set. Throws when
// either display name is empty.
DeceptivenessLabel classify_deceptiveness(const Account& a, const Account& b,
                                          std::size_t threshold = 5, bool case_fold = false);

enum class Supportiveness { Supporter, NonSupporter, Dissenter };

const char* to_string(Supportiveness s);

struct InteractionRecord {
    std::string replying_sock;
    std::string target_sock;
    std::string reply_post_id;
    bool via_intermediary = false;
    double adjusted_agreement = 0;
};

struct SupportivenessLabel {
    std::vector<InteractionRecord> interactions;
    double aggregate = 0;                     // mean over interactions
    std::optional<Supportiveness> label;      // absent = no interaction
};

// Scores how the pair members argue toward each other: direct replies carry
// the reply's agreement score; replies through one intermediary flip sign
// when the intermediary's post disagreed with the target (the reply's
// magnitude is kept). Zero-word replies carry no linguistic evidence and are
// skipped. Aggregate > 0 -> Supporter, < 0 -> Dissenter, exactly 0 ->
// NonSupporter; pairs that never interact get no label.
SupportivenessLabel classify_supportiveness(const Corpus& corpus, const std::string& s1,
                                            const std::string& s2, const Lexicon& lexicon);

struct MatchResult {
    std::string sockpuppet;
    std::optional<std::string> ordinary;  // absent when no candidate fits the caliper
    double post_count_ratio = 0;          // ordinary / sockpuppet
    double discussion_jaccard = 0;
};

// Greedy nearest-neighbor matching of sockpuppets to ordinary accounts,
// without replacement. The match score is |ln(posts_o / posts_s)| -
// discussion_jaccard (lower is better); candidates whose post counts differ
// by more than 2x while sharing no discussion are rejected by the caliper.
class OrdinaryMatcher {
public:
    OrdinaryMatcher(const Corpus& corpus, const std::vector<SockGroup>& groups);

    MatchResult match(const std::string& sockpuppet_id);

private:
    const Corpus& corpus_;
    std::vector<std::string> candidates_;  // sorted ordinary accounts with posts
    std::set<std::string> used_;
    std::map<std::string, std::set<std::string>> discussions_;
};

struct JointTableRow {
    std::size_t pretenders = 0;
    std::size_t non_pretenders = 0;
    std::optional<double> pretender_fraction() const;
    std::optional<double> non_pretender_fraction() const;
};

// Row-normalized deceptiveness fractions per supportiveness class.
struct JointTable {
    JointTableRow supporter;
    JointTableRow non_supporter;
    JointTableRow dissenter;
};

JointTable joint_table(const std::vector<std::pair<Deceptiveness, Supportiveness>>& labels);

// Histogram of display-name distances over pairs, for re-deriving the
// pretender threshold on new data.
std::map<std::size_t, std::size_t> name_distance_histogram(
    const Corpus& corpus, const std::vector<SockPair>& pairs);

}  // namespace sockscope
