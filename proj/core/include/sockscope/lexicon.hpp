#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace sockscope {

// Word-category lexicon plus optional valence scores. Patterns are literal
// words or prefixes written with exactly one trailing '*'. A word may belong
// to any number of categories.
class Lexicon {
public:
    // lexicon TSV: category<TAB>pattern ; valence TSV: word<TAB>score
    static Lexicon load(const std::filesystem::path& lexicon_tsv,
                        const std::filesystem::path& valence_tsv = {});

    // Small built-in substitute covering the categories downstream analyses
    // rely on (pronoun classes, articles, verbs, adverbs, conjunctions,
    // negations, assent, dissent, swear, function words) plus a modest
    // valence list.
    static Lexicon builtin();

    void add_pattern(const std::string& category, const std::string& pattern);
    void add_valence(const std::string& word, double score);

    const std::vector<std::string>& categories() const { return category_names_; }
    bool has_category(const std::string& category) const;

    // True when `word` (already lowercased) matches any pattern of category.
    bool matches(const std::string& category, const std::string& word) const;

    std::optional<double> valence(const std::string& word) const;
    bool has_valence_entries() const { return !valence_.empty(); }

private:
    struct Category {
        std::set<std::string> exact;
        std::vector<std::string> prefixes;  // stored without the trailing '*'
    };
    std::map<std::string, Category> categories_;
    std::vector<std::string> category_names_;  // sorted
    std::map<std::string, double> valence_;
};

}  // namespace sockscope
