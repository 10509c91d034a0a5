#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "sockscope/corpus.hpp"
#include "sockscope/lexicon.hpp"

namespace sockscope {

// Counted characters are the non-whitespace codepoints of the text.
// alphabetic + digit + punctuation + special partition the total; uppercase
// is the uppercase subset of alphabetic. Punctuation means sentence
// punctuation (. , ! ? ; : ' ") — everything else non-alphanumeric counts as
// special, including non-ASCII codepoints.
struct CharCounts {
    std::size_t total = 0;
    std::size_t alphabetic = 0;
    std::size_t uppercase = 0;
    std::size_t digit = 0;
    std::size_t punctuation = 0;
    std::size_t special = 0;
};

struct TokenizedText {
    std::vector<std::vector<std::string>> sentences;  // words per sentence
    std::vector<std::string> words;                   // flattened, lowercased
    std::vector<int> syllables;                       // per word, >= 1
    CharCounts chars;
    std::size_t alnum_chars = 0;       // alphanumeric codepoints, for ARI
    std::size_t word_chars = 0;        // codepoints inside words

    std::size_t word_count() const { return words.size(); }
    std::size_t sentence_count() const { return sentences.size(); }
};

// Sentences split on . ! ? followed by whitespace or end of text; words are
// maximal alphanumeric runs (apostrophes kept between alphanumerics);
// syllables estimated by vowel-group counting with a silent-e adjustment,
// floor 1.
TokenizedText tokenize(std::string_view text);

int estimate_syllables(std::string_view lowercase_word);

// fraction = words matching the category / total words
double category_fraction(const TokenizedText& tokens, const Lexicon& lexicon,
                         const std::string& category);
std::map<std::string, double> category_fractions(const TokenizedText& tokens,
                                                 const Lexicon& lexicon);

// ARI = 4.71 * (alphanumeric chars / words) + 0.5 * (words / sentences) - 21.43
double readability_ari(const TokenizedText& tokens);

struct Sentiment {
    double positive = 0;
    double negative = 0;
    double compound = 0;  // positive - negative
};

Sentiment sentiment(const TokenizedText& tokens, const Lexicon& lexicon);

// assent fraction minus (negation ∪ dissent) fraction; a word in both assent
// and a negative category contributes to both terms.
double agreement_score(const TokenizedText& tokens, const Lexicon& lexicon);

// Named linguistic features for one user, in [-1,1]/[0,1]/real ranges as
// appropriate. Ordered by name so profiles with equal name sets compare
// positionally.
using LanguageProfile = std::map<std::string, double>;

// Aggregates over all of the account's posts that contain at least one word:
// fraction-type features pool words/characters across posts; mean post length
// averages per post uniformly. Throws when the account has no such post.
LanguageProfile user_profile(const Corpus& corpus, const std::string& account_id,
                             const Lexicon& lexicon);

// Cosine similarity over the common ordered feature vector; zero vectors
// compare as 0. Throws when the profiles' feature name sets differ.
double profile_similarity(const LanguageProfile& a, const LanguageProfile& b);

}  // namespace sockscope
