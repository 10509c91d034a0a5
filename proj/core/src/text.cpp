#include "sockscope/text.hpp"

#include <cmath>
#include <stdexcept>

#include "sockscope/unicode.hpp"

namespace sockscope {

namespace {

bool is_ascii_space(char32_t c) {
    return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == U'\f' || c == U'\v';
}

bool is_ascii_alpha(char32_t c) { return (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z'); }
bool is_ascii_digit(char32_t c) { return c >= U'0' && c <= U'9'; }

bool is_sentence_punct(char32_t c) {
    switch (c) {
        case U'.':
        case U',':
        case U'!':
        case U'?':
        case U';':
        case U':':
        case U'\'':
        case U'"': return true;
        default: return false;
    }
}

// Word characters: ASCII alphanumerics plus any non-ASCII codepoint.
bool is_word_char(char32_t c) { return is_ascii_alpha(c) || is_ascii_digit(c) || c >= 0x80; }

void append_utf8(std::string& s, char32_t cp) {
    if (cp < 0x80) {
        s.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        s.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        s.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        s.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        s.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        s.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        s.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        s.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        s.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        s.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

bool is_vowel(char c) {
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
}

}  // namespace

int estimate_syllables(std::string_view word) {
    int groups = 0;
    bool in_group = false;
    for (char c : word) {
        if (is_vowel(c)) {
            if (!in_group) ++groups;
            in_group = true;
        } else {
            in_group = false;
        }
    }
    // silent final e: "cake" -> 1, but keep "-le" endings ("apple" -> 2)
    const std::size_t n = word.size();
    if (groups > 1 && n >= 2 && word[n - 1] == 'e' && !is_vowel(word[n - 2]) &&
        !(n >= 2 && word[n - 2] == 'l')) {
        --groups;
    }
    return groups < 1 ? 1 : groups;
}

TokenizedText tokenize(std::string_view text) {
    TokenizedText out;
    const std::vector<char32_t> cps = decode_utf8(text);

    std::string word;
    std::size_t word_cp_len = 0;
    std::vector<std::string> sentence;

    auto flush_word = [&] {
        if (word.empty()) return;
        out.word_chars += word_cp_len;
        sentence.push_back(std::move(word));
        word.clear();
        word_cp_len = 0;
    };
    auto flush_sentence = [&] {
        flush_word();
        if (!sentence.empty()) {
            out.sentences.push_back(std::move(sentence));
            sentence.clear();
        }
    };

    for (std::size_t i = 0; i < cps.size(); ++i) {
        const char32_t c = cps[i];

        if (!is_ascii_space(c)) {
            ++out.chars.total;
            if (is_ascii_alpha(c)) {
                ++out.chars.alphabetic;
                if (c >= U'A' && c <= U'Z') ++out.chars.uppercase;
            } else if (is_ascii_digit(c)) {
                ++out.chars.digit;
            } else if (is_sentence_punct(c)) {
                ++out.chars.punctuation;
            } else {
                ++out.chars.special;
            }
            if (is_ascii_alpha(c) || is_ascii_digit(c)) ++out.alnum_chars;
        }

        if (is_word_char(c)) {
            char32_t lowered = c;
            if (c >= U'A' && c <= U'Z') lowered = c + 0x20;
            append_utf8(word, lowered);
            ++word_cp_len;
        } else if (c == U'\'' && !word.empty() && i + 1 < cps.size() && is_word_char(cps[i + 1])) {
            // apostrophes survive only between alphanumerics ("don't")
            word.push_back('\'');
            ++word_cp_len;
        } else {
            flush_word();
        }

        if (c == U'.' || c == U'!' || c == U'?') {
            const bool at_end = i + 1 == cps.size();
            if (at_end || is_ascii_space(cps[i + 1])) flush_sentence();
        }
    }
    flush_sentence();

    for (const auto& s : out.sentences)
        for (const std::string& w : s) out.words.push_back(w);
    out.syllables.reserve(out.words.size());
    for (const std::string& w : out.words) out.syllables.push_back(estimate_syllables(w));
    return out;
}

double category_fraction(const TokenizedText& tokens, const Lexicon& lexicon,
                         const std::string& category) {
    if (tokens.words.empty()) throw std::invalid_argument("category_fraction: no words");
    std::size_t matched = 0;
    for (const std::string& w : tokens.words)
        if (lexicon.matches(category, w)) ++matched;
    return static_cast<double>(matched) / static_cast<double>(tokens.words.size());
}

std::map<std::string, double> category_fractions(const TokenizedText& tokens,
                                                 const Lexicon& lexicon) {
    std::map<std::string, double> out;
    for (const std::string& cat : lexicon.categories())
        out[cat] = category_fraction(tokens, lexicon, cat);
    return out;
}

double readability_ari(const TokenizedText& tokens) {
    if (tokens.words.empty() || tokens.sentences.empty())
        throw std::invalid_argument("readability_ari: need at least one word and one sentence");
    const double words = static_cast<double>(tokens.word_count());
    const double sentences = static_cast<double>(tokens.sentence_count());
    const double chars = static_cast<double>(tokens.alnum_chars);
    return 4.71 * (chars / words) + 0.5 * (words / sentences) - 21.43;
}

Sentiment sentiment(const TokenizedText& tokens, const Lexicon& lexicon) {
    if (tokens.words.empty()) throw std::invalid_argument("sentiment: no words");
    double pos = 0, neg = 0;
    for (const std::string& w : tokens.words) {
        if (auto v = lexicon.valence(w)) {
            if (*v > 0) pos += *v;
            if (*v < 0) neg += -*v;
        }
    }
    const double n = static_cast<double>(tokens.words.size());
    Sentiment s;
    s.positive = pos / n;
    s.negative = neg / n;
    s.compound = s.positive - s.negative;
    return s;
}

double agreement_score(const TokenizedText& tokens, const Lexicon& lexicon) {
    if (tokens.words.empty()) throw std::invalid_argument("agreement_score: no words");
    std::size_t assent = 0, negative = 0;
    for (const std::string& w : tokens.words) {
        if (lexicon.matches("assent", w)) ++assent;
        if (lexicon.matches("negate", w) || lexicon.matches("dissent", w)) ++negative;
    }
    const double n = static_cast<double>(tokens.words.size());
    return static_cast<double>(assent) / n - static_cast<double>(negative) / n;
}

LanguageProfile user_profile(const Corpus& corpus, const std::string& account_id,
                             const Lexicon& lexicon) {
    const auto& post_indices = corpus.posts_by(account_id);

    std::size_t n_words = 0, n_sentences = 0, n_syllables = 0, word_chars = 0, alnum = 0;
    CharCounts chars;
    std::map<std::string, std::size_t> category_counts;
    for (const std::string& cat : lexicon.categories()) category_counts[cat] = 0;
    double pos = 0, neg = 0;
    std::size_t assent = 0, negative = 0;
    std::vector<double> post_word_counts;

    for (std::size_t idx : post_indices) {
        const TokenizedText t = tokenize(corpus.posts()[idx].text);
        if (t.words.empty()) continue;
        n_words += t.word_count();
        n_sentences += t.sentence_count();
        word_chars += t.word_chars;
        alnum += t.alnum_chars;
        chars.total += t.chars.total;
        chars.alphabetic += t.chars.alphabetic;
        chars.uppercase += t.chars.uppercase;
        chars.digit += t.chars.digit;
        chars.punctuation += t.chars.punctuation;
        chars.special += t.chars.special;
        for (const std::string& w : t.words) {
            for (const std::string& cat : lexicon.categories())
                if (lexicon.matches(cat, w)) ++category_counts[cat];
            if (auto v = lexicon.valence(w)) {
                if (*v > 0) pos += *v;
                if (*v < 0) neg += -*v;
            }
            if (lexicon.matches("assent", w)) ++assent;
            if (lexicon.matches("negate", w) || lexicon.matches("dissent", w)) ++negative;
        }
        for (int s : t.syllables) n_syllables += static_cast<std::size_t>(s);
        post_word_counts.push_back(static_cast<double>(t.word_count()));
    }

    if (post_word_counts.empty())
        throw std::invalid_argument("user_profile: account " + account_id +
                                    " has no nonempty post");

    const double nw = static_cast<double>(n_words);
    const double ns = static_cast<double>(n_sentences);
    const double nc = static_cast<double>(chars.total);

    LanguageProfile p;
    for (const auto& [cat, count] : category_counts)
        p["cat_" + cat] = static_cast<double>(count) / nw;
    p["words_per_sentence"] = nw / ns;
    p["syllables_per_word"] = static_cast<double>(n_syllables) / nw;
    p["mean_word_length"] = static_cast<double>(word_chars) / nw;
    p["ari"] = 4.71 * (static_cast<double>(alnum) / nw) + 0.5 * (nw / ns) - 21.43;
    p["sentiment_pos"] = pos / nw;
    p["sentiment_neg"] = neg / nw;
    p["sentiment_compound"] = (pos - neg) / nw;
    p["emotion_strength"] = (pos + neg) / nw;
    p["agreement"] = (static_cast<double>(assent) - static_cast<double>(negative)) / nw;
    p["frac_uppercase"] = nc > 0 ? static_cast<double>(chars.uppercase) / nc : 0.0;
    p["frac_punctuation"] = nc > 0 ? static_cast<double>(chars.punctuation) / nc : 0.0;
    p["frac_special"] = nc > 0 ? static_cast<double>(chars.special) / nc : 0.0;
    p["frac_alphabetic"] = nc > 0 ? static_cast<double>(chars.alphabetic) / nc : 0.0;
    double mean_post_words = 0;
    for (double w : post_word_counts) mean_post_words += w;
    p["mean_post_words"] = mean_post_words / static_cast<double>(post_word_counts.size());
    return p;
}

double profile_similarity(const LanguageProfile& a, const LanguageProfile& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("profile_similarity: feature sets differ");
    double dot = 0, na = 0, nb = 0;
    auto ita = a.begin();
    auto itb = b.begin();
    for (; ita != a.end(); ++ita, ++itb) {
        if (ita->first != itb->first)
            throw std::invalid_argument("profile_similarity: feature sets differ");
        dot += ita->second * itb->second;
        na += ita->second * ita->second;
        nb += itb->second * itb->second;
    }
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace sockscope
