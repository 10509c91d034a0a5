#include "sockscope/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sockscope {

namespace {

// Category name constants used by the built-in lexicon. These mirror common
// word-category conventions: i (first-person singular), you (second person),
// shehe (third-person singular), they (plural pronouns), article, verb,
// adverb, conj, negate, assent, dissent, swear, funct.

struct BuiltinCategory {
    const char* name;
    const char* words;  // space separated; '*' suffix marks a prefix pattern
};

const BuiltinCategory kBuiltinCategories[] = {
    {"i", "i me my mine myself im i'm i'll i've i'd"},
    {"you", "you your yours yourself yourselves u you're you'll you've you'd youre"},
    {"shehe", "he she him her his hers himself herself he's she's hes shes"},
    {"they",
     "we us our ours ourselves they them their theirs themselves we're they're we've they've"},
    {"article", "a an the"},
    {"verb",
     "is are was were be been being am do does did done have has had will would can could "
     "should shall may might must get got make made go goes went say said see saw know knew "
     "think thought take took want wanted give gave use used find found tell told work worked"},
    {"adverb",
     "very really just now then here there always never often again also too still already "
     "soon quickly slowly maybe perhaps quite rather almost enough"},
    {"conj",
     "and but or because so although though while whereas nor yet if unless since until when "
     "whenever where wherever as"},
    {"negate",
     "no not never none nothing nobody nowhere neither nor cannot can't cant don't dont "
     "doesn't doesnt didn't didnt won't wont wouldn't wouldnt isn't isnt aren't arent wasn't "
     "wasnt weren't werent ain't aint"},
    {"assent",
     "agree agrees agreed agreement yes yeah yep yup ok okay sure true right exactly "
     "absolutely definitely correct indeed certainly totally"},
    {"dissent",
     "disagree disagrees disagreed disagreement wrong false incorrect nope nah rubbish "
     "nonsense untrue objection oppose opposed"},
    {"swear", "damn hell crap shit fuck fucking bastard bitch ass asshole dick piss bloody"},
    {"funct",
     "a an the and but or of to in on at by for with from as is are was were be i you he she "
     "it we they this that these those not no what which who whom whose"},
};

struct BuiltinValence {
    const char* word;
    double score;
};

const BuiltinValence kBuiltinValence[] = {
    {"good", 0.7},      {"great", 0.8},     {"excellent", 0.9}, {"love", 0.8},
    {"like", 0.4},      {"best", 0.8},      {"happy", 0.7},     {"nice", 0.6},
    {"awesome", 0.9},   {"amazing", 0.9},   {"thanks", 0.6},    {"thank", 0.6},
    {"wonderful", 0.8}, {"fantastic", 0.9}, {"agree", 0.4},     {"true", 0.3},
    {"win", 0.5},       {"right", 0.3},     {"fun", 0.6},       {"glad", 0.6},
    {"bad", -0.7},      {"terrible", -0.8}, {"awful", -0.8},    {"hate", -0.8},
    {"worst", -0.9},    {"horrible", -0.8}, {"stupid", -0.7},   {"idiot", -0.8},
    {"wrong", -0.4},    {"sad", -0.6},      {"angry", -0.6},    {"fail", -0.6},
    {"dumb", -0.7},     {"ugly", -0.6},     {"trash", -0.6},    {"garbage", -0.6},
    {"liar", -0.7},     {"lie", -0.5},      {"lies", -0.5},     {"scam", -0.7},
    {"fake", -0.5},     {"disgusting", -0.8},
};

}  // namespace

void Lexicon::add_pattern(const std::string& category, const std::string& pattern) {
    if (pattern.empty()) throw std::invalid_argument("empty lexicon pattern");
    const std::size_t stars = static_cast<std::size_t>(
        std::count(pattern.begin(), pattern.end(), '*'));
    auto [it, inserted] = categories_.try_emplace(category);
    if (inserted) {
        category_names_.push_back(category);
        std::sort(category_names_.begin(), category_names_.end());
    }
    if (stars == 0) {
        it->second.exact.insert(pattern);
    } else if (stars == 1 && pattern.back() == '*' && pattern.size() > 1) {
        it->second.prefixes.push_back(pattern.substr(0, pattern.size() - 1));
    } else {
        throw std::invalid_argument("bad lexicon pattern '" + pattern +
                                    "': prefix patterns have exactly one trailing '*'");
    }
}

void Lexicon::add_valence(const std::string& word, double score) { valence_[word] = score; }

bool Lexicon::has_category(const std::string& category) const {
    return categories_.contains(category);
}

bool Lexicon::matches(const std::string& category, const std::string& word) const {
    auto it = categories_.find(category);
    if (it == categories_.end()) return false;
    if (it->second.exact.contains(word)) return true;
    for (const std::string& prefix : it->second.prefixes)
        if (word.size() >= prefix.size() && word.compare(0, prefix.size(), prefix) == 0)
            return true;
    return false;
}

std::optional<double> Lexicon::valence(const std::string& word) const {
    auto it = valence_.find(word);
    if (it == valence_.end()) return std::nullopt;
    return it->second;
}

Lexicon Lexicon::load(const std::filesystem::path& lexicon_tsv,
                      const std::filesystem::path& valence_tsv) {
    Lexicon lex;
    {
        std::ifstream in(lexicon_tsv);
        if (!in) throw std::runtime_error("cannot open lexicon file " + lexicon_tsv.string());
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty() || line[0] == '#') continue;
            const auto tab = line.find('\t');
            if (tab == std::string::npos)
                throw std::runtime_error(lexicon_tsv.string() + ":" + std::to_string(line_no) +
                                         ": expected category<TAB>pattern");
            lex.add_pattern(line.substr(0, tab), line.substr(tab + 1));
        }
    }
    if (!valence_tsv.empty()) {
        std::ifstream in(valence_tsv);
        if (!in) throw std::runtime_error("cannot open valence file " + valence_tsv.string());
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty() || line[0] == '#') continue;
            const auto tab = line.find('\t');
            if (tab == std::string::npos)
                throw std::runtime_error(valence_tsv.string() + ":" + std::to_string(line_no) +
                                         ": expected word<TAB>score");
            lex.add_valence(line.substr(0, tab), std::stod(line.substr(tab + 1)));
        }
    }
    return lex;
}

Lexicon Lexicon::builtin() {
    Lexicon lex;
    for (const BuiltinCategory& cat : kBuiltinCategories) {
        std::istringstream words(cat.words);
        std::string w;
        while (words >> w) lex.add_pattern(cat.name, w);
    }
    for (const BuiltinValence& v : kBuiltinValence) lex.add_valence(v.word, v.score);
    return lex;
}

}  // namespace sockscope
