#include "sockscope/jsonl.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace sockscope {

namespace {

using nlohmann::json;

// Field extraction helpers. Each returns false and sets `reason` on schema
// violations so the caller can reject the whole line.

bool require_string(const json& obj, const char* key, std::string& out, std::string& reason) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        reason = std::string("missing ") + key;
        return false;
    }
    if (!it->is_string()) {
        reason = std::string(key) + " is not a string";
        return false;
    }
    out = it->get<std::string>();
    return true;
}

bool require_int(const json& obj, const char* key, std::int64_t& out, std::string& reason) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        reason = std::string("missing ") + key;
        return false;
    }
    if (!it->is_number_integer()) {
        reason = std::string(key) + " is not an integer";
        return false;
    }
    out = it->get<std::int64_t>();
    return true;
}

bool require_bool(const json& obj, const char* key, bool& out, std::string& reason) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        reason = std::string("missing ") + key;
        return false;
    }
    if (!it->is_boolean()) {
        reason = std::string(key) + " is not a boolean";
        return false;
    }
    out = it->get<bool>();
    return true;
}

const char* const kPostKeys[] = {"post_id", "author_id", "discussion_id", "parent_id", "ip",
                                 "timestamp", "text", "upvotes", "downvotes", "reported",
                                 "deleted"};
const char* const kAccountKeys[] = {"account_id", "display_name", "email_local_part", "blocked"};
const char* const kVoteKeys[] = {"voter_id", "post_id", "sign"};

template <std::size_t N>
void warn_unknown_keys(const json& obj, const char* const (&known)[N], std::size_t line_no,
                       std::vector<std::string>& warnings) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool found = false;
        for (const char* k : known)
            if (it.key() == k) {
                found = true;
                break;
            }
        if (!found)
            warnings.push_back("line " + std::to_string(line_no) + ": unknown key '" + it.key() +
                               "' ignored");
    }
}

bool parse_post(const json& obj, Post& p, std::string& reason) {
    if (!require_string(obj, "post_id", p.post_id, reason)) return false;
    if (!require_string(obj, "author_id", p.author_id, reason)) return false;
    if (!require_string(obj, "discussion_id", p.discussion_id, reason)) return false;
    auto it = obj.find("parent_id");
    if (it == obj.end()) {
        reason = "missing parent_id";
        return false;
    }
    if (it->is_null()) {
        p.parent_id.reset();
    } else if (it->is_string()) {
        p.parent_id = it->get<std::string>();
    } else {
        reason = "parent_id is neither string nor null";
        return false;
    }
    if (!require_string(obj, "ip", p.ip, reason)) return false;
    if (!require_int(obj, "timestamp", p.timestamp, reason)) return false;
    if (p.timestamp < 0) {
        reason = "negative timestamp";
        return false;
    }
    if (!require_string(obj, "text", p.text, reason)) return false;
    if (!require_int(obj, "upvotes", p.upvotes, reason)) return false;
    if (!require_int(obj, "downvotes", p.downvotes, reason)) return false;
    if (p.upvotes < 0 || p.downvotes < 0) {
        reason = "negative vote count";
        return false;
    }
    if (!require_bool(obj, "reported", p.reported, reason)) return false;
    if (!require_bool(obj, "deleted", p.deleted, reason)) return false;
    return true;
}

bool parse_account(const json& obj, Account& a, std::string& reason) {
    if (!require_string(obj, "account_id", a.account_id, reason)) return false;
    if (!require_string(obj, "display_name", a.display_name, reason)) return false;
    if (!require_string(obj, "email_local_part", a.email_local_part, reason)) return false;
    if (!require_bool(obj, "blocked", a.blocked, reason)) return false;
    return true;
}

bool parse_vote(const json& obj, VoteRecord& v, std::string& reason) {
    if (!require_string(obj, "voter_id", v.voter_id, reason)) return false;
    if (!require_string(obj, "post_id", v.post_id, reason)) return false;
    std::int64_t sign = 0;
    if (!require_int(obj, "sign", sign, reason)) return false;
    if (sign != 1 && sign != -1) {
        reason = "sign must be +1 or -1";
        return false;
    }
    v.sign = static_cast<int>(sign);
    return true;
}

std::string escape_json(const std::string& s) {
    return json(s).dump();  // includes surrounding quotes
}

}  // namespace

ParsedLog parse_activity_log(std::istream& in, LogFormat format) {
    if (!in) throw std::runtime_error("unreadable input stream");

    ParsedLog result;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json obj = json::parse(line, nullptr, false);
        if (obj.is_discarded() || !obj.is_object()) {
            result.rejects.push_back({line_no, "not a JSON object"});
            continue;
        }
        std::string reason;
        switch (format) {
            case LogFormat::posts: {
                Post p;
                if (parse_post(obj, p, reason)) {
                    warn_unknown_keys(obj, kPostKeys, line_no, result.warnings);
                    result.posts.push_back(std::move(p));
                } else {
                    result.rejects.push_back({line_no, reason});
                }
                break;
            }
            case LogFormat::accounts: {
                Account a;
                if (parse_account(obj, a, reason)) {
                    warn_unknown_keys(obj, kAccountKeys, line_no, result.warnings);
                    result.accounts.push_back(std::move(a));
                } else {
                    result.rejects.push_back({line_no, reason});
                }
                break;
            }
            case LogFormat::votes: {
                VoteRecord v;
                if (parse_vote(obj, v, reason)) {
                    warn_unknown_keys(obj, kVoteKeys, line_no, result.warnings);
                    result.votes.push_back(std::move(v));
                } else {
                    result.rejects.push_back({line_no, reason});
                }
                break;
            }
        }
    }
    if (in.bad()) throw std::runtime_error("I/O error while reading stream");
    return result;
}

ParsedLog parse_activity_log_file(const std::filesystem::path& path, LogFormat format) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return parse_activity_log(in, format);
}

void write_posts_jsonl(std::ostream& out, const std::vector<Post>& posts) {
    for (const Post& p : posts) {
        out << "{\"post_id\":" << escape_json(p.post_id)
            << ",\"author_id\":" << escape_json(p.author_id)
            << ",\"discussion_id\":" << escape_json(p.discussion_id) << ",\"parent_id\":"
            << (p.parent_id ? escape_json(*p.parent_id) : std::string("null"))
            << ",\"ip\":" << escape_json(p.ip) << ",\"timestamp\":" << p.timestamp
            << ",\"text\":" << escape_json(p.text) << ",\"upvotes\":" << p.upvotes
            << ",\"downvotes\":" << p.downvotes
            << ",\"reported\":" << (p.reported ? "true" : "false")
            << ",\"deleted\":" << (p.deleted ? "true" : "false") << "}\n";
    }
}

void write_accounts_jsonl(std::ostream& out, const std::vector<Account>& accounts) {
    for (const Account& a : accounts) {
        out << "{\"account_id\":" << escape_json(a.account_id)
            << ",\"display_name\":" << escape_json(a.display_name)
            << ",\"email_local_part\":" << escape_json(a.email_local_part)
            << ",\"blocked\":" << (a.blocked ? "true" : "false") << "}\n";
    }
}

void write_votes_jsonl(std::ostream& out, const std::vector<VoteRecord>& votes) {
    for (const VoteRecord& v : votes) {
        out << "{\"voter_id\":" << escape_json(v.voter_id)
            << ",\"post_id\":" << escape_json(v.post_id) << ",\"sign\":" << v.sign << "}\n";
    }
}

LoadedCorpus load_corpus(const std::filesystem::path& posts_path,
                         const std::filesystem::path& accounts_path,
                         const std::filesystem::path& votes_path) {
    ParsedLog posts = parse_activity_log_file(posts_path, LogFormat::posts);
    ParsedLog accounts = parse_activity_log_file(accounts_path, LogFormat::accounts);
    ParsedLog votes;
    if (!votes_path.empty()) votes = parse_activity_log_file(votes_path, LogFormat::votes);

    LoadedCorpus out;
    auto absorb = [&out](const ParsedLog& log, const char* which) {
        for (const RejectedLine& r : log.rejects)
            out.rejects.push_back({r.line_no, std::string(which) + ": " + r.reason});
        for (const std::string& w : log.warnings)
            out.warnings.push_back(std::string(which) + ": " + w);
    };
    absorb(posts, "posts");
    absorb(accounts, "accounts");
    absorb(votes, "votes");

    out.corpus = build_corpus(std::move(accounts.accounts), std::move(posts.posts),
                              std::move(votes.votes));
    return out;
}

LoadedCorpus load_corpus_dir(const std::filesystem::path& dir) {
    const auto votes = dir / "votes.jsonl";
    return load_corpus(dir / "posts.jsonl", dir / "accounts.jsonl",
                       std::filesystem::exists(votes) ? votes : std::filesystem::path());
}

void write_corpus_dir(const Corpus& corpus, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    auto open = [&](const char* name) {
        std::ofstream f(dir / name, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
        return f;
    };
    {
        auto f = open("posts.jsonl");
        write_posts_jsonl(f, corpus.posts());
    }
    {
        auto f = open("accounts.jsonl");
        write_accounts_jsonl(f, corpus.accounts());
    }
    {
        auto f = open("votes.jsonl");
        write_votes_jsonl(f, corpus.votes());
    }
}

}  // namespace sockscope
