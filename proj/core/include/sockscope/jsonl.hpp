#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "sockscope/corpus.hpp"

namespace sockscope {

enum class LogFormat { posts, accounts, votes };

struct RejectedLine {
    std::size_t line_no = 0;  // 1-based
    std::string reason;
};

// Result of parsing one newline-delimited log stream. Records appear in input
// order; malformed lines land in `rejects` with the offending line number.
struct ParsedLog {
    std::vector<Account> accounts;
    std::vector<Post> posts;
    std::vector<VoteRecord> votes;
    std::vector<RejectedLine> rejects;
    std::vector<std::string> warnings;  // e.g. unknown keys, ignored
};

ParsedLog parse_activity_log(std::istream& in, LogFormat format);
ParsedLog parse_activity_log_file(const std::filesystem::path& path, LogFormat format);

// Canonical JSONL emission; re-parsing yields field-identical records.
void write_posts_jsonl(std::ostream& out, const std::vector<Post>& posts);
void write_accounts_jsonl(std::ostream& out, const std::vector<Account>& accounts);
void write_votes_jsonl(std::ostream& out, const std::vector<VoteRecord>& votes);

struct LoadedCorpus {
    Corpus corpus;
    std::vector<RejectedLine> rejects;
    std::vector<std::string> warnings;
};

// Loads posts.jsonl / accounts.jsonl / votes.jsonl (votes optional) and builds
// the corpus. Rejected lines are carried through, not silently dropped.
LoadedCorpus load_corpus(const std::filesystem::path& posts_path,
                         const std::filesystem::path& accounts_path,
                         const std::filesystem::path& votes_path = {});

// Convenience for a directory containing the three canonical file names.
LoadedCorpus load_corpus_dir(const std::filesystem::path& dir);

// Writes posts.jsonl, accounts.jsonl and votes.jsonl under dir.
void write_corpus_dir(const Corpus& corpus, const std::filesystem::path& dir);

}  // namespace sockscope
