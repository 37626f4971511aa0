#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "botscan/records.hpp"
#include "botscan/result.hpp"

namespace botscan {

ParseResult<UserRecord> parse_user_line(std::string_view line);
ParseResult<TweetRecord> parse_tweet_line(std::string_view line);

struct RejectedRow {
    std::string file;
    uint64_t line_no = 0;  // 1-based
    ParseErrorCode code;
    std::string message;
};

// Row accounting. users_parsed + users_rejected == user_lines_read (likewise
// for tweets); duplicates are a subset of the parsed counts.
struct IngestReport {
    uint64_t user_lines_read = 0;
    uint64_t users_parsed = 0;
    uint64_t users_rejected = 0;
    uint64_t duplicate_users = 0;  // same user_id seen again; last row wins
    uint64_t tweet_lines_read = 0;
    uint64_t tweets_parsed = 0;
    uint64_t tweets_rejected = 0;
    uint64_t duplicate_tweets = 0;  // same tweet_id for the same user; first kept
    uint64_t orphan_tweets = 0;     // owner absent from users; excluded
    uint64_t skewed_tweets = 0;     // created before the owner; kept, offset clamps to 0
    std::vector<RejectedRow> rejected_details;  // capped at kMaxRejectedDetails
    static constexpr size_t kMaxRejectedDetails = 100;

    std::string to_json() const;
};

// Loads and joins NDJSON archives. Bad rows are counted and reported, never
// fatal; unreadable files throw std::runtime_error.
Corpus load_corpus(const std::vector<std::string>& user_paths,
                   const std::vector<std::string>& tweet_paths,
                   IngestReport& report);

}  // namespace botscan
