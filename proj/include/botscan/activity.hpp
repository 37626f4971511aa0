#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "botscan/records.hpp"

namespace botscan {

// Mergeable per-user aggregate. Summaries over disjoint tweet subsets form a
// commutative monoid under merge_summaries: counts add, offsets take min/max,
// sets union. n_with_url_or_mention is tracked separately because the union
// count cannot be recovered from the two marginals.
struct UserActivitySummary {
    uint64_t user_id = 0;
    int64_t creation_time = 0;
    uint64_t tweet_count = 0;
    std::optional<int64_t> first_offset_s;  // absent when tweet_count == 0
    std::optional<int64_t> last_offset_s;
    uint64_t n_with_url = 0;
    uint64_t n_with_mention = 0;
    uint64_t n_with_url_or_mention = 0;
    uint64_t n_with_hashtag = 0;
    uint64_t n_geotagged = 0;
    uint64_t n_retweets = 0;
    std::set<std::string> sources;
    std::set<std::string> distinct_mention_targets;  // lowercased

    bool operator==(const UserActivitySummary&) const = default;
};

struct BurstyUserCriteria {
    int64_t min_tweets = 3;
    int64_t window_s = 3600;  // half-open [0, window_s)

    void validate() const;  // throws std::invalid_argument
};

// The Bursty-bot rule set: ID block, bursty tweeting, single client source,
// and URL-or-mention content on most tweets.
struct BurstyBotDefinition {
    uint64_t id_low = 500'000'000;
    uint64_t id_high = 535'000'000;  // half-open
    std::string required_source = "Mobile Web";
    double content_fraction_min = 0.8;

    void validate() const;
};

struct BotDecision {
    bool is_bot = false;
    std::vector<std::string> reason_codes;  // failed criteria, empty when is_bot
};

struct BotnetStatsReport {
    uint64_t bot_count = 0;
    double pct_no_friend = 0.0;
    double pct_no_follower = 0.0;
    double pct_bots_with_url_tweets = 0.0;
    double pct_bots_with_mention_tweets = 0.0;
    double pct_bots_with_hashtag_tweets = 0.0;
    double avg_tweets_per_bot = 0.0;
    uint64_t total_tweets = 0;
    double pct_tweets_with_url = 0.0;
    double pct_tweets_with_mention = 0.0;
    double pct_tweets_with_hashtag = 0.0;

    std::string to_json() const;
};

// pre: tweets sorted by (created_at, tweet_id), all owned by user.
// Offsets clamp at 0 for tweets timestamped before the account creation.
UserActivitySummary summarize(const UserRecord& user, std::span<const TweetRecord> tweets);

// pre: same user_id and creation_time (throws std::invalid_argument otherwise).
UserActivitySummary merge_summaries(const UserActivitySummary& a, const UserActivitySummary& b);

bool is_bursty_user(const UserActivitySummary& s, const BurstyUserCriteria& c);

BotDecision classify_bursty_bot(const UserRecord& u, const UserActivitySummary& s,
                                const BurstyBotDefinition& d, const BurstyUserCriteria& c);

// bucket = floor(last_offset_s / 60 / bucket_minutes); zero-tweet users excluded.
std::map<uint64_t, uint64_t> lifetime_histogram(std::span<const UserActivitySummary> summaries,
                                                uint64_t bucket_minutes);

BotnetStatsReport botnet_stats(
    std::span<const std::pair<UserRecord, UserActivitySummary>> bots);

// Summaries for every user in the corpus, ordered by user_id.
std::vector<UserActivitySummary> summarize_corpus(const Corpus& corpus);

// Failed-criterion codes shared by the classifiers.
namespace reason {
inline constexpr const char* kIdRange = "ID_RANGE";
inline constexpr const char* kBursty = "BURSTY";
inline constexpr const char* kSource = "SOURCE";
inline constexpr const char* kContent = "CONTENT";
inline constexpr const char* kMaxTweets = "MAX_TWEETS";
inline constexpr const char* kMaxFollowers = "MAX_FOLLOWERS";
inline constexpr const char* kMaxFriends = "MAX_FRIENDS";
inline constexpr const char* kRetweets = "RETWEETS";
inline constexpr const char* kMentions = "MENTIONS";
inline constexpr const char* kGeoZone = "GEO_ZONE";
inline constexpr const char* kQuotation = "QUOTATION";
}  // namespace reason

}  // namespace botscan
