#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace botscan {

// Twitter assigns user IDs below 2^32; anything outside is rejected at ingest.
inline constexpr uint64_t kUserIdSpace = uint64_t{1} << 32;

struct GeoPoint {
    double lat = 0.0;
    double lon = 0.0;
};

inline bool valid_coordinates(const GeoPoint& p) {
    return p.lat >= -90.0 && p.lat <= 90.0 && p.lon >= -180.0 && p.lon <= 180.0;
}

struct UserRecord {
    uint64_t user_id = 0;  // unique within a corpus, < kUserIdSpace
    int64_t created_at = 0;  // UTC epoch seconds
    std::string screen_name;
    int64_t followers_count = 0;
    int64_t friends_count = 0;
};

struct TweetRecord {
    uint64_t tweet_id = 0;
    uint64_t user_id = 0;
    int64_t created_at = 0;  // UTC epoch seconds
    std::string text;
    std::string source;  // client name, e.g. "Mobile Web"
    std::optional<GeoPoint> geo;
    std::vector<std::string> urls;
    std::vector<std::string> mentions;
    std::vector<std::string> hashtags;
    bool is_retweet = false;
};

// Users joined with their tweets. Per-user tweet lists are sorted ascending by
// (created_at, tweet_id); tweets whose owner is missing are dropped and counted.
struct Corpus {
    std::unordered_map<uint64_t, UserRecord> users;
    std::unordered_map<uint64_t, std::vector<TweetRecord>> tweets_by_user;
    uint64_t orphan_tweet_count = 0;

    const std::vector<TweetRecord>& tweets_for(uint64_t user_id) const {
        static const std::vector<TweetRecord> empty;
        auto it = tweets_by_user.find(user_id);
        return it == tweets_by_user.end() ? empty : it->second;
    }

    std::vector<uint64_t> sorted_user_ids() const {
        std::vector<uint64_t> ids;
        ids.reserve(users.size());
        for (const auto& [id, _] : users) ids.push_back(id);
        std::sort(ids.begin(), ids.end());
        return ids;
    }
};

}  // namespace botscan
