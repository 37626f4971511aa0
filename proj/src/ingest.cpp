#include "botscan/ingest.hpp"

#include <fstream>
#include <stdexcept>
#include <unordered_set>

#include "botscan/timeutil.hpp"
#include "json.hpp"

namespace botscan {

using nlohmann::json;

const char* parse_error_name(ParseErrorCode code) {
    switch (code) {
        case ParseErrorCode::MalformedJson: return "MALFORMED_JSON";
        case ParseErrorCode::MissingField: return "MISSING_FIELD";
        case ParseErrorCode::BadField: return "BAD_FIELD";
        case ParseErrorCode::BadTimestamp: return "BAD_TIMESTAMP";
        case ParseErrorCode::OutOfRangeId: return "OUT_OF_RANGE_ID";
        case ParseErrorCode::InvalidGeo: return "INVALID_GEO";
    }
    return "UNKNOWN";
}

namespace {

ParseError err(ParseErrorCode code, std::string msg) {
    return ParseError{code, std::move(msg)};
}

const json* find_key(const json& j, const char* key) {
    auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

// Signed integer fields (counts). Rejects floats and strings.
bool get_int(const json& j, const char* key, int64_t& out, ParseError& e) {
    const json* v = find_key(j, key);
    if (!v) {
        e = err(ParseErrorCode::MissingField, std::string(key) + " missing");
        return false;
    }
    if (!v->is_number_integer()) {
        e = err(ParseErrorCode::BadField, std::string(key) + " must be an integer");
        return false;
    }
    out = v->get<int64_t>();
    return true;
}

bool get_string(const json& j, const char* key, std::string& out, ParseError& e) {
    const json* v = find_key(j, key);
    if (!v) {
        e = err(ParseErrorCode::MissingField, std::string(key) + " missing");
        return false;
    }
    if (!v->is_string()) {
        e = err(ParseErrorCode::BadField, std::string(key) + " must be a string");
        return false;
    }
    out = v->get<std::string>();
    return true;
}

bool get_timestamp(const json& j, const char* key, int64_t& out, ParseError& e) {
    std::string raw;
    if (!get_string(j, key, raw, e)) return false;
    auto parsed = parse_rfc3339_utc(raw);
    if (!parsed) {
        e = err(ParseErrorCode::BadTimestamp,
                std::string(key) + " is not an RFC 3339 UTC timestamp: " + raw);
        return false;
    }
    out = *parsed;
    return true;
}

bool get_user_id(const json& j, const char* key, uint64_t& out, ParseError& e) {
    int64_t raw;
    if (!get_int(j, key, raw, e)) return false;
    if (raw < 0 || static_cast<uint64_t>(raw) >= kUserIdSpace) {
        e = err(ParseErrorCode::OutOfRangeId,
                std::string(key) + " outside [0, 2^32): " + std::to_string(raw));
        return false;
    }
    out = static_cast<uint64_t>(raw);
    return true;
}

bool get_string_list(const json& j, const char* key, std::vector<std::string>& out,
                     ParseError& e) {
    const json* v = find_key(j, key);
    if (!v) {
        e = err(ParseErrorCode::MissingField, std::string(key) + " missing");
        return false;
    }
    if (!v->is_array()) {
        e = err(ParseErrorCode::BadField, std::string(key) + " must be an array");
        return false;
    }
    out.clear();
    out.reserve(v->size());
    for (const auto& item : *v) {
        if (!item.is_string() || item.get_ref<const std::string&>().empty()) {
            e = err(ParseErrorCode::BadField,
                    std::string(key) + " entries must be non-empty strings");
            return false;
        }
        out.push_back(item.get<std::string>());
    }
    return true;
}

}  // namespace

ParseResult<UserRecord> parse_user_line(std::string_view line) {
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        return err(ParseErrorCode::MalformedJson, "row is not a JSON object");
    }
    UserRecord u;
    ParseError e{ParseErrorCode::MalformedJson, ""};
    if (!get_user_id(j, "user_id", u.user_id, e)) return e;
    if (!get_timestamp(j, "created_at", u.created_at, e)) return e;
    if (!get_string(j, "screen_name", u.screen_name, e)) return e;
    if (!get_int(j, "followers_count", u.followers_count, e)) return e;
    if (!get_int(j, "friends_count", u.friends_count, e)) return e;
    if (u.followers_count < 0 || u.friends_count < 0) {
        return err(ParseErrorCode::BadField, "follower/friend counts must be >= 0");
    }
    return u;
}

ParseResult<TweetRecord> parse_tweet_line(std::string_view line) {
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        return err(ParseErrorCode::MalformedJson, "row is not a JSON object");
    }
    TweetRecord t;
    ParseError e{ParseErrorCode::MalformedJson, ""};
    int64_t tweet_id;
    if (!get_int(j, "tweet_id", tweet_id, e)) return e;
    if (tweet_id < 0) return err(ParseErrorCode::BadField, "tweet_id must be >= 0");
    t.tweet_id = static_cast<uint64_t>(tweet_id);
    if (!get_user_id(j, "user_id", t.user_id, e)) return e;
    if (!get_timestamp(j, "created_at", t.created_at, e)) return e;
    if (!get_string(j, "text", t.text, e)) return e;
    if (!get_string(j, "source", t.source, e)) return e;

    // geo: null or absent means no tag; [lat, lon] otherwise.
    const json* geo = find_key(j, "geo");
    if (geo && !geo->is_null()) {
        if (!geo->is_array() || geo->size() != 2 || !(*geo)[0].is_number() ||
            !(*geo)[1].is_number()) {
            return err(ParseErrorCode::InvalidGeo, "geo must be null or [lat, lon]");
        }
        GeoPoint p{(*geo)[0].get<double>(), (*geo)[1].get<double>()};
        if (!valid_coordinates(p)) {
            return err(ParseErrorCode::InvalidGeo, "geo coordinates out of range");
        }
        t.geo = p;
    }

    if (!get_string_list(j, "urls", t.urls, e)) return e;
    if (!get_string_list(j, "mentions", t.mentions, e)) return e;
    if (!get_string_list(j, "hashtags", t.hashtags, e)) return e;

    const json* rt = find_key(j, "is_retweet");
    if (!rt) return err(ParseErrorCode::MissingField, "is_retweet missing");
    if (!rt->is_boolean()) return err(ParseErrorCode::BadField, "is_retweet must be a boolean");
    t.is_retweet = rt->get<bool>();
    return t;
}

namespace {

void record_rejection(IngestReport& report, const std::string& file, uint64_t line_no,
                      const ParseError& e) {
    if (report.rejected_details.size() < IngestReport::kMaxRejectedDetails) {
        report.rejected_details.push_back({file, line_no, e.code, e.message});
    }
}

template <typename PerLine>
void for_each_line(const std::string& path, PerLine&& fn) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    uint64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        fn(line, line_no);
    }
}

}  // namespace

Corpus load_corpus(const std::vector<std::string>& user_paths,
                   const std::vector<std::string>& tweet_paths,
                   IngestReport& report) {
    Corpus corpus;

    for (const auto& path : user_paths) {
        for_each_line(path, [&](const std::string& line, uint64_t line_no) {
            ++report.user_lines_read;
            auto res = parse_user_line(line);
            if (!res.ok()) {
                ++report.users_rejected;
                record_rejection(report, path, line_no, res.error());
                return;
            }
            ++report.users_parsed;
            UserRecord u = res.take();
            auto [it, inserted] = corpus.users.insert_or_assign(u.user_id, std::move(u));
            (void)it;
            if (!inserted) ++report.duplicate_users;
        });
    }

    std::unordered_map<uint64_t, std::unordered_set<uint64_t>> seen_tweet_ids;
    for (const auto& path : tweet_paths) {
        for_each_line(path, [&](const std::string& line, uint64_t line_no) {
            ++report.tweet_lines_read;
            auto res = parse_tweet_line(line);
            if (!res.ok()) {
                ++report.tweets_rejected;
                record_rejection(report, path, line_no, res.error());
                return;
            }
            ++report.tweets_parsed;
            TweetRecord t = res.take();
            auto owner = corpus.users.find(t.user_id);
            if (owner == corpus.users.end()) {
                ++report.orphan_tweets;
                return;
            }
            if (!seen_tweet_ids[t.user_id].insert(t.tweet_id).second) {
                ++report.duplicate_tweets;
                return;
            }
            if (t.created_at < owner->second.created_at) ++report.skewed_tweets;
            corpus.tweets_by_user[t.user_id].push_back(std::move(t));
        });
    }

    for (auto& [_, tweets] : corpus.tweets_by_user) {
        std::sort(tweets.begin(), tweets.end(), [](const TweetRecord& a, const TweetRecord& b) {
            return a.created_at != b.created_at ? a.created_at < b.created_at
                                                : a.tweet_id < b.tweet_id;
        });
    }
    corpus.orphan_tweet_count = report.orphan_tweets;
    return corpus;
}

std::string IngestReport::to_json() const {
    nlohmann::ordered_json j;
    j["user_lines_read"] = user_lines_read;
    j["users_parsed"] = users_parsed;
    j["users_rejected"] = users_rejected;
    j["duplicate_users"] = duplicate_users;
    j["tweet_lines_read"] = tweet_lines_read;
    j["tweets_parsed"] = tweets_parsed;
    j["tweets_rejected"] = tweets_rejected;
    j["duplicate_tweets"] = duplicate_tweets;
    j["orphan_tweets"] = orphan_tweets;
    j["skewed_tweets"] = skewed_tweets;
    auto& details = j["rejected_details"] = nlohmann::ordered_json::array();
    for (const auto& row : rejected_details) {
        details.push_back({{"file", row.file},
                           {"line", row.line_no},
                           {"code", parse_error_name(row.code)},
                           {"message", row.message}});
    }
    return j.dump();
}

}  // namespace botscan
