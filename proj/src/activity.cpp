#include "botscan/activity.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "json.hpp"

namespace botscan {

namespace {

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

double pct(uint64_t num, uint64_t den) {
    return den == 0 ? 0.0 : 100.0 * static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

void BurstyUserCriteria::validate() const {
    if (min_tweets < 1) throw std::invalid_argument("min_tweets must be >= 1");
    if (window_s <= 0) throw std::invalid_argument("window_s must be > 0");
}

void BurstyBotDefinition::validate() const {
    if (id_low >= id_high) throw std::invalid_argument("id_low must be < id_high");
    if (content_fraction_min < 0.0 || content_fraction_min > 1.0) {
        throw std::invalid_argument("content_fraction_min must be in [0, 1]");
    }
}

UserActivitySummary summarize(const UserRecord& user, std::span<const TweetRecord> tweets) {
    UserActivitySummary s;
    s.user_id = user.user_id;
    s.creation_time = user.created_at;
    for (const TweetRecord& t : tweets) {
        const int64_t offset = std::max<int64_t>(0, t.created_at - user.created_at);
        ++s.tweet_count;
        if (!s.first_offset_s || offset < *s.first_offset_s) s.first_offset_s = offset;
        if (!s.last_offset_s || offset > *s.last_offset_s) s.last_offset_s = offset;
        const bool has_url = !t.urls.empty();
        const bool has_mention = !t.mentions.empty();
        if (has_url) ++s.n_with_url;
        if (has_mention) ++s.n_with_mention;
        if (has_url || has_mention) ++s.n_with_url_or_mention;
        if (!t.hashtags.empty()) ++s.n_with_hashtag;
        if (t.geo) ++s.n_geotagged;
        if (t.is_retweet) ++s.n_retweets;
        s.sources.insert(t.source);
        for (const auto& m : t.mentions) s.distinct_mention_targets.insert(to_lower(m));
    }
    return s;
}

UserActivitySummary merge_summaries(const UserActivitySummary& a, const UserActivitySummary& b) {
    if (a.user_id != b.user_id || a.creation_time != b.creation_time) {
        throw std::invalid_argument("merge_summaries: summaries belong to different users");
    }
    UserActivitySummary m = a;
    m.tweet_count += b.tweet_count;
    if (b.first_offset_s && (!m.first_offset_s || *b.first_offset_s < *m.first_offset_s)) {
        m.first_offset_s = b.first_offset_s;
    }
    if (b.last_offset_s && (!m.last_offset_s || *b.last_offset_s > *m.last_offset_s)) {
        m.last_offset_s = b.last_offset_s;
    }
    m.n_with_url += b.n_with_url;
    m.n_with_mention += b.n_with_mention;
    m.n_with_url_or_mention += b.n_with_url_or_mention;
    m.n_with_hashtag += b.n_with_hashtag;
    m.n_geotagged += b.n_geotagged;
    m.n_retweets += b.n_retweets;
    m.sources.insert(b.sources.begin(), b.sources.end());
    m.distinct_mention_targets.insert(b.distinct_mention_targets.begin(),
                                      b.distinct_mention_targets.end());
    return m;
}

bool is_bursty_user(const UserActivitySummary& s, const BurstyUserCriteria& c) {
    if (s.tweet_count < static_cast<uint64_t>(c.min_tweets)) return false;
    return s.last_offset_s && *s.last_offset_s < c.window_s;
}

BotDecision classify_bursty_bot(const UserRecord& u, const UserActivitySummary& s,
                                const BurstyBotDefinition& d, const BurstyUserCriteria& c) {
    BotDecision decision;
    if (u.user_id < d.id_low || u.user_id >= d.id_high) {
        decision.reason_codes.push_back(reason::kIdRange);
    }
    if (!is_bursty_user(s, c)) {
        decision.reason_codes.push_back(reason::kBursty);
    }
    if (s.sources.size() != 1 || *s.sources.begin() != d.required_source) {
        decision.reason_codes.push_back(reason::kSource);
    }
    const double fraction =
        s.tweet_count == 0 ? 0.0
                           : static_cast<double>(s.n_with_url_or_mention) /
                                 static_cast<double>(s.tweet_count);
    if (fraction < d.content_fraction_min) {
        decision.reason_codes.push_back(reason::kContent);
    }
    decision.is_bot = decision.reason_codes.empty();
    return decision;
}

std::map<uint64_t, uint64_t> lifetime_histogram(std::span<const UserActivitySummary> summaries,
                                                uint64_t bucket_minutes) {
    if (bucket_minutes < 1) throw std::invalid_argument("bucket_minutes must be >= 1");
    std::map<uint64_t, uint64_t> hist;
    for (const auto& s : summaries) {
        if (!s.last_offset_s) continue;
        const uint64_t minutes = static_cast<uint64_t>(*s.last_offset_s) / 60;
        ++hist[minutes / bucket_minutes];
    }
    return hist;
}

BotnetStatsReport botnet_stats(
    std::span<const std::pair<UserRecord, UserActivitySummary>> bots) {
    BotnetStatsReport r;
    r.bot_count = bots.size();
    uint64_t no_friend = 0, no_follower = 0;
    uint64_t bots_url = 0, bots_mention = 0, bots_hashtag = 0;
    uint64_t tweets_url = 0, tweets_mention = 0, tweets_hashtag = 0;
    for (const auto& [user, s] : bots) {
        if (user.friends_count == 0) ++no_friend;
        if (user.followers_count == 0) ++no_follower;
        if (s.n_with_url > 0) ++bots_url;
        if (s.n_with_mention > 0) ++bots_mention;
        if (s.n_with_hashtag > 0) ++bots_hashtag;
        r.total_tweets += s.tweet_count;
        tweets_url += s.n_with_url;
        tweets_mention += s.n_with_mention;
        tweets_hashtag += s.n_with_hashtag;
    }
    r.pct_no_friend = pct(no_friend, r.bot_count);
    r.pct_no_follower = pct(no_follower, r.bot_count);
    r.pct_bots_with_url_tweets = pct(bots_url, r.bot_count);
    r.pct_bots_with_mention_tweets = pct(bots_mention, r.bot_count);
    r.pct_bots_with_hashtag_tweets = pct(bots_hashtag, r.bot_count);
    r.avg_tweets_per_bot =
        r.bot_count == 0 ? 0.0
                         : static_cast<double>(r.total_tweets) / static_cast<double>(r.bot_count);
    r.pct_tweets_with_url = pct(tweets_url, r.total_tweets);
    r.pct_tweets_with_mention = pct(tweets_mention, r.total_tweets);
    r.pct_tweets_with_hashtag = pct(tweets_hashtag, r.total_tweets);
    return r;
}

std::vector<UserActivitySummary> summarize_corpus(const Corpus& corpus) {
    std::vector<UserActivitySummary> out;
    out.reserve(corpus.users.size());
    for (uint64_t id : corpus.sorted_user_ids()) {
        out.push_back(summarize(corpus.users.at(id), corpus.tweets_for(id)));
    }
    return out;
}

std::string BotnetStatsReport::to_json() const {
    nlohmann::ordered_json j;
    j["bot_count"] = bot_count;
    j["pct_no_friend"] = pct_no_friend;
    j["pct_no_follower"] = pct_no_follower;
    j["pct_bots_with_url_tweets"] = pct_bots_with_url_tweets;
    j["pct_bots_with_mention_tweets"] = pct_bots_with_mention_tweets;
    j["pct_bots_with_hashtag_tweets"] = pct_bots_with_hashtag_tweets;
    j["avg_tweets_per_bot"] = avg_tweets_per_bot;
    j["total_tweets"] = total_tweets;
    j["pct_tweets_with_url"] = pct_tweets_with_url;
    j["pct_tweets_with_mention"] = pct_tweets_with_mention;
    j["pct_tweets_with_hashtag"] = pct_tweets_with_hashtag;
    return j.dump();
}

}  // namespace botscan
