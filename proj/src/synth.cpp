#include "botscan/synth.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "botscan/reference_text.hpp"
#include "botscan/rng.hpp"
#include "botscan/timeutil.hpp"
#include "json.hpp"

namespace botscan {

using nlohmann::json;

const char* label_name(Label label) {
    switch (label) {
        case Label::Normal: return "NORMAL";
        case Label::BurstyBot: return "BURSTY_BOT";
        case Label::StarWarsBot: return "STARWARS_BOT";
        case Label::AccidentalBursty: return "ACCIDENTAL_BURSTY";
    }
    return "UNKNOWN";
}

std::optional<Label> parse_label(std::string_view name) {
    if (name == "NORMAL") return Label::Normal;
    if (name == "BURSTY_BOT") return Label::BurstyBot;
    if (name == "STARWARS_BOT") return Label::StarWarsBot;
    if (name == "ACCIDENTAL_BURSTY") return Label::AccidentalBursty;
    return std::nullopt;
}

namespace {

// Generated users may write at most this many tweets; tweet IDs are
// user_index * kTweetIdStride + j + 1.
constexpr uint64_t kTweetIdStride = 1024;

const char* const kNormalSources[] = {"Twitter Web Client", "Android", "iPhone",
                                      "Mobile Web", "TweetDeck"};
const char* const kAccidentalSources[] = {"Twitter Web Client", "Android", "iPhone",
                                          "TweetDeck"};
const char* const kHashtagPool[] = {"win", "gift", "news"};
const char* const kNormalDomains[] = {"news.example", "pics.example", "blog.example"};

void require(bool ok, const char* message) {
    if (!ok) throw std::invalid_argument(message);
}

void check_pool(const char* name, uint64_t low, uint64_t high, uint64_t n) {
    if (n == 0) return;
    require(low < high, "synth: id range must have low < high");
    if (high > kUserIdSpace) throw std::invalid_argument("synth: id range beyond 2^32");
    if ((high - low) / n == 0) {
        throw std::invalid_argument(std::string("synth: ") + name +
                                    " id range too narrow for user count");
    }
}

bool overlaps(uint64_t a_lo, uint64_t a_hi, uint64_t b_lo, uint64_t b_hi) {
    return a_lo < b_hi && b_lo < a_hi;
}

std::string json_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out.push_back(c);
                }
        }
    }
    return out;
}

std::string coord6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

double quantize6(double v) { return std::round(v * 1e6) / 1e6; }

std::string string_array(const std::vector<std::string>& items) {
    std::string out = "[";
    for (size_t i = 0; i < items.size(); ++i) {
        if (i > 0) out.push_back(',');
        out.push_back('"');
        out += json_escape(items[i]);
        out.push_back('"');
    }
    out.push_back(']');
    return out;
}

struct TweetDraft {
    uint64_t tweet_id = 0;
    int64_t created_at = 0;
    std::string text;
    std::string source;
    std::optional<GeoPoint> geo;
    std::vector<std::string> urls;
    std::vector<std::string> mentions;
    std::vector<std::string> hashtags;
    bool is_retweet = false;
};

class NdjsonWriter {
public:
    explicit NdjsonWriter(const std::filesystem::path& path)
        : out_(path, std::ios::binary | std::ios::trunc) {
        if (!out_) throw std::runtime_error("cannot write " + path.string());
    }
    void line(const std::string& s) { out_ << s << '\n'; }

private:
    std::ofstream out_;
};

std::string user_line(uint64_t user_id, int64_t created_at, const std::string& screen_name,
                      int64_t followers, int64_t friends) {
    std::string s = "{\"user_id\":" + std::to_string(user_id) + ",\"created_at\":\"" +
                    format_rfc3339_utc(created_at) + "\",\"screen_name\":\"" +
                    json_escape(screen_name) + "\",\"followers_count\":" +
                    std::to_string(followers) + ",\"friends_count\":" + std::to_string(friends) +
                    "}";
    return s;
}

std::string tweet_line(uint64_t user_id, const TweetDraft& t) {
    std::string s = "{\"tweet_id\":" + std::to_string(t.tweet_id) +
                    ",\"user_id\":" + std::to_string(user_id) + ",\"created_at\":\"" +
                    format_rfc3339_utc(t.created_at) + "\",\"text\":\"" + json_escape(t.text) +
                    "\",\"source\":\"" + json_escape(t.source) + "\",\"geo\":";
    if (t.geo) {
        s += "[" + coord6(t.geo->lat) + "," + coord6(t.geo->lon) + "]";
    } else {
        s += "null";
    }
    s += ",\"urls\":" + string_array(t.urls) + ",\"mentions\":" + string_array(t.mentions) +
         ",\"hashtags\":" + string_array(t.hashtags) +
         ",\"is_retweet\":" + (t.is_retweet ? "true" : "false") + "}";
    return s;
}

std::vector<std::string> reference_words(const SynthConfig& config) {
    std::string_view text =
        config.reference_text.empty() ? builtin_reference_text() : config.reference_text;
    const std::string normalized = normalize_quote_text(text);
    std::vector<std::string> words;
    size_t pos = 0;
    while (pos < normalized.size()) {
        size_t space = normalized.find(' ', pos);
        if (space == std::string::npos) space = normalized.size();
        if (space > pos) words.push_back(normalized.substr(pos, space - pos));
        pos = space + 1;
    }
    return words;
}

std::vector<int64_t> sorted_offsets(Rng& rng, uint64_t k, int64_t max_exclusive) {
    std::vector<int64_t> offsets(k);
    for (auto& o : offsets) o = static_cast<int64_t>(rng.next_below(max_exclusive));
    std::sort(offsets.begin(), offsets.end());
    return offsets;
}

}  // namespace

void SynthConfig::validate() const {
    auto rate_ok = [](double r) { return r >= 0.0 && r <= 1.0; };
    require(rate_ok(accidental_bursty_rate), "synth: accidental_bursty_rate must be in [0,1]");
    require(rate_ok(bursty_url_rate) && rate_ok(bursty_mention_rate) &&
                rate_ok(bursty_hashtag_rate),
            "synth: bursty content rates must be in [0,1]");
    require(rate_ok(bursty_no_friend_rate) && rate_ok(bursty_no_follower_rate),
            "synth: connectivity rates must be in [0,1]");
    require(rate_ok(geotag_rate), "synth: geotag_rate must be in [0,1]");
    require(mention_pool >= 1, "synth: mention_pool must be >= 1");

    check_pool("normal", normal_id_low, normal_id_high, n_normal);
    check_pool("bursty", bursty_id_low, bursty_id_high, n_bursty_bots);
    check_pool("starwars", starwars_id_low, starwars_id_high, n_starwars_bots);
    if (n_normal > 0 && n_bursty_bots > 0) {
        require(!overlaps(normal_id_low, normal_id_high, bursty_id_low, bursty_id_high),
                "synth: normal and bursty id pools overlap");
    }
    if (n_normal > 0 && n_starwars_bots > 0) {
        require(!overlaps(normal_id_low, normal_id_high, starwars_id_low, starwars_id_high),
                "synth: normal and starwars id pools overlap");
    }
    if (n_bursty_bots > 0 && n_starwars_bots > 0) {
        require(!overlaps(bursty_id_low, bursty_id_high, starwars_id_low, starwars_id_high),
                "synth: bursty and starwars id pools overlap");
    }

    if (n_bursty_bots > 0) {
        require(bursty_tweet_count_min >= 1, "synth: bursty_tweet_count_min must be >= 1");
        require(!bursty_tweet_count_weights.empty(),
                "synth: bursty_tweet_count_weights must be non-empty");
        double total = 0.0;
        for (double w : bursty_tweet_count_weights) {
            require(w >= 0.0, "synth: tweet count weights must be >= 0");
            total += w;
        }
        require(total > 0.0, "synth: tweet count weights must have positive mass");
        require(bursty_last_tweet_max_s >= 1 && bursty_last_tweet_max_s <= 3600,
                "synth: bursty_last_tweet_max_s must be in [1, 3600]");
        require(bursty_url_rate + bursty_mention_rate >= 1.0,
                "synth: bursty url_rate + mention_rate must be >= 1 so every tweet "
                "carries a URL or a mention");
        require(!spam_domains.empty(), "synth: spam_domains must be non-empty");
        require(!campaign_domains.empty(), "synth: campaign_domains must be non-empty");
        require(campaign_weights.size() == campaign_domains.size(),
                "synth: campaign_weights must match campaign_domains");
        require(static_cast<uint64_t>(bursty_tweet_count_min) +
                        bursty_tweet_count_weights.size() - 1 < kTweetIdStride,
                "synth: bursty tweet counts exceed per-user tweet budget");
    }
    if (n_starwars_bots > 0) {
        require(starwars_tweet_min >= 1 && starwars_tweet_min <= starwars_tweet_max,
                "synth: starwars tweet count bounds invalid");
        require(starwars_tweet_max < kTweetIdStride,
                "synth: starwars_tweet_max exceeds per-user tweet budget");
        require(starwars_max_followers >= 0 && starwars_max_friends >= 0,
                "synth: starwars caps must be >= 0");
        require(starwars_last_tweet_max_s >= 1 && starwars_last_tweet_max_s <= 3600,
                "synth: starwars_last_tweet_max_s must be in [1, 3600]");
        require(!rects.empty(), "synth: rects must be non-empty for starwars bots");
        for (const GeoRect& r : rects) r.validate();
        require(quote_ngram >= 2, "synth: quote_ngram must be >= 2");
    }
    if (n_normal > 0) {
        require(normal_tweet_max < kTweetIdStride,
                "synth: normal_tweet_max exceeds per-user tweet budget");
        require(normal_span_s > 86400, "synth: normal_span_s must exceed one day");
    }
}

SynthTallies generate(const SynthConfig& config, const std::string& out_dir) {
    config.validate();
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path dir(out_dir);

    const auto ref_words = reference_words(config);
    if (config.n_starwars_bots > 0 && ref_words.size() < 16) {
        throw std::invalid_argument("synth: reference text too short (need >= 16 words)");
    }

    NdjsonWriter users(dir / "users.ndjson");
    NdjsonWriter tweets(dir / "tweets.ndjson");
    NdjsonWriter labels(dir / "labels.ndjson");
    NdjsonWriter redirects(dir / "redirect_map.ndjson");

    SynthTallies tally;
    std::unordered_set<uint64_t> mention_targets_seen;

    const int64_t normal_created_lo = utc_timestamp(2011, 1, 1);
    const int64_t normal_created_hi = utc_timestamp(2015, 7, 1);
    const int64_t bursty_created_lo = utc_timestamp(2012, 2, 1);
    const int64_t bursty_created_hi = utc_timestamp(2012, 4, 1);
    const int64_t sw_created_lo = utc_timestamp(2013, 6, 1);
    const int64_t sw_created_hi = utc_timestamp(2013, 8, 1);

    auto slot_id = [](uint64_t low, uint64_t high, uint64_t n, uint64_t i, Rng& rng) {
        const uint64_t width = (high - low) / n;
        return low + i * width + rng.next_below(width);
    };

    auto emit = [&](uint64_t user_id, int64_t created_at, int64_t followers, int64_t friends,
                    Label label, const std::vector<TweetDraft>& drafts) {
        users.line(user_line(user_id, created_at, "u" + std::to_string(user_id), followers,
                             friends));
        for (const TweetDraft& t : drafts) tweets.line(tweet_line(user_id, t));
        labels.line("{\"user_id\":" + std::to_string(user_id) + ",\"label\":\"" +
                    label_name(label) + "\"}");
        tally.total_tweets += drafts.size();
    };

    const uint64_t n_total = config.n_normal + config.n_bursty_bots + config.n_starwars_bots;
    for (uint64_t index = 0; index < n_total; ++index) {
        Rng rng = Rng::child(config.seed, index);

        if (index < config.n_normal) {
            // Organic user, possibly an accidental-bursty one.
            const uint64_t user_id =
                slot_id(config.normal_id_low, config.normal_id_high, config.n_normal, index, rng);
            const int64_t created =
                static_cast<int64_t>(rng.next_range(normal_created_lo, normal_created_hi));
            const bool accidental = rng.next_bool(config.accidental_bursty_rate);

            std::vector<TweetDraft> drafts;
            if (accidental) {
                ++tally.n_accidental;
                const uint64_t k = 3 + rng.next_below(4);  // 3..6, all inside the first hour
                const auto offsets = sorted_offsets(rng, k, 3500);
                for (uint64_t j = 0; j < k; ++j) {
                    TweetDraft t;
                    t.tweet_id = index * kTweetIdStride + j + 1;
                    t.created_at = created + offsets[j];
                    t.source = kAccidentalSources[rng.next_below(std::size(kAccidentalSources))];
                    if (rng.next_bool(0.3)) {
                        t.mentions.push_back("user" + std::to_string(rng.next_below(
                                                          config.mention_pool)));
                    }
                    t.text = t.mentions.empty() ? "hello twitter"
                                                : "@" + t.mentions[0] + " hello";
                    drafts.push_back(std::move(t));
                }
                emit(user_id, created, rng.next_below(201), rng.next_below(201),
                     Label::AccidentalBursty, drafts);
                continue;
            }

            ++tally.n_normal;
            const uint64_t k = rng.next_below(config.normal_tweet_max + 1);
            auto offsets = sorted_offsets(rng, k, config.normal_span_s);
            if (k >= 3 && offsets.back() < 3600) {
                offsets.back() += 86400;  // keep organic users out of the bursty window
            }
            for (uint64_t j = 0; j < k; ++j) {
                TweetDraft t;
                t.tweet_id = index * kTweetIdStride + j + 1;
                t.created_at = created + offsets[j];
                t.source = kNormalSources[rng.next_below(std::size(kNormalSources))];
                t.is_retweet = rng.next_bool(0.1);
                if (rng.next_bool(0.2)) {
                    t.urls.push_back("http://" +
                                     std::string(kNormalDomains[rng.next_below(
                                         std::size(kNormalDomains))]) +
                                     "/story/" + std::to_string(rng.next_below(50'000)));
                }
                if (rng.next_bool(0.3)) {
                    t.mentions.push_back("user" +
                                         std::to_string(rng.next_below(config.mention_pool)));
                }
                if (rng.next_bool(0.15)) {
                    t.hashtags.push_back(kHashtagPool[rng.next_below(std::size(kHashtagPool))]);
                }
                if (rng.next_bool(0.05)) {
                    t.geo = GeoPoint{quantize6(-55.0 + rng.next_double() * 125.0),
                                     quantize6(-170.0 + rng.next_double() * 340.0)};
                }
                std::string text = "just another day";
                if (!t.mentions.empty()) text = "@" + t.mentions[0] + " " + text;
                if (!t.urls.empty()) text += " " + t.urls[0];
                if (!t.hashtags.empty()) text += " #" + t.hashtags[0];
                t.text = std::move(text);
                drafts.push_back(std::move(t));
            }
            emit(user_id, created, rng.next_below(501), rng.next_below(501), Label::Normal,
                 drafts);
            continue;
        }

        if (index < config.n_normal + config.n_bursty_bots) {
            // Bursty bot: burst of URL/mention spam right after creation.
            const uint64_t i = index - config.n_normal;
            const uint64_t user_id = slot_id(config.bursty_id_low, config.bursty_id_high,
                                             config.n_bursty_bots, i, rng);
            const int64_t created =
                static_cast<int64_t>(rng.next_range(bursty_created_lo, bursty_created_hi));
            const int64_t followers =
                rng.next_bool(config.bursty_no_follower_rate) ? 0 : 1 + rng.next_below(3);
            const int64_t friends =
                rng.next_bool(config.bursty_no_friend_rate) ? 0 : 1 + rng.next_below(3);
            ++tally.n_bursty;
            if (followers == 0) ++tally.bursty_no_follower;
            if (friends == 0) ++tally.bursty_no_friend;

            const uint64_t k = config.bursty_tweet_count_min +
                               rng.next_weighted(config.bursty_tweet_count_weights);
            const auto offsets = sorted_offsets(rng, k, config.bursty_last_tweet_max_s);

            const double p_both = config.bursty_url_rate + config.bursty_mention_rate - 1.0;
            const double p_url_only = 1.0 - config.bursty_mention_rate;
            std::vector<double> domain_weights;
            domain_weights.reserve(config.spam_domains.size());
            for (const auto& [_, w] : config.spam_domains) domain_weights.push_back(w);

            bool any_url = false, any_mention = false, any_hashtag = false;
            std::vector<TweetDraft> drafts;
            for (uint64_t j = 0; j < k; ++j) {
                TweetDraft t;
                t.tweet_id = index * kTweetIdStride + j + 1;
                t.created_at = created + offsets[j];
                t.source = "Mobile Web";

                const double r = rng.next_double();
                const bool with_url = r < p_both + p_url_only;
                const bool with_mention = r < p_both || r >= p_both + p_url_only;
                if (with_url) {
                    const auto& domain =
                        config.spam_domains[rng.next_weighted(domain_weights)].first;
                    const std::string token =
                        "u" + std::to_string(index) + "x" + std::to_string(j);
                    const std::string url = "http://" + domain + "/" + token;
                    t.urls.push_back(url);
                    ++tally.domain_draws[domain];
                    ++tally.spam_urls;
                    const auto& campaign =
                        config.campaign_domains[rng.next_weighted(config.campaign_weights)];
                    ++tally.campaign_draws[campaign];
                    redirects.line("{\"short\":\"" + json_escape(url) + "\",\"final\":\"http://" +
                                   json_escape(campaign) + "/p/" + token + "\"}");
                    any_url = true;
                    ++tally.bursty_tweets_with_url;
                }
                if (with_mention) {
                    const uint64_t target = rng.next_below(config.mention_pool);
                    t.mentions.push_back("user" + std::to_string(target));
                    mention_targets_seen.insert(target);
                    any_mention = true;
                    ++tally.bursty_tweets_with_mention;
                }
                if (rng.next_bool(config.bursty_hashtag_rate)) {
                    t.hashtags.push_back(kHashtagPool[rng.next_below(std::size(kHashtagPool))]);
                    any_hashtag = true;
                    ++tally.bursty_tweets_with_hashtag;
                }
                std::string text;
                if (!t.mentions.empty()) text = "@" + t.mentions[0];
                if (!t.urls.empty()) text += (text.empty() ? "" : " ") + t.urls[0];
                if (!t.hashtags.empty()) text += " #" + t.hashtags[0];
                t.text = std::move(text);
                ++tally.bursty_tweets;
                drafts.push_back(std::move(t));
            }
            if (any_url) ++tally.bursty_bots_with_url;
            if (any_mention) ++tally.bursty_bots_with_mention;
            if (any_hashtag) ++tally.bursty_bots_with_hashtag;
            emit(user_id, created, followers, friends, Label::BurstyBot, drafts);
            continue;
        }

        // Star Wars bot: quotation tweets with fake in-zone geotags.
        const uint64_t i = index - config.n_normal - config.n_bursty_bots;
        const uint64_t user_id = slot_id(config.starwars_id_low, config.starwars_id_high,
                                         config.n_starwars_bots, i, rng);
        const int64_t created =
            static_cast<int64_t>(rng.next_range(sw_created_lo, sw_created_hi));
        const int64_t followers = rng.next_below(config.starwars_max_followers + 1);
        const int64_t friends = rng.next_below(config.starwars_max_friends + 1);
        ++tally.n_starwars;

        const uint64_t k =
            rng.next_range(config.starwars_tweet_min, config.starwars_tweet_max + 1);
        const auto offsets = sorted_offsets(rng, k, config.starwars_last_tweet_max_s);
        std::vector<TweetDraft> drafts;
        for (uint64_t j = 0; j < k; ++j) {
            TweetDraft t;
            t.tweet_id = index * kTweetIdStride + j + 1;
            t.created_at = created + offsets[j];
            t.source = "Windows Phone";

            const uint64_t len = 5 + rng.next_below(8);  // 5..12 words, >= any n-gram
            const uint64_t start = rng.next_below(ref_words.size() - len + 1);
            std::vector<std::string> words(ref_words.begin() + start,
                                           ref_words.begin() + start + len);
            const uint64_t marks = rng.next_below(3);
            uint64_t last_pos = len;
            for (uint64_t m = 0; m < marks; ++m) {
                const uint64_t pos = rng.next_below(len);
                if (pos == last_pos) continue;
                t.hashtags.push_back(words[pos]);
                words[pos] = "#" + words[pos];
                last_pos = pos;
            }
            std::string text;
            for (size_t w = 0; w < words.size(); ++w) {
                if (w > 0) text.push_back(' ');
                text += words[w];
            }
            t.text = std::move(text);

            if (rng.next_bool(config.geotag_rate)) {
                const GeoRect& rect = config.rects[rng.next_below(config.rects.size())];
                t.geo = GeoPoint{
                    quantize6(rect.lat_min + rng.next_double() * (rect.lat_max - rect.lat_min)),
                    quantize6(rect.lon_min + rng.next_double() * (rect.lon_max - rect.lon_min))};
            }
            drafts.push_back(std::move(t));
        }
        emit(user_id, created, followers, friends, Label::StarWarsBot, drafts);
    }

    tally.distinct_mention_targets = mention_targets_seen.size();
    return tally;
}

GroundTruthLabels load_labels(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    GroundTruthLabels out;
    std::string line;
    uint64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto j = json::parse(line, nullptr, false);
        const auto fail = [&](const char* why) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + why);
        };
        if (!j.is_object() || !j.contains("user_id") || !j.contains("label")) {
            fail("expected {\"user_id\": N, \"label\": \"...\"}");
        }
        if (!j["user_id"].is_number_integer() || j["user_id"].get<int64_t>() < 0) {
            fail("user_id must be a non-negative integer");
        }
        if (!j["label"].is_string()) fail("label must be a string");
        auto label = parse_label(j["label"].get_ref<const std::string&>());
        if (!label) fail("unknown label");
        out[j["user_id"].get<uint64_t>()] = *label;
    }
    return out;
}

std::map<std::string, LabelMetrics> evaluate(const GroundTruthLabels& truth,
                                             const GroundTruthLabels& predictions) {
    if (truth.size() != predictions.size()) {
        throw std::invalid_argument("evaluate: label and prediction universes differ in size");
    }
    std::set<Label> observed;
    for (const auto& [id, label] : truth) {
        if (!predictions.count(id)) {
            throw std::invalid_argument("evaluate: user " + std::to_string(id) +
                                        " missing from predictions");
        }
        observed.insert(label);
    }
    for (const auto& [_, label] : predictions) observed.insert(label);

    std::map<std::string, LabelMetrics> out;
    for (Label label : observed) {
        LabelMetrics m;
        for (const auto& [id, actual] : truth) {
            const Label predicted = predictions.at(id);
            if (actual == label && predicted == label) ++m.tp;
            else if (actual != label && predicted == label) ++m.fp;
            else if (actual == label && predicted != label) ++m.fn;
            else ++m.tn;
        }
        if (m.tp + m.fp > 0) {
            m.precision = static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fp);
        }
        if (m.tp + m.fn > 0) {
            m.recall = static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fn);
        }
        if (m.precision && m.recall && (*m.precision + *m.recall) > 0.0) {
            m.f1 = 2.0 * *m.precision * *m.recall / (*m.precision + *m.recall);
        }
        out[label_name(label)] = m;
    }
    return out;
}

namespace {

nlohmann::ordered_json rect_to_json(const GeoRect& r) {
    return nlohmann::ordered_json{{"lat_min", r.lat_min},
                                  {"lat_max", r.lat_max},
                                  {"lon_min", r.lon_min},
                                  {"lon_max", r.lon_max}};
}

GeoRect rect_from_json(const json& j) {
    return GeoRect{j.at("lat_min").get<double>(), j.at("lat_max").get<double>(),
                   j.at("lon_min").get<double>(), j.at("lon_max").get<double>()};
}

template <typename T>
void maybe(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

SynthConfig synth_config_from_json(const std::string& json_text) {
    json j = json::parse(json_text);
    SynthConfig c;
    maybe(j, "seed", c.seed);
    maybe(j, "n_normal", c.n_normal);
    maybe(j, "n_bursty_bots", c.n_bursty_bots);
    maybe(j, "n_starwars_bots", c.n_starwars_bots);
    maybe(j, "accidental_bursty_rate", c.accidental_bursty_rate);
    maybe(j, "normal_id_low", c.normal_id_low);
    maybe(j, "normal_id_high", c.normal_id_high);
    maybe(j, "bursty_id_low", c.bursty_id_low);
    maybe(j, "bursty_id_high", c.bursty_id_high);
    maybe(j, "starwars_id_low", c.starwars_id_low);
    maybe(j, "starwars_id_high", c.starwars_id_high);
    maybe(j, "bursty_tweet_count_min", c.bursty_tweet_count_min);
    maybe(j, "bursty_tweet_count_weights", c.bursty_tweet_count_weights);
    maybe(j, "bursty_last_tweet_max_s", c.bursty_last_tweet_max_s);
    maybe(j, "bursty_url_rate", c.bursty_url_rate);
    maybe(j, "bursty_mention_rate", c.bursty_mention_rate);
    maybe(j, "bursty_hashtag_rate", c.bursty_hashtag_rate);
    maybe(j, "bursty_no_friend_rate", c.bursty_no_friend_rate);
    maybe(j, "bursty_no_follower_rate", c.bursty_no_follower_rate);
    if (j.contains("spam_domains")) {
        c.spam_domains.clear();
        for (const auto& row : j.at("spam_domains")) {
            c.spam_domains.emplace_back(row.at(0).get<std::string>(), row.at(1).get<double>());
        }
    }
    maybe(j, "campaign_domains", c.campaign_domains);
    maybe(j, "campaign_weights", c.campaign_weights);
    maybe(j, "mention_pool", c.mention_pool);
    maybe(j, "starwars_tweet_min", c.starwars_tweet_min);
    maybe(j, "starwars_tweet_max", c.starwars_tweet_max);
    maybe(j, "starwars_max_followers", c.starwars_max_followers);
    maybe(j, "starwars_max_friends", c.starwars_max_friends);
    maybe(j, "starwars_last_tweet_max_s", c.starwars_last_tweet_max_s);
    maybe(j, "geotag_rate", c.geotag_rate);
    if (j.contains("rects")) {
        c.rects.clear();
        for (const auto& row : j.at("rects")) c.rects.push_back(rect_from_json(row));
    }
    maybe(j, "reference_text", c.reference_text);
    maybe(j, "quote_ngram", c.quote_ngram);
    maybe(j, "normal_tweet_max", c.normal_tweet_max);
    maybe(j, "normal_span_s", c.normal_span_s);
    return c;
}

std::string synth_config_to_json(const SynthConfig& c) {
    nlohmann::ordered_json j;
    j["seed"] = c.seed;
    j["n_normal"] = c.n_normal;
    j["n_bursty_bots"] = c.n_bursty_bots;
    j["n_starwars_bots"] = c.n_starwars_bots;
    j["accidental_bursty_rate"] = c.accidental_bursty_rate;
    j["normal_id_low"] = c.normal_id_low;
    j["normal_id_high"] = c.normal_id_high;
    j["bursty_id_low"] = c.bursty_id_low;
    j["bursty_id_high"] = c.bursty_id_high;
    j["starwars_id_low"] = c.starwars_id_low;
    j["starwars_id_high"] = c.starwars_id_high;
    j["bursty_tweet_count_min"] = c.bursty_tweet_count_min;
    j["bursty_tweet_count_weights"] = c.bursty_tweet_count_weights;
    j["bursty_last_tweet_max_s"] = c.bursty_last_tweet_max_s;
    j["bursty_url_rate"] = c.bursty_url_rate;
    j["bursty_mention_rate"] = c.bursty_mention_rate;
    j["bursty_hashtag_rate"] = c.bursty_hashtag_rate;
    j["bursty_no_friend_rate"] = c.bursty_no_friend_rate;
    j["bursty_no_follower_rate"] = c.bursty_no_follower_rate;
    auto& domains = j["spam_domains"] = nlohmann::ordered_json::array();
    for (const auto& [domain, weight] : c.spam_domains) {
        domains.push_back({domain, weight});
    }
    j["campaign_domains"] = c.campaign_domains;
    j["campaign_weights"] = c.campaign_weights;
    j["mention_pool"] = c.mention_pool;
    j["starwars_tweet_min"] = c.starwars_tweet_min;
    j["starwars_tweet_max"] = c.starwars_tweet_max;
    j["starwars_max_followers"] = c.starwars_max_followers;
    j["starwars_max_friends"] = c.starwars_max_friends;
    j["starwars_last_tweet_max_s"] = c.starwars_last_tweet_max_s;
    j["geotag_rate"] = c.geotag_rate;
    auto& rects = j["rects"] = nlohmann::ordered_json::array();
    for (const GeoRect& r : c.rects) rects.push_back(rect_to_json(r));
    j["reference_text"] = c.reference_text;
    j["quote_ngram"] = c.quote_ngram;
    j["normal_tweet_max"] = c.normal_tweet_max;
    j["normal_span_s"] = c.normal_span_s;
    return j.dump(2);
}

std::string SynthTallies::to_json() const {
    nlohmann::ordered_json j;
    j["n_normal"] = n_normal;
    j["n_accidental"] = n_accidental;
    j["n_bursty"] = n_bursty;
    j["n_starwars"] = n_starwars;
    j["total_tweets"] = total_tweets;
    j["bursty_tweets"] = bursty_tweets;
    j["bursty_tweets_with_url"] = bursty_tweets_with_url;
    j["bursty_tweets_with_mention"] = bursty_tweets_with_mention;
    j["bursty_tweets_with_hashtag"] = bursty_tweets_with_hashtag;
    j["bursty_bots_with_url"] = bursty_bots_with_url;
    j["bursty_bots_with_mention"] = bursty_bots_with_mention;
    j["bursty_bots_with_hashtag"] = bursty_bots_with_hashtag;
    j["bursty_no_friend"] = bursty_no_friend;
    j["bursty_no_follower"] = bursty_no_follower;
    j["spam_urls"] = spam_urls;
    j["domain_draws"] = domain_draws;
    j["campaign_draws"] = campaign_draws;
    j["distinct_mention_targets"] = distinct_mention_targets;
    return j.dump();
}

std::string metrics_to_json(const std::map<std::string, LabelMetrics>& metrics) {
    nlohmann::ordered_json j;
    for (const auto& [label, m] : metrics) {
        nlohmann::ordered_json row;
        row["tp"] = m.tp;
        row["fp"] = m.fp;
        row["fn"] = m.fn;
        row["tn"] = m.tn;
        row["precision"] = m.precision ? json(*m.precision) : json(nullptr);
        row["recall"] = m.recall ? json(*m.recall) : json(nullptr);
        row["f1"] = m.f1 ? json(*m.f1) : json(nullptr);
        j[label] = row;
    }
    return j.dump();
}

}  // namespace botscan
