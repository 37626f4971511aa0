#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "botscan/geozone.hpp"

namespace botscan {

enum class Label { Normal, BurstyBot, StarWarsBot, AccidentalBursty };

const char* label_name(Label label);
std::optional<Label> parse_label(std::string_view name);

using GroundTruthLabels = std::map<uint64_t, Label>;

// Everything the generator draws from. Identical config (including seed)
// yields byte-identical output files; see Rng for the stream construction.
struct SynthConfig {
    uint64_t seed = 1;
    uint64_t n_normal = 50'000;
    uint64_t n_bursty_bots = 5'000;
    uint64_t n_starwars_bots = 0;
    double accidental_bursty_rate = 0.001;

    // ID pools, half-open and pairwise disjoint. Users are placed in
    // equal-width slots across their pool so every configured range is
    // covered end to end.
    uint64_t normal_id_low = 50'000'000;
    uint64_t normal_id_high = 500'000'000;
    uint64_t bursty_id_low = 500'000'000;
    uint64_t bursty_id_high = 535'000'000;
    uint64_t starwars_id_low = 1'500'000'000;
    uint64_t starwars_id_high = 1'600'000'000;

    // Bursty bots. Tweet counts are count_min + weighted index; the default
    // weights put the mean at 4.74. Every tweet carries a URL or a mention
    // (url_rate + mention_rate must be >= 1; the overlap is tweets with
    // both), so the content criterion holds by construction.
    int bursty_tweet_count_min = 3;
    std::vector<double> bursty_tweet_count_weights = {0.20, 0.25, 0.25, 0.21, 0.09};
    int64_t bursty_last_tweet_max_s = 120;  // exclusive
    double bursty_url_rate = 0.976;
    double bursty_mention_rate = 0.641;
    double bursty_hashtag_rate = 0.027;
    double bursty_no_friend_rate = 0.99;
    double bursty_no_follower_rate = 0.99;
    std::vector<std::pair<std::string, double>> spam_domains = {
        {"tinyurl.com", 0.42},         {"google.com", 0.20},
        {"bit.ly", 0.12},              {"dietagolder670.ru", 0.10},
        {"goroskopsiris2346.ru", 0.09}, {"dietagoliu4758.ru", 0.07},
    };
    // Every spam URL is mapped (redirect_map.ndjson) to a landing page on one
    // of these domains, so campaign clustering recovers exactly this many
    // campaigns.
    std::vector<std::string> campaign_domains = {"blocked-landing.example",
                                                 "facebook-goodies.example"};
    std::vector<double> campaign_weights = {0.7, 0.3};
    uint64_t mention_pool = 10'000;

    // Star Wars bots.
    uint64_t starwars_tweet_min = 3;  // >= 3 keeps them bursty users
    uint64_t starwars_tweet_max = 11;
    int64_t starwars_max_followers = 10;
    int64_t starwars_max_friends = 31;
    int64_t starwars_last_tweet_max_s = 600;  // exclusive
    double geotag_rate = 0.5;
    std::vector<GeoRect> rects = default_zone_rects();
    std::string reference_text;  // empty -> builtin_reference_text()
    int quote_ngram = 4;

    // Organic users.
    uint64_t normal_tweet_max = 12;
    int64_t normal_span_s = 8LL * 7 * 86400;  // tweets spread over ~8 weeks

    void validate() const;  // throws std::invalid_argument
};

SynthConfig synth_config_from_json(const std::string& json_text);
std::string synth_config_to_json(const SynthConfig& config);

// Draw-by-draw bookkeeping; the oracle side of every generated distribution.
struct SynthTallies {
    uint64_t n_normal = 0;
    uint64_t n_accidental = 0;
    uint64_t n_bursty = 0;
    uint64_t n_starwars = 0;
    uint64_t total_tweets = 0;
    uint64_t bursty_tweets = 0;
    uint64_t bursty_tweets_with_url = 0;
    uint64_t bursty_tweets_with_mention = 0;
    uint64_t bursty_tweets_with_hashtag = 0;
    uint64_t bursty_bots_with_url = 0;
    uint64_t bursty_bots_with_mention = 0;
    uint64_t bursty_bots_with_hashtag = 0;
    uint64_t bursty_no_friend = 0;
    uint64_t bursty_no_follower = 0;
    uint64_t spam_urls = 0;
    std::map<std::string, uint64_t> domain_draws;    // spam domain -> URLs drawn
    std::map<std::string, uint64_t> campaign_draws;  // campaign domain -> URLs mapped
    uint64_t distinct_mention_targets = 0;

    std::string to_json() const;
};

// Writes users.ndjson, tweets.ndjson, labels.ndjson and redirect_map.ndjson
// into out_dir (created if missing). Deterministic per config.
SynthTallies generate(const SynthConfig& config, const std::string& out_dir);

GroundTruthLabels load_labels(const std::string& path);  // NDJSON {"user_id","label"}

struct LabelMetrics {
    uint64_t tp = 0;
    uint64_t fp = 0;
    uint64_t fn = 0;
    uint64_t tn = 0;
    std::optional<double> precision;  // absent when tp+fp == 0
    std::optional<double> recall;     // absent when tp+fn == 0
    std::optional<double> f1;         // absent when precision or recall is
};

// One-vs-rest metrics per label over the union of observed labels. Both maps
// must cover the same user universe (throws std::invalid_argument otherwise).
std::map<std::string, LabelMetrics> evaluate(const GroundTruthLabels& truth,
                                             const GroundTruthLabels& predictions);

std::string metrics_to_json(const std::map<std::string, LabelMetrics>& metrics);

}  // namespace botscan
