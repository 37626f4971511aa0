#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "botscan/activity.hpp"
#include "botscan/records.hpp"

namespace botscan {

inline constexpr double kEarthRadiusKm = 6371.0;

// Axis-aligned lat/lon box, all four edges inclusive. No antimeridian wrap.
struct GeoRect {
    double lat_min = 0.0;
    double lat_max = 0.0;
    double lon_min = 0.0;
    double lon_max = 0.0;

    bool contains(const GeoPoint& p) const {
        return p.lat >= lat_min && p.lat <= lat_max && p.lon >= lon_min && p.lon <= lon_max;
    }
    void validate() const;  // throws std::invalid_argument
};

// Illustrative Europe / North America boxes; detector parameters, not ground
// truth. Override via config for any serious run.
std::vector<GeoRect> default_zone_rects();

// Great-circle distance on a spherical Earth (R = 6371 km).
double haversine_km(const GeoPoint& a, const GeoPoint& b);

bool in_any_rect(const GeoPoint& p, std::span<const GeoRect> rects);

// Mean haversine distance over consecutive pairs of a time-ordered track;
// absent when fewer than two points.
std::optional<double> mean_consecutive_distance(std::span<const GeoPoint> points);

struct UniformityResult {
    double statistic = 0.0;
    double p_approx = 0.0;  // Wilson–Hilferty chi-square approximation
    bool uniform = false;   // p_approx >= alpha
};

// Chi-square goodness of fit of points against the uniform distribution on a
// g x g degree-space grid over rect. Throws std::invalid_argument when g < 2,
// any point lies outside rect, or fewer than 5*g*g points are supplied.
UniformityResult grid_uniformity_test(std::span<const GeoPoint> points, const GeoRect& rect,
                                      int grid_g, double alpha);

// Strips '#', lowercases ASCII, collapses whitespace runs to single spaces.
std::string normalize_quote_text(std::string_view text);

// Word n-gram set over a normalized reference text. A text matches when any
// of its normalized n-gram windows appears in the reference.
class QuotationIndex {
public:
    QuotationIndex(std::string_view reference_text, int ngram_words = 4);

    bool matches(std::string_view text) const;
    int ngram_words() const { return n_; }
    size_t size() const { return grams_.size(); }

    bool operator==(const QuotationIndex& other) const {
        return n_ == other.n_ && grams_ == other.grams_;
    }

private:
    int n_;
    std::unordered_set<std::string> grams_;
};

struct StarWarsCriteria {
    uint64_t id_low = 1'500'000'000;
    uint64_t id_high = 1'600'000'000;  // half-open
    std::string required_source = "Windows Phone";
    uint64_t max_tweets = 11;
    int64_t max_followers = 10;
    int64_t max_friends = 31;
    std::vector<GeoRect> rects = default_zone_rects();
    bool require_no_retweets = true;
    bool require_no_mentions = true;
    std::optional<QuotationIndex> quotation;  // when set, every tweet must match

    void validate() const;
};

// pre: s summarizes tweets. Checks every criterion and reports each failure.
BotDecision classify_star_wars_bot(const UserRecord& u, const UserActivitySummary& s,
                                   std::span<const TweetRecord> tweets,
                                   const StarWarsCriteria& c);

}  // namespace botscan
