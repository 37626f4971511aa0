#include "botscan/geozone.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace botscan {

namespace {

double to_radians(double deg) { return deg * std::numbers::pi / 180.0; }

// Upper-tail standard normal probability via the complementary error function.
double normal_sf(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

}  // namespace

void GeoRect::validate() const {
    if (!(lat_min < lat_max) || !(lon_min < lon_max)) {
        throw std::invalid_argument("GeoRect: min bounds must be strictly below max bounds");
    }
    if (lat_min < -90.0 || lat_max > 90.0 || lon_min < -180.0 || lon_max > 180.0) {
        throw std::invalid_argument("GeoRect: bounds outside valid coordinate ranges");
    }
}

std::vector<GeoRect> default_zone_rects() {
    return {
        GeoRect{35.0, 65.0, -11.0, 32.0},    // Europe
        GeoRect{24.0, 50.0, -126.0, -66.0},  // North America
    };
}

double haversine_km(const GeoPoint& a, const GeoPoint& b) {
    const double phi1 = to_radians(a.lat);
    const double phi2 = to_radians(b.lat);
    const double dphi = to_radians(b.lat - a.lat);
    const double dlambda = to_radians(b.lon - a.lon);
    const double s = std::sin(dphi / 2) * std::sin(dphi / 2) +
                     std::cos(phi1) * std::cos(phi2) * std::sin(dlambda / 2) *
                         std::sin(dlambda / 2);
    return 2.0 * kEarthRadiusKm * std::atan2(std::sqrt(s), std::sqrt(1.0 - s));
}

bool in_any_rect(const GeoPoint& p, std::span<const GeoRect> rects) {
    for (const GeoRect& r : rects) {
        if (r.contains(p)) return true;
    }
    return false;
}

std::optional<double> mean_consecutive_distance(std::span<const GeoPoint> points) {
    if (points.size() < 2) return std::nullopt;
    double sum = 0.0;
    for (size_t i = 1; i < points.size(); ++i) {
        sum += haversine_km(points[i - 1], points[i]);
    }
    return sum / static_cast<double>(points.size() - 1);
}

UniformityResult grid_uniformity_test(std::span<const GeoPoint> points, const GeoRect& rect,
                                      int grid_g, double alpha) {
    rect.validate();
    if (grid_g < 2) throw std::invalid_argument("grid_uniformity_test: grid_g must be >= 2");
    const size_t cells = static_cast<size_t>(grid_g) * static_cast<size_t>(grid_g);
    if (points.size() < 5 * cells) {
        throw std::invalid_argument(
            "grid_uniformity_test: need at least 5*g*g points for the expected-count rule");
    }

    std::vector<uint64_t> counts(cells, 0);
    const double lat_span = rect.lat_max - rect.lat_min;
    const double lon_span = rect.lon_max - rect.lon_min;
    for (const GeoPoint& p : points) {
        if (!rect.contains(p)) {
            throw std::invalid_argument("grid_uniformity_test: point outside rect");
        }
        int row = static_cast<int>((p.lat - rect.lat_min) / lat_span * grid_g);
        int col = static_cast<int>((p.lon - rect.lon_min) / lon_span * grid_g);
        row = std::min(row, grid_g - 1);  // max-edge points land in the last cell
        col = std::min(col, grid_g - 1);
        ++counts[static_cast<size_t>(row) * grid_g + col];
    }

    const double expected = static_cast<double>(points.size()) / static_cast<double>(cells);
    double statistic = 0.0;
    for (uint64_t c : counts) {
        const double diff = static_cast<double>(c) - expected;
        statistic += diff * diff / expected;
    }

    // Wilson-Hilferty: (X/k)^(1/3) is approximately normal with mean
    // 1 - 2/(9k) and variance 2/(9k).
    const double k = static_cast<double>(cells - 1);
    const double mean = 1.0 - 2.0 / (9.0 * k);
    const double sd = std::sqrt(2.0 / (9.0 * k));
    const double z = (std::cbrt(statistic / k) - mean) / sd;

    UniformityResult r;
    r.statistic = statistic;
    r.p_approx = normal_sf(z);
    r.uniform = r.p_approx >= alpha;
    return r;
}

std::string normalize_quote_text(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    for (char ch : text) {
        if (ch == '#') continue;
        const unsigned char c = static_cast<unsigned char>(ch);
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(static_cast<char>(std::tolower(c)));
    }
    return out;
}

namespace {

std::vector<std::string> split_words(const std::string& normalized) {
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

std::string join_gram(std::span<const std::string> words) {
    std::string gram;
    for (size_t i = 0; i < words.size(); ++i) {
        if (i > 0) gram.push_back(' ');
        gram += words[i];
    }
    return gram;
}

}  // namespace

QuotationIndex::QuotationIndex(std::string_view reference_text, int ngram_words)
    : n_(ngram_words) {
    if (n_ < 2) throw std::invalid_argument("QuotationIndex: ngram_words must be >= 2");
    const auto words = split_words(normalize_quote_text(reference_text));
    if (words.size() >= static_cast<size_t>(n_)) {
        for (size_t i = 0; i + n_ <= words.size(); ++i) {
            grams_.insert(join_gram(std::span(words).subspan(i, n_)));
        }
    }
}

bool QuotationIndex::matches(std::string_view text) const {
    const auto words = split_words(normalize_quote_text(text));
    if (words.size() < static_cast<size_t>(n_)) return false;
    for (size_t i = 0; i + n_ <= words.size(); ++i) {
        if (grams_.count(join_gram(std::span(words).subspan(i, n_)))) return true;
    }
    return false;
}

void StarWarsCriteria::validate() const {
    if (id_low >= id_high) throw std::invalid_argument("id_low must be < id_high");
    if (max_followers < 0 || max_friends < 0) {
        throw std::invalid_argument("follower/friend caps must be >= 0");
    }
    for (const GeoRect& r : rects) r.validate();
}

BotDecision classify_star_wars_bot(const UserRecord& u, const UserActivitySummary& s,
                                   std::span<const TweetRecord> tweets,
                                   const StarWarsCriteria& c) {
    BotDecision decision;
    if (u.user_id < c.id_low || u.user_id >= c.id_high) {
        decision.reason_codes.push_back(reason::kIdRange);
    }
    if (s.sources.size() != 1 || *s.sources.begin() != c.required_source) {
        decision.reason_codes.push_back(reason::kSource);
    }
    if (s.tweet_count > c.max_tweets) {
        decision.reason_codes.push_back(reason::kMaxTweets);
    }
    if (u.followers_count > c.max_followers) {
        decision.reason_codes.push_back(reason::kMaxFollowers);
    }
    if (u.friends_count > c.max_friends) {
        decision.reason_codes.push_back(reason::kMaxFriends);
    }
    if (c.require_no_retweets && s.n_retweets > 0) {
        decision.reason_codes.push_back(reason::kRetweets);
    }
    if (c.require_no_mentions && s.n_with_mention > 0) {
        decision.reason_codes.push_back(reason::kMentions);
    }
    for (const TweetRecord& t : tweets) {
        if (t.geo && !in_any_rect(*t.geo, c.rects)) {
            decision.reason_codes.push_back(reason::kGeoZone);
            break;
        }
    }
    if (c.quotation) {
        for (const TweetRecord& t : tweets) {
            if (!c.quotation->matches(t.text)) {
                decision.reason_codes.push_back(reason::kQuotation);
                break;
            }
        }
    }
    decision.is_bot = decision.reason_codes.empty();
    return decision;
}

}  // namespace botscan
