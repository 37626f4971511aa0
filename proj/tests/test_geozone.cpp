#include <cmath>
#include <numbers>

#include "botscan/geozone.hpp"
#include "botscan/reference_text.hpp"
#include "botscan/rng.hpp"
#include "doctest.h"
#include "test_helpers.hpp"

using namespace botscan;
using namespace botscan::testing;

namespace {

// Independent great-circle route: spherical law of cosines.
double law_of_cosines_km(const GeoPoint& a, const GeoPoint& b) {
    const double d = std::numbers::pi / 180.0;
    double cosine = std::sin(a.lat * d) * std::sin(b.lat * d) +
                    std::cos(a.lat * d) * std::cos(b.lat * d) *
                        std::cos((b.lon - a.lon) * d);
    cosine = std::clamp(cosine, -1.0, 1.0);
    return kEarthRadiusKm * std::acos(cosine);
}

GeoPoint random_point(Rng& rng) {
    return {-90.0 + rng.next_double() * 180.0, -180.0 + rng.next_double() * 360.0};
}

GeoPoint random_in_rect(Rng& rng, const GeoRect& r) {
    return {r.lat_min + rng.next_double() * (r.lat_max - r.lat_min),
            r.lon_min + rng.next_double() * (r.lon_max - r.lon_min)};
}

}  // namespace

TEST_CASE("haversine identities") {
    const GeoPoint p{48.85, 2.35};
    CHECK(haversine_km(p, p) == doctest::Approx(0.0));

    // Antipodal: closed-form pi * R.
    const GeoPoint north{45.0, 10.0};
    const GeoPoint south{-45.0, -170.0};
    CHECK(haversine_km(north, south) ==
          doctest::Approx(std::numbers::pi * kEarthRadiusKm).epsilon(1e-9));

    // London -> New York, cross-checked against an independent formula.
    const GeoPoint london{51.5074, -0.1278};
    const GeoPoint nyc{40.7128, -74.0060};
    const double got = haversine_km(london, nyc);
    CHECK(got == doctest::Approx(5570.0).epsilon(10.0 / 5570.0));
    CHECK(got == doctest::Approx(law_of_cosines_km(london, nyc)).epsilon(1e-6));
}

TEST_CASE("haversine symmetry, bound, and cross-check properties") {
    Rng rng(271828);
    const double max_km = std::numbers::pi * kEarthRadiusKm;
    for (int trial = 0; trial < 500; ++trial) {
        const GeoPoint a = random_point(rng);
        const GeoPoint b = random_point(rng);
        const double ab = haversine_km(a, b);
        CHECK(ab == doctest::Approx(haversine_km(b, a)));
        CHECK(ab >= 0.0);
        CHECK(ab <= max_km + 1e-6);
        CHECK(ab == doctest::Approx(law_of_cosines_km(a, b)).epsilon(1e-4));
    }
}

TEST_CASE("in_any_rect inclusive bounds") {
    const auto rects = default_zone_rects();
    CHECK(in_any_rect({50.0, 10.0}, rects));    // inside Europe
    CHECK(in_any_rect({35.0, 10.0}, rects));    // on the lat_min edge
    CHECK(in_any_rect({40.0, -100.0}, rects));  // inside North America
    CHECK(!in_any_rect({0.0, -150.0}, rects));  // Pacific
    CHECK(!in_any_rect({50.0, 100.0}, rects));

    // Every generated in-rect point is a member.
    Rng rng(11);
    for (int i = 0; i < 10000; ++i) {
        const GeoRect& r = rects[rng.next_below(rects.size())];
        CHECK(in_any_rect(random_in_rect(rng, r), rects));
    }
}

TEST_CASE("mean_consecutive_distance basics") {
    CHECK(!mean_consecutive_distance({}).has_value());
    const std::vector<GeoPoint> one = {{10.0, 10.0}};
    CHECK(!mean_consecutive_distance(one).has_value());
    const std::vector<GeoPoint> same = {{10.0, 10.0}, {10.0, 10.0}};
    CHECK(*mean_consecutive_distance(same) == doctest::Approx(0.0));
}

TEST_CASE("mean_consecutive_distance unchanged by reversal") {
    Rng rng(314159);
    std::vector<GeoPoint> track;
    for (int i = 0; i < 50; ++i) track.push_back(random_point(rng));
    std::vector<GeoPoint> reversed(track.rbegin(), track.rend());
    CHECK(*mean_consecutive_distance(track) ==
          doctest::Approx(*mean_consecutive_distance(reversed)));
}

TEST_CASE("cross-zone hops average over 2000 km") {
    // The fake-location mechanism: consecutive points drawn uniformly from the
    // Europe/NA boxes sit far apart on average.
    const auto rects = default_zone_rects();
    Rng rng(20160901);
    std::vector<GeoPoint> track;
    for (int i = 0; i < 10001; ++i) {
        track.push_back(random_in_rect(rng, rects[rng.next_below(rects.size())]));
    }
    const auto mean = mean_consecutive_distance(track);
    REQUIRE(mean.has_value());
    CHECK(*mean > 2000.0);
}

TEST_CASE("grid_uniformity_test accepts balanced cells with statistic 0") {
    const GeoRect rect{0.0, 4.0, 0.0, 4.0};
    std::vector<GeoPoint> points;
    for (int row = 0; row < 2; ++row) {
        for (int col = 0; col < 2; ++col) {
            for (int k = 0; k < 5; ++k) {
                points.push_back({row * 2.0 + 1.0, col * 2.0 + 1.0});
            }
        }
    }
    const auto r = grid_uniformity_test(points, rect, 2, 0.01);
    CHECK(r.statistic == doctest::Approx(0.0));
    CHECK(r.uniform);
    CHECK(r.p_approx > 0.9);
}

TEST_CASE("grid_uniformity_test rejects a single-cell pile") {
    // Closed form: all n points in one of g*g cells gives n*(g*g - 1).
    const GeoRect rect{0.0, 8.0, 0.0, 8.0};
    std::vector<GeoPoint> points(1000, GeoPoint{0.5, 0.5});
    const auto r = grid_uniformity_test(points, rect, 4, 0.01);
    CHECK(r.statistic == doctest::Approx(1000.0 * 15.0));
    CHECK(!r.uniform);
    CHECK(r.p_approx < 1e-6);
}

TEST_CASE("grid_uniformity_test passes seeded uniform samples") {
    const GeoRect rect{35.0, 65.0, -11.0, 32.0};
    Rng rng(97);
    std::vector<GeoPoint> points;
    for (int i = 0; i < 10000; ++i) points.push_back(random_in_rect(rng, rect));
    const auto r = grid_uniformity_test(points, rect, 5, 0.01);
    CHECK(r.uniform);
    CHECK(r.p_approx >= 0.01);
}

TEST_CASE("grid_uniformity_test statistic invariant under cell relabeling") {
    const GeoRect rect{0.0, 10.0, 0.0, 10.0};
    Rng rng(55);
    std::vector<GeoPoint> points, mirrored;
    for (int i = 0; i < 500; ++i) {
        GeoPoint p = random_in_rect(rng, rect);
        points.push_back(p);
        mirrored.push_back({p.lat, 10.0 - p.lon});  // reflect the lon axis
    }
    const auto a = grid_uniformity_test(points, rect, 3, 0.01);
    const auto b = grid_uniformity_test(mirrored, rect, 3, 0.01);
    CHECK(a.statistic == doctest::Approx(b.statistic));
}

TEST_CASE("grid_uniformity_test reports precondition violations") {
    const GeoRect rect{0.0, 1.0, 0.0, 1.0};
    std::vector<GeoPoint> ok(60, GeoPoint{0.5, 0.5});
    CHECK_THROWS_AS(grid_uniformity_test(ok, rect, 1, 0.01), std::invalid_argument);
    std::vector<GeoPoint> few(10, GeoPoint{0.5, 0.5});
    CHECK_THROWS_AS(grid_uniformity_test(few, rect, 2, 0.01), std::invalid_argument);
    std::vector<GeoPoint> outside(30, GeoPoint{2.0, 0.5});
    CHECK_THROWS_AS(grid_uniformity_test(outside, rect, 2, 0.01), std::invalid_argument);
}

TEST_CASE("normalize_quote_text strips hashes and collapses whitespace") {
    CHECK(normalize_quote_text("The  #Force   is\tstrong") == "the force is strong");
    CHECK(normalize_quote_text("# # #") == "");
    CHECK(normalize_quote_text("  spaced  out  ") == "spaced out");
}

TEST_CASE("quotation matching") {
    const std::string reference =
        "the freighter dropped out of the long dark between the stars and the "
        "cabin lights flickered twice before the old reactor settled";
    const QuotationIndex idx(reference, 4);
    CHECK(idx.size() > 0);

    // Quotation with '#' inserted survives normalization.
    CHECK(idx.matches("the #freighter dropped out of the long dark"));
    CHECK(idx.matches("cabin lights flickered twice"));
    CHECK(idx.matches("the fre#ighter dropped out"));
    CHECK(!idx.matches(""));
    CHECK(!idx.matches("too short"));
    CHECK(!idx.matches("completely unrelated word salad goes here today"));
    // Same words, wrong order: no contiguous window matches.
    CHECK(!idx.matches("dropped freighter the out of long the dark"));

    CHECK_THROWS_AS(QuotationIndex("a b c", 1), std::invalid_argument);
}

TEST_CASE("quotation match agrees with a brute-force window scan") {
    const std::string_view reference = builtin_reference_text();
    const QuotationIndex idx(reference, 4);

    // Oracle: search the normalized reference for each normalized 4-word
    // window of the candidate text, as plain substring-of-words scan.
    const std::string ref_norm = normalize_quote_text(reference);
    auto words_of = [](const std::string& s) {
        std::vector<std::string> w;
        size_t pos = 0;
        while (pos < s.size()) {
            size_t sp = s.find(' ', pos);
            if (sp == std::string::npos) sp = s.size();
            if (sp > pos) w.push_back(s.substr(pos, sp - pos));
            pos = sp + 1;
        }
        return w;
    };
    const auto ref_words = words_of(ref_norm);
    auto oracle = [&](const std::string& text) {
        const auto tw = words_of(normalize_quote_text(text));
        if (tw.size() < 4) return false;
        for (size_t i = 0; i + 4 <= tw.size(); ++i) {
            for (size_t j = 0; j + 4 <= ref_words.size(); ++j) {
                bool all = true;
                for (size_t k = 0; k < 4; ++k) {
                    if (tw[i + k] != ref_words[j + k]) {
                        all = false;
                        break;
                    }
                }
                if (all) return true;
            }
        }
        return false;
    };

    Rng rng(2024);
    const char* salad[] = {"quantum", "banana", "ledger", "purple", "vortex", "cabbage"};
    for (int trial = 0; trial < 100; ++trial) {
        std::string text;
        if (rng.next_bool(0.5)) {
            // Genuine window with hashes sprinkled in.
            const uint64_t len = 4 + rng.next_below(6);
            const uint64_t start = rng.next_below(ref_words.size() - len + 1);
            for (uint64_t k = 0; k < len; ++k) {
                if (k > 0) text.push_back(' ');
                if (rng.next_bool(0.3)) text.push_back('#');
                text += ref_words[start + k];
            }
        } else {
            for (int k = 0; k < 6; ++k) {
                if (k > 0) text.push_back(' ');
                text += salad[rng.next_below(std::size(salad))];
            }
        }
        CHECK(idx.matches(text) == oracle(text));
    }
}

TEST_CASE("classify_star_wars_bot criteria") {
    StarWarsCriteria crit;
    const QuotationIndex idx(builtin_reference_text(), 4);

    auto make_sw_user = [&](uint64_t id, int64_t followers, int64_t friends) {
        return make_user(id, kBase, followers, friends);
    };
    auto make_sw_tweets = [&](const UserRecord& u, int count, bool geotag_in_zone) {
        std::vector<TweetRecord> tweets;
        for (int i = 0; i < count; ++i) {
            TweetRecord t;
            t.tweet_id = i + 1;
            t.user_id = u.user_id;
            t.created_at = u.created_at + 10 * (i + 1);
            t.source = "Windows Phone";
            t.text = "the freighter dropped out of the long dark";
            if (i == 0) {
                t.geo = geotag_in_zone ? GeoPoint{50.0, 10.0} : GeoPoint{0.0, -150.0};
            }
            tweets.push_back(std::move(t));
        }
        return tweets;
    };

    SUBCASE("prototypical star wars bot") {
        const UserRecord u = make_sw_user(1550000000, 3, 20);
        const auto tweets = make_sw_tweets(u, 7, true);
        const auto d = classify_star_wars_bot(u, summarize(u, tweets), tweets, crit);
        CHECK(d.is_bot);
    }
    SUBCASE("too many tweets") {
        const UserRecord u = make_sw_user(1550000000, 3, 20);
        const auto tweets = make_sw_tweets(u, 12, true);
        const auto d = classify_star_wars_bot(u, summarize(u, tweets), tweets, crit);
        CHECK(!d.is_bot);
        CHECK(d.reason_codes == std::vector<std::string>{reason::kMaxTweets});
    }
    SUBCASE("geotag outside both rects") {
        const UserRecord u = make_sw_user(1550000000, 3, 20);
        const auto tweets = make_sw_tweets(u, 7, false);
        const auto d = classify_star_wars_bot(u, summarize(u, tweets), tweets, crit);
        CHECK(!d.is_bot);
        CHECK(d.reason_codes == std::vector<std::string>{reason::kGeoZone});
    }
    SUBCASE("id range, followers, friends, source") {
        const UserRecord u = make_sw_user(510000000, 11, 32);
        auto tweets = make_sw_tweets(u, 7, true);
        tweets[0].source = "Mobile Web";
        const auto d = classify_star_wars_bot(u, summarize(u, tweets), tweets, crit);
        CHECK(!d.is_bot);
        const std::vector<std::string> expected = {reason::kIdRange, reason::kSource,
                                                   reason::kMaxFollowers,
                                                   reason::kMaxFriends};
        CHECK(d.reason_codes == expected);
    }
    SUBCASE("retweets and mentions disqualify") {
        const UserRecord u = make_sw_user(1550000000, 3, 20);
        auto tweets = make_sw_tweets(u, 7, true);
        tweets[1].is_retweet = true;
        tweets[2].mentions.push_back("someone");
        const auto d = classify_star_wars_bot(u, summarize(u, tweets), tweets, crit);
        CHECK(!d.is_bot);
        const std::vector<std::string> expected = {reason::kRetweets, reason::kMentions};
        CHECK(d.reason_codes == expected);
    }
    SUBCASE("quotation check enforced when configured") {
        crit.quotation = idx;
        const UserRecord u = make_sw_user(1550000000, 3, 20);
        auto tweets = make_sw_tweets(u, 5, true);
        const auto ok = classify_star_wars_bot(u, summarize(u, tweets), tweets, crit);
        CHECK(ok.is_bot);
        tweets[3].text = "buy cheap watches now please thanks";
        const auto bad = classify_star_wars_bot(u, summarize(u, tweets), tweets, crit);
        CHECK(!bad.is_bot);
        CHECK(bad.reason_codes == std::vector<std::string>{reason::kQuotation});
    }
}

TEST_CASE("classify_star_wars_bot monotone in caps") {
    Rng rng(606);
    StarWarsCriteria base;
    for (int trial = 0; trial < 200; ++trial) {
        const UserRecord u = make_user(1500000000 + rng.next_below(100000000), kBase,
                                       rng.next_below(20), rng.next_below(40));
        std::vector<TweetRecord> tweets;
        const uint64_t k = rng.next_below(15);
        for (uint64_t i = 0; i < k; ++i) {
            TweetRecord t;
            t.tweet_id = i + 1;
            t.user_id = u.user_id;
            t.created_at = u.created_at + 5 * (i + 1);
            t.source = rng.next_bool(0.8) ? "Windows Phone" : "Android";
            t.text = "quote";
            if (rng.next_bool(0.4)) t.geo = GeoPoint{50.0, 10.0};
            tweets.push_back(std::move(t));
        }
        const auto s = summarize(u, tweets);
        if (classify_star_wars_bot(u, s, tweets, base).is_bot) {
            StarWarsCriteria relaxed = base;
            relaxed.max_tweets += rng.next_below(10);
            relaxed.max_followers += rng.next_below(10);
            relaxed.max_friends += rng.next_below(10);
            CHECK(classify_star_wars_bot(u, s, tweets, relaxed).is_bot);
        }
    }
}

TEST_CASE("GeoRect validation") {
    CHECK_THROWS_AS((GeoRect{10.0, 5.0, 0.0, 1.0}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((GeoRect{-95.0, 5.0, 0.0, 1.0}).validate(), std::invalid_argument);
    CHECK_NOTHROW((GeoRect{35.0, 65.0, -11.0, 32.0}).validate());
}
