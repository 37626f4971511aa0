#include <filesystem>
#include <fstream>
#include <sstream>

#include "botscan/activity.hpp"
#include "botscan/geozone.hpp"
#include "botscan/ingest.hpp"
#include "botscan/reference_text.hpp"
#include "botscan/synth.hpp"
#include "botscan/timeutil.hpp"
#include "doctest.h"

using namespace botscan;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path fresh_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove_all(dir);
    return dir;
}

SynthConfig small_config() {
    SynthConfig c;
    c.seed = 20120301;
    c.n_normal = 400;
    c.n_bursty_bots = 60;
    c.n_starwars_bots = 40;
    c.accidental_bursty_rate = 0.01;
    return c;
}

Corpus load_generated(const std::filesystem::path& dir, IngestReport& report) {
    return load_corpus({(dir / "users.ndjson").string()},
                       {(dir / "tweets.ndjson").string()}, report);
}

}  // namespace

TEST_CASE("generate is deterministic per seed") {
    const auto dir_a = fresh_dir("botscan_synth_a");
    const auto dir_b = fresh_dir("botscan_synth_b");
    const auto config = small_config();
    generate(config, dir_a.string());
    generate(config, dir_b.string());
    for (const char* name :
         {"users.ndjson", "tweets.ndjson", "labels.ndjson", "redirect_map.ndjson"}) {
        CHECK(slurp(dir_a / name) == slurp(dir_b / name));
        CHECK(!slurp(dir_a / name).empty());
    }

    // A different seed produces different bytes.
    auto other = config;
    other.seed += 1;
    const auto dir_c = fresh_dir("botscan_synth_c");
    generate(other, dir_c.string());
    CHECK(slurp(dir_a / "users.ndjson") != slurp(dir_c / "users.ndjson"));
}

TEST_CASE("generate with no bursty bots emits no BURSTY_BOT label") {
    const auto dir = fresh_dir("botscan_synth_none");
    SynthConfig c = small_config();
    c.n_bursty_bots = 0;
    generate(c, dir.string());
    const auto labels = load_labels((dir / "labels.ndjson").string());
    for (const auto& [_, label] : labels) CHECK(label != Label::BurstyBot);
}

TEST_CASE("generated corpus re-ingests cleanly and matches tallies") {
    const auto dir = fresh_dir("botscan_synth_clean");
    const auto config = small_config();
    const auto tally = generate(config, dir.string());

    IngestReport report;
    const Corpus corpus = load_generated(dir, report);

    CHECK(report.users_rejected == 0);
    CHECK(report.tweets_rejected == 0);
    CHECK(report.duplicate_users == 0);
    CHECK(report.duplicate_tweets == 0);
    CHECK(report.orphan_tweets == 0);
    CHECK(report.users_parsed ==
          config.n_normal + config.n_bursty_bots + config.n_starwars_bots);
    CHECK(report.tweets_parsed == tally.total_tweets);
    CHECK(corpus.users.size() == report.users_parsed);

    const auto labels = load_labels((dir / "labels.ndjson").string());
    CHECK(labels.size() == corpus.users.size());
    CHECK(tally.n_normal + tally.n_accidental == config.n_normal);
    CHECK(tally.n_bursty == config.n_bursty_bots);
    CHECK(tally.n_starwars == config.n_starwars_bots);
}

TEST_CASE("serialize-then-parse round-trips every generated record") {
    const auto dir = fresh_dir("botscan_synth_roundtrip");
    generate(small_config(), dir.string());

    // Serializer mirroring the documented NDJSON schema.
    auto serialize_user = [](const UserRecord& u) {
        std::ostringstream s;
        s << "{\"user_id\":" << u.user_id << ",\"created_at\":\""
          << format_rfc3339_utc(u.created_at) << "\",\"screen_name\":\"" << u.screen_name
          << "\",\"followers_count\":" << u.followers_count
          << ",\"friends_count\":" << u.friends_count << "}";
        return s.str();
    };

    std::ifstream users(dir / "users.ndjson");
    std::string line;
    size_t checked = 0;
    while (std::getline(users, line)) {
        auto first = parse_user_line(line);
        REQUIRE(first.ok());
        auto second = parse_user_line(serialize_user(first.value()));
        REQUIRE(second.ok());
        const UserRecord& a = first.value();
        const UserRecord& b = second.value();
        CHECK(a.user_id == b.user_id);
        CHECK(a.created_at == b.created_at);
        CHECK(a.screen_name == b.screen_name);
        CHECK(a.followers_count == b.followers_count);
        CHECK(a.friends_count == b.friends_count);
        ++checked;
    }
    CHECK(checked == 500);
}

TEST_CASE("generated labels are sound for both classifiers") {
    const auto dir = fresh_dir("botscan_synth_sound");
    const auto config = small_config();
    generate(config, dir.string());

    IngestReport report;
    const Corpus corpus = load_generated(dir, report);
    const auto labels = load_labels((dir / "labels.ndjson").string());

    const BurstyUserCriteria bursty_crit;
    const BurstyBotDefinition bursty_def;
    StarWarsCriteria sw_crit;
    sw_crit.quotation = QuotationIndex(builtin_reference_text(), config.quote_ngram);

    uint64_t bursty_checked = 0, sw_checked = 0, accidental_checked = 0;
    for (const auto& [id, label] : labels) {
        const UserRecord& user = corpus.users.at(id);
        const auto& tweets = corpus.tweets_for(id);
        const auto summary = summarize(user, tweets);
        switch (label) {
            case Label::BurstyBot: {
                const auto d = classify_bursty_bot(user, summary, bursty_def, bursty_crit);
                CHECK(d.is_bot);
                ++bursty_checked;
                break;
            }
            case Label::StarWarsBot: {
                const auto d = classify_star_wars_bot(user, summary, tweets, sw_crit);
                CHECK(d.is_bot);
                // Star Wars bots are bursty users too, but never bursty bots.
                CHECK(is_bursty_user(summary, bursty_crit));
                CHECK(!classify_bursty_bot(user, summary, bursty_def, bursty_crit).is_bot);
                ++sw_checked;
                break;
            }
            case Label::AccidentalBursty: {
                CHECK(is_bursty_user(summary, bursty_crit));
                const auto d = classify_bursty_bot(user, summary, bursty_def, bursty_crit);
                CHECK(!d.is_bot);
                ++accidental_checked;
                break;
            }
            case Label::Normal: {
                CHECK(!is_bursty_user(summary, bursty_crit));
                break;
            }
        }
    }
    CHECK(bursty_checked == config.n_bursty_bots);
    CHECK(sw_checked == config.n_starwars_bots);
    CHECK(accidental_checked > 0);
}

TEST_CASE("generated bursty bots land inside their ID block") {
    const auto dir = fresh_dir("botscan_synth_ids");
    const auto config = small_config();
    generate(config, dir.string());
    const auto labels = load_labels((dir / "labels.ndjson").string());
    for (const auto& [id, label] : labels) {
        if (label == Label::BurstyBot) {
            CHECK(id >= config.bursty_id_low);
            CHECK(id < config.bursty_id_high);
        } else if (label == Label::StarWarsBot) {
            CHECK(id >= config.starwars_id_low);
            CHECK(id < config.starwars_id_high);
        } else {
            CHECK(id >= config.normal_id_low);
            CHECK(id < config.normal_id_high);
        }
    }
}

TEST_CASE("synth config json round-trips") {
    SynthConfig c = small_config();
    c.spam_domains = {{"tinyurl.com", 0.8}, {"bit.ly", 0.2}};
    c.campaign_domains = {"x.example", "y.example", "z.example"};
    c.campaign_weights = {0.5, 0.3, 0.2};
    c.rects = {GeoRect{1.0, 2.0, 3.0, 4.0}};
    const auto parsed = synth_config_from_json(synth_config_to_json(c));
    CHECK(parsed.seed == c.seed);
    CHECK(parsed.n_normal == c.n_normal);
    CHECK(parsed.spam_domains == c.spam_domains);
    CHECK(parsed.campaign_domains == c.campaign_domains);
    CHECK(parsed.rects.size() == 1);
    CHECK(parsed.rects[0].lat_min == doctest::Approx(1.0));
    CHECK(parsed.accidental_bursty_rate == doctest::Approx(c.accidental_bursty_rate));

    // Partial config overlays defaults.
    const auto partial = synth_config_from_json(R"({"n_normal": 7})");
    CHECK(partial.n_normal == 7);
    CHECK(partial.n_bursty_bots == SynthConfig{}.n_bursty_bots);
}

TEST_CASE("synth config validation") {
    SynthConfig c = small_config();
    c.bursty_url_rate = 0.5;
    c.bursty_mention_rate = 0.3;  // union below 1: content guarantee impossible
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);

    c = small_config();
    c.normal_id_high = 600'000'000;  // overlaps the bursty block
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);

    c = small_config();
    c.n_bursty_bots = 200'000'000;  // more bots than IDs in the block
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);

    c = small_config();
    c.accidental_bursty_rate = 1.5;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("evaluate perfect predictions") {
    GroundTruthLabels truth = {{1, Label::Normal}, {2, Label::BurstyBot}, {3, Label::Normal}};
    const auto metrics = evaluate(truth, truth);
    for (const auto& [label, m] : metrics) {
        CHECK(m.precision == 1.0);
        CHECK(m.recall == 1.0);
        CHECK(m.f1 == 1.0);
        CHECK(m.fp == 0);
        CHECK(m.fn == 0);
    }
}

TEST_CASE("evaluate with no predicted positives leaves precision undefined") {
    GroundTruthLabels truth = {{1, Label::BurstyBot}, {2, Label::Normal}};
    GroundTruthLabels predictions = {{1, Label::Normal}, {2, Label::Normal}};
    const auto metrics = evaluate(truth, predictions);
    const auto& bursty = metrics.at("BURSTY_BOT");
    CHECK(!bursty.precision.has_value());
    CHECK(bursty.recall == 0.0);
    CHECK(!bursty.f1.has_value());
    CHECK(metrics_to_json(metrics).find("\"precision\":null") != std::string::npos);
}

TEST_CASE("evaluate six-user confusion case matches manual tally") {
    // truth:      B B B N N N
    // predicted:  B N B B N N
    GroundTruthLabels truth = {{1, Label::BurstyBot},  {2, Label::BurstyBot},
                               {3, Label::BurstyBot},  {4, Label::Normal},
                               {5, Label::Normal},     {6, Label::Normal}};
    GroundTruthLabels predictions = {{1, Label::BurstyBot}, {2, Label::Normal},
                                     {3, Label::BurstyBot}, {4, Label::BurstyBot},
                                     {5, Label::Normal},    {6, Label::Normal}};
    const auto metrics = evaluate(truth, predictions);
    const auto& b = metrics.at("BURSTY_BOT");
    CHECK(b.tp == 2);
    CHECK(b.fp == 1);
    CHECK(b.fn == 1);
    CHECK(b.tn == 2);
    CHECK(*b.precision == doctest::Approx(2.0 / 3.0));
    CHECK(*b.recall == doctest::Approx(2.0 / 3.0));
    const auto& n = metrics.at("NORMAL");
    CHECK(n.tp == 2);
    CHECK(n.fp == 1);
    CHECK(n.fn == 1);
}

TEST_CASE("evaluate rejects mismatched universes") {
    GroundTruthLabels truth = {{1, Label::Normal}};
    GroundTruthLabels predictions = {{2, Label::Normal}};
    CHECK_THROWS_AS(evaluate(truth, predictions), std::invalid_argument);
    GroundTruthLabels bigger = {{1, Label::Normal}, {2, Label::Normal}};
    CHECK_THROWS_AS(evaluate(truth, bigger), std::invalid_argument);
}
