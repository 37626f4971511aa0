// botscan: behavioral botnet detection over NDJSON tweet archives, with a
// seeded synthetic-corpus generator and an evaluation harness.

#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <unordered_set>

#include "CLI11.hpp"
#include "botscan/activity.hpp"
#include "botscan/geozone.hpp"
#include "botscan/idspace.hpp"
#include "botscan/ingest.hpp"
#include "botscan/reference_text.hpp"
#include "botscan/synth.hpp"
#include "botscan/timeutil.hpp"
#include "botscan/urlforensics.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;
using namespace botscan;

namespace {

uint64_t fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    uint64_t hash = 0xcbf29ce484222325ULL;
    char buf[1 << 16];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        const std::streamsize n = in.gcount();
        for (std::streamsize i = 0; i < n; ++i) {
            hash ^= static_cast<unsigned char>(buf[i]);
            hash *= 0x100000001b3ULL;
        }
        if (!in) break;
    }
    return hash;
}

std::string hex64(uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

// Every run drops a manifest next to its reports: effective config plus input
// digests, so a run can be reproduced byte for byte.
void write_manifest(const fs::path& out_dir, const std::string& subcommand,
                    const std::vector<std::string>& inputs, const ordered_json& config_echo) {
    ordered_json m;
    m["subcommand"] = subcommand;
    m["created_utc"] = format_rfc3339_utc(static_cast<int64_t>(std::time(nullptr)));
    auto& digests = m["inputs"] = ordered_json::object();
    for (const auto& path : inputs) {
        digests[path] = "fnv1a64:" + hex64(fnv1a64_file(path));
    }
    m["config"] = config_echo;
    write_file(out_dir / "manifest.json", m.dump(2) + "\n");
}

json load_config_file(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open config " + path);
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw std::runtime_error("config " + path + " is not a JSON object");
    }
    return j;
}

const json* section(const json& config, const char* name) {
    auto it = config.find(name);
    return it == config.end() ? nullptr : &*it;
}

template <typename T>
void overlay(const json* sec, const char* key, T& out) {
    if (sec && sec->contains(key)) out = sec->at(key).get<T>();
}

struct CommonInputs {
    std::vector<std::string> users;
    std::vector<std::string> tweets;
    std::string config_path;
    std::string out_dir = ".";
    std::string ingest_report_path;  // empty -> stderr
};

void add_corpus_options(CLI::App* cmd, CommonInputs& in) {
    cmd->add_option("--users", in.users, "users.ndjson path(s)")->required();
    cmd->add_option("--tweets", in.tweets, "tweets.ndjson path(s)")->required();
    cmd->add_option("--config", in.config_path, "JSON config file");
    cmd->add_option("--out", in.out_dir, "output directory");
    cmd->add_option("--ingest-report", in.ingest_report_path,
                    "write the ingest report here instead of stderr");
}

Corpus load_inputs(const CommonInputs& in) {
    IngestReport report;
    Corpus corpus = load_corpus(in.users, in.tweets, report);
    if (in.ingest_report_path.empty()) {
        std::cerr << report.to_json() << "\n";
    } else {
        write_file(in.ingest_report_path, report.to_json() + "\n");
    }
    return corpus;
}

std::vector<std::string> all_input_paths(const CommonInputs& in) {
    std::vector<std::string> paths = in.users;
    paths.insert(paths.end(), in.tweets.begin(), in.tweets.end());
    if (!in.config_path.empty()) paths.push_back(in.config_path);
    return paths;
}

BurstyUserCriteria bursty_user_criteria(const json& config) {
    BurstyUserCriteria c;
    const json* sec = section(config, "bursty_user");
    overlay(sec, "min_tweets", c.min_tweets);
    overlay(sec, "window_s", c.window_s);
    return c;
}

BurstyBotDefinition bursty_bot_definition(const json& config) {
    BurstyBotDefinition d;
    const json* sec = section(config, "bursty_bot");
    overlay(sec, "id_low", d.id_low);
    overlay(sec, "id_high", d.id_high);
    overlay(sec, "required_source", d.required_source);
    overlay(sec, "content_fraction_min", d.content_fraction_min);
    return d;
}

GeoRect rect_from_json(const json& j) {
    return GeoRect{j.at("lat_min").get<double>(), j.at("lat_max").get<double>(),
                   j.at("lon_min").get<double>(), j.at("lon_max").get<double>()};
}

ordered_json rect_to_json(const GeoRect& r) {
    return ordered_json{{"lat_min", r.lat_min},
                        {"lat_max", r.lat_max},
                        {"lon_min", r.lon_min},
                        {"lon_max", r.lon_max}};
}

StarWarsCriteria starwars_criteria(const json& config) {
    StarWarsCriteria c;
    const json* sec = section(config, "starwars");
    overlay(sec, "id_low", c.id_low);
    overlay(sec, "id_high", c.id_high);
    overlay(sec, "required_source", c.required_source);
    overlay(sec, "max_tweets", c.max_tweets);
    overlay(sec, "max_followers", c.max_followers);
    overlay(sec, "max_friends", c.max_friends);
    overlay(sec, "require_no_retweets", c.require_no_retweets);
    overlay(sec, "require_no_mentions", c.require_no_mentions);
    if (sec && sec->contains("rects")) {
        c.rects.clear();
        for (const auto& row : sec->at("rects")) c.rects.push_back(rect_from_json(row));
    }
    return c;
}

DomainRules domain_rules(const json& config) {
    DomainRules rules = default_domain_rules();
    const json* sec = section(config, "domains");
    if (sec && sec->contains("multi_label_suffixes")) {
        rules.multi_label_suffixes.clear();
        for (const auto& s : sec->at("multi_label_suffixes")) {
            rules.multi_label_suffixes.insert(s.get<std::string>());
        }
    }
    return rules;
}

ordered_json bursty_config_echo(const BurstyUserCriteria& c, const BurstyBotDefinition& d) {
    ordered_json j;
    j["bursty_user"] = {{"min_tweets", c.min_tweets}, {"window_s", c.window_s}};
    j["bursty_bot"] = {{"id_low", d.id_low},
                       {"id_high", d.id_high},
                       {"required_source", d.required_source},
                       {"content_fraction_min", d.content_fraction_min}};
    return j;
}

std::string reasons_json(const std::vector<std::string>& reasons) {
    std::string s = "[";
    for (size_t i = 0; i < reasons.size(); ++i) {
        if (i > 0) s.push_back(',');
        s += "\"" + reasons[i] + "\"";
    }
    s.push_back(']');
    return s;
}

// Shared body of the two detector subcommands: classify every user, write one
// detections row per user in ID order.
struct DetectionCounts {
    uint64_t users = 0;
    uint64_t positives = 0;
    uint64_t bursty_users = 0;
};

template <typename Classifier>
DetectionCounts write_detections(const Corpus& corpus, const BurstyUserCriteria& user_crit,
                                 const fs::path& out_path, bool explain,
                                 const char* positive_label, Classifier&& classify) {
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + out_path.string());
    DetectionCounts counts;
    for (uint64_t id : corpus.sorted_user_ids()) {
        const UserRecord& user = corpus.users.at(id);
        const auto& tweets = corpus.tweets_for(id);
        const UserActivitySummary summary = summarize(user, tweets);
        if (is_bursty_user(summary, user_crit)) ++counts.bursty_users;
        const BotDecision d = classify(user, summary, tweets);
        ++counts.users;
        if (d.is_bot) ++counts.positives;
        out << "{\"user_id\":" << id << ",\"label\":\""
            << (d.is_bot ? positive_label : "NORMAL") << "\",\"is_bot\":"
            << (d.is_bot ? "true" : "false");
        if (explain) out << ",\"reasons\":" << reasons_json(d.reason_codes);
        out << "}\n";
    }
    return counts;
}

// Positive user IDs from a detections file ("is_bot": true rows).
std::unordered_set<uint64_t> load_positive_ids(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::unordered_set<uint64_t> ids;
    std::string line;
    uint64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto j = json::parse(line, nullptr, false);
        if (!j.is_object() || !j.contains("user_id") || !j.contains("is_bot")) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": expected a detections row");
        }
        if (j["is_bot"].get<bool>()) ids.insert(j["user_id"].get<uint64_t>());
    }
    return ids;
}

int run_synth(const std::string& config_path, const std::string& out_dir,
              const CLI::App* cmd, uint64_t seed, uint64_t n_normal, uint64_t n_bursty,
              uint64_t n_starwars) {
    SynthConfig config;
    if (!config_path.empty()) {
        json file = load_config_file(config_path);
        const json* sec = section(file, "synth");
        config = synth_config_from_json(sec ? sec->dump() : file.dump());
    }
    if (cmd->count("--seed")) config.seed = seed;
    if (cmd->count("--n-normal")) config.n_normal = n_normal;
    if (cmd->count("--n-bursty")) config.n_bursty_bots = n_bursty;
    if (cmd->count("--n-starwars")) config.n_starwars_bots = n_starwars;

    fs::create_directories(out_dir);
    const SynthTallies tally = generate(config, out_dir);
    write_file(fs::path(out_dir) / "synth_summary.json", tally.to_json() + "\n");
    std::vector<std::string> inputs;
    if (!config_path.empty()) inputs.push_back(config_path);
    write_manifest(out_dir, "synth", inputs, json::parse(synth_config_to_json(config)));
    std::cout << "generated users=" << (config.n_normal + config.n_bursty_bots +
                                        config.n_starwars_bots)
              << " tweets=" << tally.total_tweets << " into " << out_dir << "\n";
    return 0;
}

int run_detect_bursty(const CommonInputs& in, const CLI::App* cmd, int64_t window_s,
                      int64_t min_tweets, uint64_t id_low, uint64_t id_high,
                      std::string source, double content_fraction, bool explain) {
    const json config = load_config_file(in.config_path);
    BurstyUserCriteria crit = bursty_user_criteria(config);
    BurstyBotDefinition def = bursty_bot_definition(config);
    if (cmd->count("--window-s")) crit.window_s = window_s;
    if (cmd->count("--min-tweets")) crit.min_tweets = min_tweets;
    if (cmd->count("--id-low")) def.id_low = id_low;
    if (cmd->count("--id-high")) def.id_high = id_high;
    if (cmd->count("--required-source")) def.required_source = source;
    if (cmd->count("--content-fraction")) def.content_fraction_min = content_fraction;
    crit.validate();
    def.validate();

    fs::create_directories(in.out_dir);
    const Corpus corpus = load_inputs(in);
    const auto counts = write_detections(
        corpus, crit, fs::path(in.out_dir) / "detections.ndjson", explain, "BURSTY_BOT",
        [&](const UserRecord& u, const UserActivitySummary& s,
            const std::vector<TweetRecord>&) { return classify_bursty_bot(u, s, def, crit); });

    ordered_json summary;
    summary["users"] = counts.users;
    summary["bursty_users"] = counts.bursty_users;
    summary["bursty_bots"] = counts.positives;
    write_file(fs::path(in.out_dir) / "detect_summary.json", summary.dump(2) + "\n");
    write_manifest(in.out_dir, "detect-bursty", all_input_paths(in),
                   bursty_config_echo(crit, def));
    std::cout << summary.dump() << "\n";
    return 0;
}

int run_detect_starwars(const CommonInputs& in, const CLI::App* cmd, int64_t window_s,
                        int64_t min_tweets, uint64_t id_low, uint64_t id_high,
                        std::string source, uint64_t max_tweets, int64_t max_followers,
                        int64_t max_friends, bool quotation_check,
                        const std::string& reference_path, int ngram, bool explain) {
    const json config = load_config_file(in.config_path);
    BurstyUserCriteria user_crit = bursty_user_criteria(config);
    if (cmd->count("--window-s")) user_crit.window_s = window_s;
    if (cmd->count("--min-tweets")) user_crit.min_tweets = min_tweets;
    StarWarsCriteria crit = starwars_criteria(config);
    if (cmd->count("--id-low")) crit.id_low = id_low;
    if (cmd->count("--id-high")) crit.id_high = id_high;
    if (cmd->count("--required-source")) crit.required_source = source;
    if (cmd->count("--max-tweets")) crit.max_tweets = max_tweets;
    if (cmd->count("--max-followers")) crit.max_followers = max_followers;
    if (cmd->count("--max-friends")) crit.max_friends = max_friends;

    const json* sec = section(config, "starwars");
    bool quote_enabled = quotation_check;
    std::string ref_path = reference_path;
    int quote_n = ngram;
    if (sec && sec->contains("quotation_check") && !cmd->count("--quotation-check")) {
        quote_enabled = true;
        const json& q = sec->at("quotation_check");
        if (q.contains("reference_path") && ref_path.empty()) {
            ref_path = q.at("reference_path").get<std::string>();
        }
        if (q.contains("ngram") && !cmd->count("--ngram")) quote_n = q.at("ngram").get<int>();
    }
    if (quote_enabled) {
        std::string text;
        if (ref_path.empty()) {
            text = std::string(builtin_reference_text());
        } else {
            std::ifstream ref(ref_path, std::ios::binary);
            if (!ref) throw std::runtime_error("cannot open reference text " + ref_path);
            text.assign(std::istreambuf_iterator<char>(ref), std::istreambuf_iterator<char>());
        }
        crit.quotation = QuotationIndex(text, quote_n);
    }
    crit.validate();

    fs::create_directories(in.out_dir);
    const Corpus corpus = load_inputs(in);
    std::vector<uint64_t> positives;
    const auto counts = write_detections(
        corpus, user_crit, fs::path(in.out_dir) / "detections.ndjson", explain,
        "STARWARS_BOT",
        [&](const UserRecord& u, const UserActivitySummary& s,
            const std::vector<TweetRecord>& tweets) {
            BotDecision d = classify_star_wars_bot(u, s, tweets, crit);
            if (d.is_bot) positives.push_back(u.user_id);
            return d;
        });

    // Geotags of detected bots, for external map plotting, plus the pooled
    // mean distance between consecutive geotags of the same bot.
    double pair_km_sum = 0.0;
    uint64_t pair_count = 0;
    {
        std::ofstream csv(fs::path(in.out_dir) / "geo_points.csv",
                          std::ios::binary | std::ios::trunc);
        csv << "user_id,lat,lon\n";
        char row[96];
        for (uint64_t id : positives) {
            std::optional<GeoPoint> prev;
            for (const TweetRecord& t : corpus.tweets_for(id)) {
                if (!t.geo) continue;
                std::snprintf(row, sizeof(row), "%llu,%.6f,%.6f\n",
                              static_cast<unsigned long long>(id), t.geo->lat, t.geo->lon);
                csv << row;
                if (prev) {
                    pair_km_sum += haversine_km(*prev, *t.geo);
                    ++pair_count;
                }
                prev = t.geo;
            }
        }
    }

    ordered_json summary;
    summary["users"] = counts.users;
    summary["starwars_bots"] = counts.positives;
    summary["geo_pairs"] = pair_count;
    summary["mean_consecutive_geo_km"] =
        pair_count == 0 ? ordered_json(nullptr) : ordered_json(pair_km_sum / pair_count);
    write_file(fs::path(in.out_dir) / "detect_summary.json", summary.dump(2) + "\n");

    ordered_json echo;
    echo["starwars"] = {{"id_low", crit.id_low},
                        {"id_high", crit.id_high},
                        {"required_source", crit.required_source},
                        {"max_tweets", crit.max_tweets},
                        {"max_followers", crit.max_followers},
                        {"max_friends", crit.max_friends},
                        {"require_no_retweets", crit.require_no_retweets},
                        {"require_no_mentions", crit.require_no_mentions},
                        {"quotation_check", quote_enabled},
                        {"quote_ngram", quote_n}};
    auto& rects = echo["starwars"]["rects"] = ordered_json::array();
    for (const GeoRect& r : crit.rects) rects.push_back(rect_to_json(r));
    write_manifest(in.out_dir, "detect-starwars", all_input_paths(in), echo);
    std::cout << summary.dump() << "\n";
    return 0;
}

int run_idspace_hist(const CommonInputs& in, const CLI::App* cmd, uint64_t bin_width,
                     int64_t window_s, int64_t min_tweets, uint64_t abs_min, double frac_min,
                     uint64_t gap_bins) {
    const json config = load_config_file(in.config_path);
    BurstyUserCriteria crit = bursty_user_criteria(config);
    if (cmd->count("--window-s")) crit.window_s = window_s;
    if (cmd->count("--min-tweets")) crit.min_tweets = min_tweets;
    crit.validate();
    const json* sec = section(config, "idspace");
    uint64_t width = bin_width, amin = abs_min, gap = gap_bins;
    double fmin = frac_min;
    if (!cmd->count("--bin-width")) overlay(sec, "bin_width", width);
    if (!cmd->count("--abs-min")) overlay(sec, "abs_min", amin);
    if (!cmd->count("--frac-min")) overlay(sec, "frac_min", fmin);
    if (!cmd->count("--gap-bins")) overlay(sec, "gap_bins", gap);

    fs::create_directories(in.out_dir);
    const Corpus corpus = load_inputs(in);

    // Predicate: bursty users, the behavior the ID-space view targets.
    std::unordered_set<uint64_t> bursty;
    for (const auto& [id, user] : corpus.users) {
        if (is_bursty_user(summarize(user, corpus.tweets_for(id)), crit)) bursty.insert(id);
    }
    const auto ids = corpus.sorted_user_ids();
    const auto hist = build_histogram(
        ids, [&](uint64_t id) { return bursty.count(id) > 0; }, width);

    std::ofstream csv(fs::path(in.out_dir) / "histogram.csv",
                      std::ios::binary | std::ios::trunc);
    write_histogram_csv(hist, csv);

    const auto clusters = detect_spikes(hist, amin, fmin, gap);
    ordered_json spikes = ordered_json::array();
    for (const auto& c : clusters) {
        spikes.push_back({{"bin_start", c.bin_start},
                          {"bin_end", c.bin_end},
                          {"id_low", c.bin_start * width},
                          {"id_high", (c.bin_end + 1) * width},
                          {"matching_sum", c.matching_sum},
                          {"peak_fraction", c.peak_fraction}});
    }
    ordered_json out;
    out["bin_width"] = width;
    out["abs_min"] = amin;
    out["frac_min"] = fmin;
    out["gap_bins"] = gap;
    out["total_users"] = hist.total_users();
    out["matching_users"] = hist.total_matching();
    out["clusters"] = spikes;
    write_file(fs::path(in.out_dir) / "spikes.json", out.dump(2) + "\n");

    ordered_json echo;
    echo["idspace"] = {{"bin_width", width},
                       {"abs_min", amin},
                       {"frac_min", fmin},
                       {"gap_bins", gap}};
    echo["bursty_user"] = {{"min_tweets", crit.min_tweets}, {"window_s", crit.window_s}};
    write_manifest(in.out_dir, "idspace-hist", all_input_paths(in), echo);
    std::cout << "bins=" << hist.bins.size() << " clusters=" << clusters.size() << "\n";
    return 0;
}

int run_diff_snapshots(const std::string& earlier_path, const std::string& later_path,
                       const std::string& out_dir) {
    fs::create_directories(out_dir);
    const auto earlier = load_snapshot_ids(earlier_path);
    const auto later = load_snapshot_ids(later_path);
    const SnapshotDiff diff = diff_snapshots(earlier, later);

    auto dump_ids = [&](const char* name, const std::vector<uint64_t>& ids) {
        std::ofstream out(fs::path(out_dir) / name, std::ios::binary | std::ios::trunc);
        for (uint64_t id : ids) out << id << "\n";
    };
    dump_ids("disappeared.txt", diff.disappeared);
    dump_ids("persisted.txt", diff.persisted);
    dump_ids("appeared.txt", diff.appeared);

    ordered_json j;
    j["earlier_count"] = diff.disappeared.size() + diff.persisted.size();
    j["later_count"] = diff.appeared.size() + diff.persisted.size();
    j["disappeared_count"] = diff.disappeared.size();
    j["persisted_count"] = diff.persisted.size();
    j["appeared_count"] = diff.appeared.size();
    write_file(fs::path(out_dir) / "snapshot_diff.json", j.dump(2) + "\n");
    write_manifest(out_dir, "diff-snapshots", {earlier_path, later_path},
                   ordered_json::object());
    std::cout << j.dump() << "\n";
    return 0;
}

int run_url_report(const CommonInputs& in, const std::string& redirect_map_path,
                   const std::string& detections_path) {
    const json config = load_config_file(in.config_path);
    const DomainRules rules = domain_rules(config);
    fs::create_directories(in.out_dir);
    const Corpus corpus = load_inputs(in);

    std::optional<std::unordered_set<uint64_t>> selected;
    if (!detections_path.empty()) selected = load_positive_ids(detections_path);

    std::vector<TweetRecord> tweets;
    for (uint64_t id : corpus.sorted_user_ids()) {
        if (selected && !selected->count(id)) continue;
        const auto& user_tweets = corpus.tweets_for(id);
        tweets.insert(tweets.end(), user_tweets.begin(), user_tweets.end());
    }

    const DomainTable table = domain_table(tweets, rules);
    {
        std::ofstream csv(fs::path(in.out_dir) / "domain_table.csv",
                          std::ios::binary | std::ios::trunc);
        csv << "domain,count\n";
        for (const auto& [domain, count] : sorted_rows(table)) {
            csv << domain << "," << count << "\n";
        }
    }

    std::vector<std::string> urls;
    for (const TweetRecord& t : tweets) {
        urls.insert(urls.end(), t.urls.begin(), t.urls.end());
    }

    RedirectMap map;
    RedirectLoadReport map_report;
    if (!redirect_map_path.empty()) map = load_redirect_map(redirect_map_path, map_report);

    uint64_t resolved_count = 0;
    std::vector<AttributedUrl> attributed;
    for (const TweetRecord& t : tweets) {
        for (const std::string& url : t.urls) {
            auto it = map.mapping.find(url);
            const std::string& final_url = it == map.mapping.end() ? url : it->second;
            if (it != map.mapping.end()) ++resolved_count;
            attributed.push_back({final_url, t.user_id});
        }
    }
    const auto clusters = cluster_campaigns(attributed, rules);

    ordered_json j;
    j["tweet_count"] = tweets.size();
    j["url_count"] = urls.size();
    j["domains"] = table.counts.size();
    j["invalid_urls"] = table.invalid_urls;
    j["uniqueness_ratio"] = uniqueness_ratio(urls);
    j["mention_reach"] = mention_reach(tweets);
    j["resolved_urls"] = resolved_count;
    auto& campaigns = j["campaigns"] = ordered_json::array();
    for (const auto& c : clusters) {
        campaigns.push_back({{"cluster_id", c.cluster_id},
                             {"domain", c.domain},
                             {"url_count", c.url_count},
                             {"bot_count", c.bot_count}});
    }
    write_file(fs::path(in.out_dir) / "url_report.json", j.dump(2) + "\n");

    auto inputs = all_input_paths(in);
    if (!redirect_map_path.empty()) inputs.push_back(redirect_map_path);
    if (!detections_path.empty()) inputs.push_back(detections_path);
    ordered_json echo;
    echo["scoped_to_detections"] = !detections_path.empty();
    write_manifest(in.out_dir, "url-report", inputs, echo);
    std::cout << "urls=" << urls.size() << " campaigns=" << clusters.size() << "\n";
    return 0;
}

int run_stats(const CommonInputs& in, const CLI::App* cmd, int64_t window_s,
              int64_t min_tweets, uint64_t bucket_minutes, bool all_users) {
    const json config = load_config_file(in.config_path);
    BurstyUserCriteria crit = bursty_user_criteria(config);
    BurstyBotDefinition def = bursty_bot_definition(config);
    if (cmd->count("--window-s")) crit.window_s = window_s;
    if (cmd->count("--min-tweets")) crit.min_tweets = min_tweets;
    crit.validate();
    def.validate();

    fs::create_directories(in.out_dir);
    const Corpus corpus = load_inputs(in);

    std::vector<std::pair<UserRecord, UserActivitySummary>> selected;
    for (uint64_t id : corpus.sorted_user_ids()) {
        const UserRecord& user = corpus.users.at(id);
        auto summary = summarize(user, corpus.tweets_for(id));
        if (all_users || classify_bursty_bot(user, summary, def, crit).is_bot) {
            selected.emplace_back(user, std::move(summary));
        }
    }

    const BotnetStatsReport report = botnet_stats(selected);
    write_file(fs::path(in.out_dir) / "botnet_stats.json", report.to_json() + "\n");

    std::vector<UserActivitySummary> summaries;
    summaries.reserve(selected.size());
    for (const auto& [_, s] : selected) summaries.push_back(s);
    const auto hist = lifetime_histogram(summaries, bucket_minutes);
    {
        std::ofstream csv(fs::path(in.out_dir) / "lifetime_histogram.csv",
                          std::ios::binary | std::ios::trunc);
        csv << "bucket,count\n";
        for (const auto& [bucket, count] : hist) csv << bucket << "," << count << "\n";
    }
    ordered_json hist_json = ordered_json::object();
    for (const auto& [bucket, count] : hist) hist_json[std::to_string(bucket)] = count;
    write_file(fs::path(in.out_dir) / "lifetime_histogram.json", hist_json.dump(2) + "\n");

    ordered_json echo = bursty_config_echo(crit, def);
    echo["bucket_minutes"] = bucket_minutes;
    echo["all_users"] = all_users;
    write_manifest(in.out_dir, "stats", all_input_paths(in), echo);
    std::cout << report.to_json() << "\n";
    return 0;
}

int run_evaluate(const std::string& labels_path, const std::string& predictions_path,
                 const std::string& out_dir) {
    fs::create_directories(out_dir);
    const auto truth = load_labels(labels_path);
    const auto predictions = load_labels(predictions_path);
    const auto metrics = evaluate(truth, predictions);
    write_file(fs::path(out_dir) / "metrics.json", metrics_to_json(metrics) + "\n");
    write_manifest(out_dir, "evaluate", {labels_path, predictions_path},
                   ordered_json::object());
    for (const auto& [label, m] : metrics) {
        auto fmt = [](const std::optional<double>& v) {
            return v ? std::to_string(*v) : std::string("undefined");
        };
        std::cout << label << " precision=" << fmt(m.precision)
                  << " recall=" << fmt(m.recall) << " f1=" << fmt(m.f1) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"behavioral botnet detection toolkit"};
    app.require_subcommand(1);

    // synth
    auto* synth_cmd = app.add_subcommand("synth", "generate a labeled synthetic corpus");
    std::string synth_config_path, synth_out = ".";
    uint64_t seed = 0, n_normal = 0, n_bursty = 0, n_starwars = 0;
    synth_cmd->add_option("--config", synth_config_path, "JSON config file");
    synth_cmd->add_option("--out", synth_out, "output directory");
    synth_cmd->add_option("--seed", seed, "generator seed");
    synth_cmd->add_option("--n-normal", n_normal, "organic user count");
    synth_cmd->add_option("--n-bursty", n_bursty, "bursty bot count");
    synth_cmd->add_option("--n-starwars", n_starwars, "star wars bot count");

    // detect-bursty
    auto* bursty_cmd = app.add_subcommand("detect-bursty", "run the bursty-bot detector");
    CommonInputs bursty_in;
    add_corpus_options(bursty_cmd, bursty_in);
    int64_t window_s = 0, min_tweets = 0;
    uint64_t id_low = 0, id_high = 0;
    std::string required_source;
    double content_fraction = 0.0;
    bool explain = false;
    bursty_cmd->add_option("--window-s", window_s, "bursty window in seconds");
    bursty_cmd->add_option("--min-tweets", min_tweets, "bursty minimum tweet count");
    bursty_cmd->add_option("--id-low", id_low, "detector ID range low (inclusive)");
    bursty_cmd->add_option("--id-high", id_high, "detector ID range high (exclusive)");
    bursty_cmd->add_option("--required-source", required_source, "required tweet source");
    bursty_cmd->add_option("--content-fraction", content_fraction,
                           "minimum URL-or-mention tweet fraction");
    bursty_cmd->add_flag("--explain", explain, "include reason codes in detections");

    // detect-starwars
    auto* sw_cmd = app.add_subcommand("detect-starwars", "run the star wars bot detector");
    CommonInputs sw_in;
    add_corpus_options(sw_cmd, sw_in);
    int64_t sw_window_s = 0, sw_min_tweets = 0;
    uint64_t sw_id_low = 0, sw_id_high = 0, sw_max_tweets = 0;
    int64_t sw_max_followers = 0, sw_max_friends = 0;
    std::string sw_source, sw_reference;
    int sw_ngram = 4;
    bool sw_quotation = false, sw_explain = false;
    sw_cmd->add_option("--window-s", sw_window_s, "bursty window in seconds");
    sw_cmd->add_option("--min-tweets", sw_min_tweets, "bursty minimum tweet count");
    sw_cmd->add_option("--id-low", sw_id_low, "detector ID range low (inclusive)");
    sw_cmd->add_option("--id-high", sw_id_high, "detector ID range high (exclusive)");
    sw_cmd->add_option("--required-source", sw_source, "required tweet source");
    sw_cmd->add_option("--max-tweets", sw_max_tweets, "lifetime tweet cap");
    sw_cmd->add_option("--max-followers", sw_max_followers, "follower cap");
    sw_cmd->add_option("--max-friends", sw_max_friends, "friend cap");
    sw_cmd->add_flag("--quotation-check", sw_quotation, "require quotation-matching texts");
    sw_cmd->add_option("--reference-text", sw_reference,
                       "reference text file for the quotation index (default: built-in)");
    sw_cmd->add_option("--ngram", sw_ngram, "quotation word n-gram length");
    sw_cmd->add_flag("--explain", sw_explain, "include reason codes in detections");

    // idspace-hist
    auto* hist_cmd = app.add_subcommand("idspace-hist",
                                        "bin bursty users over the ID space and find spikes");
    CommonInputs hist_in;
    add_corpus_options(hist_cmd, hist_in);
    uint64_t bin_width = 1'000'000, abs_min = 1000, gap_bins = 2;
    double frac_min = 0.05;
    int64_t hist_window_s = 0, hist_min_tweets = 0;
    hist_cmd->add_option("--bin-width", bin_width, "IDs per bin");
    hist_cmd->add_option("--window-s", hist_window_s, "bursty window in seconds");
    hist_cmd->add_option("--min-tweets", hist_min_tweets, "bursty minimum tweet count");
    hist_cmd->add_option("--abs-min", abs_min, "minimum matching count for a spike bin");
    hist_cmd->add_option("--frac-min", frac_min, "minimum matching fraction for a spike bin");
    hist_cmd->add_option("--gap-bins", gap_bins, "merge spikes within this many bins");

    // diff-snapshots
    auto* diff_cmd = app.add_subcommand("diff-snapshots",
                                        "compare two user-ID snapshots");
    std::string earlier_path, later_path, diff_out = ".";
    diff_cmd->add_option("--earlier", earlier_path, "earlier snapshot file")->required();
    diff_cmd->add_option("--later", later_path, "later snapshot file")->required();
    diff_cmd->add_option("--out", diff_out, "output directory");

    // url-report
    auto* url_cmd = app.add_subcommand("url-report", "URL/domain forensics report");
    CommonInputs url_in;
    add_corpus_options(url_cmd, url_in);
    std::string redirect_map_path, detections_path;
    url_cmd->add_option("--redirect-map", redirect_map_path,
                        "offline redirect map (NDJSON short/final rows)");
    url_cmd->add_option("--detections", detections_path,
                        "detections file; restrict the report to positives");

    // stats
    auto* stats_cmd = app.add_subcommand("stats",
                                         "connectivity and content statistics over bots");
    CommonInputs stats_in;
    add_corpus_options(stats_cmd, stats_in);
    int64_t stats_window_s = 0, stats_min_tweets = 0;
    uint64_t bucket_minutes = 1;
    bool all_users = false;
    stats_cmd->add_option("--window-s", stats_window_s, "bursty window in seconds");
    stats_cmd->add_option("--min-tweets", stats_min_tweets, "bursty minimum tweet count");
    stats_cmd->add_option("--bucket-minutes", bucket_minutes, "lifetime histogram bucket");
    stats_cmd->add_flag("--all-users", all_users, "aggregate every user, not only bots");

    // evaluate
    auto* eval_cmd = app.add_subcommand("evaluate", "score predictions against labels");
    std::string labels_path, predictions_path, eval_out = ".";
    eval_cmd->add_option("--labels", labels_path, "ground-truth labels NDJSON")->required();
    eval_cmd->add_option("--predictions", predictions_path, "predicted labels NDJSON")
        ->required();
    eval_cmd->add_option("--out", eval_out, "output directory");

    CLI11_PARSE(app, argc, argv);

    const std::string subcommand = app.get_subcommands().front()->get_name();
    try {
        if (synth_cmd->parsed()) {
            return run_synth(synth_config_path, synth_out, synth_cmd, seed, n_normal,
                             n_bursty, n_starwars);
        }
        if (bursty_cmd->parsed()) {
            return run_detect_bursty(bursty_in, bursty_cmd, window_s, min_tweets, id_low,
                                     id_high, required_source, content_fraction, explain);
        }
        if (sw_cmd->parsed()) {
            return run_detect_starwars(sw_in, sw_cmd, sw_window_s, sw_min_tweets, sw_id_low,
                                       sw_id_high, sw_source, sw_max_tweets, sw_max_followers,
                                       sw_max_friends, sw_quotation, sw_reference, sw_ngram,
                                       sw_explain);
        }
        if (hist_cmd->parsed()) {
            return run_idspace_hist(hist_in, hist_cmd, bin_width, hist_window_s,
                                    hist_min_tweets, abs_min, frac_min, gap_bins);
        }
        if (diff_cmd->parsed()) {
            return run_diff_snapshots(earlier_path, later_path, diff_out);
        }
        if (url_cmd->parsed()) {
            return run_url_report(url_in, redirect_map_path, detections_path);
        }
        if (stats_cmd->parsed()) {
            return run_stats(stats_in, stats_cmd, stats_window_s, stats_min_tweets,
                             bucket_minutes, all_users);
        }
        if (eval_cmd->parsed()) {
            return run_evaluate(labels_path, predictions_path, eval_out);
        }
    } catch (const std::exception& e) {
        ordered_json err;
        err["error"] = {{"subcommand", subcommand}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 1;
    }
    return 2;
}
