#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "botscan/records.hpp"

namespace botscan {

// Registrable-domain extraction keeps the host's last two labels, or three
// when the last two form a known multi-label suffix (co.uk and friends).
// No public-suffix database; the suffix list is configurable.
struct DomainRules {
    std::set<std::string> multi_label_suffixes;
};

const DomainRules& default_domain_rules();

// Lowercased registrable domain, scheme/port/path stripped. nullopt when the
// URL has no extractable host.
std::optional<std::string> extract_domain(std::string_view url,
                                          const DomainRules& rules = default_domain_rules());

struct DomainTable {
    std::map<std::string, uint64_t> counts;  // registrable domain -> occurrences
    uint64_t total_urls = 0;    // occurrences with an extractable domain; == sum of counts
    uint64_t invalid_urls = 0;  // occurrences that failed extraction
};

// Every URL occurrence counts; a tweet with two links contributes two.
DomainTable domain_table(std::span<const TweetRecord> tweets,
                         const DomainRules& rules = default_domain_rules());

// Rows sorted by count descending, then domain ascending.
std::vector<std::pair<std::string, uint64_t>> sorted_rows(const DomainTable& table);

// |distinct| / |total| under exact string comparison; empty input is 1.0.
double uniqueness_ratio(std::span<const std::string> urls);

// Offline, pre-flattened short-URL -> final-URL association.
struct RedirectMap {
    std::unordered_map<std::string, std::string> mapping;
};

struct RedirectLoadReport {
    uint64_t rows_read = 0;
    uint64_t rows_loaded = 0;
    uint64_t rows_rejected = 0;
    uint64_t duplicate_keys = 0;  // first mapping kept
    uint64_t chained_finals = 0;  // final URL is itself a key; map not flattened
};

// NDJSON rows {"short": "...", "final": "..."}. Bad rows are counted, not fatal.
RedirectMap load_redirect_map(const std::string& path, RedirectLoadReport& report);

struct ResolvedUrl {
    std::string original;
    std::string final_url;  // == original when unmapped
    bool resolved = false;
};

// Applies the map once per URL; never drops or invents entries.
std::vector<ResolvedUrl> resolve(std::span<const std::string> urls, const RedirectMap& map);

struct AttributedUrl {
    std::string final_url;
    uint64_t bot_id = 0;
};

struct CampaignCluster {
    uint64_t cluster_id = 0;
    std::string domain;  // final registrable domain
    uint64_t url_count = 0;
    uint64_t bot_count = 0;  // distinct bots
};

// One cluster per final registrable domain; URLs without a valid domain are
// skipped. Sorted by url_count descending (ties by domain), ids assigned in
// that order.
std::vector<CampaignCluster> cluster_campaigns(std::span<const AttributedUrl> urls,
                                               const DomainRules& rules = default_domain_rules());

// Distinct @-mention targets across all tweets, case-insensitive.
uint64_t mention_reach(std::span<const TweetRecord> tweets);

}  // namespace botscan
