#include "botscan/urlforensics.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <stdexcept>
#include <unordered_set>

#include "json.hpp"

namespace botscan {

namespace {

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

bool valid_host_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' || c == '.';
}

}  // namespace

const DomainRules& default_domain_rules() {
    static const DomainRules rules{{
        "co.uk", "org.uk", "ac.uk", "gov.uk", "co.jp", "co.nz", "co.in",
        "com.au", "com.br", "com.cn", "com.mx",
    }};
    return rules;
}

std::optional<std::string> extract_domain(std::string_view url, const DomainRules& rules) {
    std::string_view rest = url;

    // Optional scheme ("http://", "ftp://", ...); scheme-less URLs start at the host.
    const size_t scheme_pos = rest.find("://");
    if (scheme_pos != std::string_view::npos) {
        const std::string_view scheme = rest.substr(0, scheme_pos);
        if (scheme.empty()) return std::nullopt;
        for (char c : scheme) {
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' &&
                c != '.') {
                return std::nullopt;
            }
        }
        rest = rest.substr(scheme_pos + 3);
    }

    // Host runs until the first path/query/fragment delimiter.
    const size_t host_end = rest.find_first_of("/?#");
    std::string_view authority =
        host_end == std::string_view::npos ? rest : rest.substr(0, host_end);
    const size_t at = authority.rfind('@');  // strip userinfo
    if (at != std::string_view::npos) authority = authority.substr(at + 1);
    const size_t colon = authority.find(':');  // strip port
    if (colon != std::string_view::npos) authority = authority.substr(0, colon);

    std::string host = to_lower(authority);
    if (host.empty() || host.front() == '.' || host.back() == '.') return std::nullopt;
    if (host.find("..") != std::string::npos) return std::nullopt;
    if (host.find('.') == std::string::npos) return std::nullopt;
    for (char c : host) {
        if (!valid_host_char(c)) return std::nullopt;
    }

    std::vector<std::string_view> labels;
    size_t pos = 0;
    while (pos <= host.size()) {
        size_t dot = host.find('.', pos);
        if (dot == std::string::npos) dot = host.size();
        labels.push_back(std::string_view(host).substr(pos, dot - pos));
        pos = dot + 1;
    }

    size_t keep = 2;
    if (labels.size() >= 3) {
        const std::string last_two =
            std::string(labels[labels.size() - 2]) + "." + std::string(labels.back());
        if (rules.multi_label_suffixes.count(last_two)) keep = 3;
    }
    if (labels.size() <= keep) return host;

    std::string domain;
    for (size_t i = labels.size() - keep; i < labels.size(); ++i) {
        if (!domain.empty()) domain.push_back('.');
        domain += labels[i];
    }
    return domain;
}

DomainTable domain_table(std::span<const TweetRecord> tweets, const DomainRules& rules) {
    DomainTable table;
    for (const TweetRecord& t : tweets) {
        for (const std::string& url : t.urls) {
            auto domain = extract_domain(url, rules);
            if (!domain) {
                ++table.invalid_urls;
                continue;
            }
            ++table.counts[*domain];
            ++table.total_urls;
        }
    }
    return table;
}

std::vector<std::pair<std::string, uint64_t>> sorted_rows(const DomainTable& table) {
    std::vector<std::pair<std::string, uint64_t>> rows(table.counts.begin(), table.counts.end());
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
    return rows;
}

double uniqueness_ratio(std::span<const std::string> urls) {
    if (urls.empty()) return 1.0;
    std::unordered_set<std::string_view> distinct(urls.begin(), urls.end());
    return static_cast<double>(distinct.size()) / static_cast<double>(urls.size());
}

RedirectMap load_redirect_map(const std::string& path, RedirectLoadReport& report) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    RedirectMap map;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++report.rows_read;
        auto j = nlohmann::json::parse(line, nullptr, false);
        if (!j.is_object() || !j.contains("short") || !j.contains("final") ||
            !j["short"].is_string() || !j["final"].is_string()) {
            ++report.rows_rejected;
            continue;
        }
        std::string key = j["short"].get<std::string>();
        std::string value = j["final"].get<std::string>();
        if (key.empty() || value.empty()) {
            ++report.rows_rejected;
            continue;
        }
        auto [_, inserted] = map.mapping.emplace(std::move(key), std::move(value));
        if (inserted) {
            ++report.rows_loaded;
        } else {
            ++report.duplicate_keys;
        }
    }
    for (const auto& [_, final_url] : map.mapping) {
        if (map.mapping.count(final_url)) ++report.chained_finals;
    }
    return map;
}

std::vector<ResolvedUrl> resolve(std::span<const std::string> urls, const RedirectMap& map) {
    std::vector<ResolvedUrl> out;
    out.reserve(urls.size());
    for (const std::string& url : urls) {
        auto it = map.mapping.find(url);
        if (it == map.mapping.end()) {
            out.push_back({url, url, false});
        } else {
            out.push_back({url, it->second, true});
        }
    }
    return out;
}

std::vector<CampaignCluster> cluster_campaigns(std::span<const AttributedUrl> urls,
                                               const DomainRules& rules) {
    struct Accum {
        uint64_t url_count = 0;
        std::unordered_set<uint64_t> bots;
    };
    std::map<std::string, Accum> by_domain;
    for (const AttributedUrl& u : urls) {
        auto domain = extract_domain(u.final_url, rules);
        if (!domain) continue;
        Accum& acc = by_domain[*domain];
        ++acc.url_count;
        acc.bots.insert(u.bot_id);
    }

    std::vector<CampaignCluster> clusters;
    clusters.reserve(by_domain.size());
    for (const auto& [domain, acc] : by_domain) {
        clusters.push_back({0, domain, acc.url_count, acc.bots.size()});
    }
    std::sort(clusters.begin(), clusters.end(),
              [](const CampaignCluster& a, const CampaignCluster& b) {
                  return a.url_count != b.url_count ? a.url_count > b.url_count
                                                    : a.domain < b.domain;
              });
    for (size_t i = 0; i < clusters.size(); ++i) clusters[i].cluster_id = i;
    return clusters;
}

uint64_t mention_reach(std::span<const TweetRecord> tweets) {
    std::unordered_set<std::string> targets;
    for (const TweetRecord& t : tweets) {
        for (const std::string& m : t.mentions) targets.insert(to_lower(m));
    }
    return targets.size();
}

}  // namespace botscan
