#include "botscan/idspace.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace botscan {

uint64_t IdBinHistogram::total_users() const {
    uint64_t sum = 0;
    for (const auto& [_, bin] : bins) sum += bin.total;
    return sum;
}

uint64_t IdBinHistogram::total_matching() const {
    uint64_t sum = 0;
    for (const auto& [_, bin] : bins) sum += bin.matching;
    return sum;
}

IdBinHistogram build_histogram(std::span<const uint64_t> user_ids,
                               const std::function<bool(uint64_t)>& predicate,
                               uint64_t bin_width) {
    if (bin_width < 1) throw std::invalid_argument("bin_width must be >= 1");
    IdBinHistogram h;
    h.bin_width = bin_width;
    for (uint64_t id : user_ids) {
        IdBin& bin = h.bins[id / bin_width];
        ++bin.total;
        if (predicate(id)) ++bin.matching;
    }
    return h;
}

IdBinHistogram merge_histograms(const IdBinHistogram& a, const IdBinHistogram& b) {
    if (a.bin_width != b.bin_width) {
        throw std::invalid_argument("merge_histograms: bin widths differ");
    }
    IdBinHistogram m = a;
    for (const auto& [idx, bin] : b.bins) {
        IdBin& target = m.bins[idx];
        target.total += bin.total;
        target.matching += bin.matching;
    }
    return m;
}

std::vector<SpikeCluster> detect_spikes(const IdBinHistogram& h, uint64_t abs_min,
                                        double frac_min, uint64_t gap_bins) {
    std::vector<uint64_t> spike_bins;
    for (const auto& [idx, bin] : h.bins) {
        if (bin.matching < abs_min || bin.total == 0) continue;
        const double frac =
            static_cast<double>(bin.matching) / static_cast<double>(bin.total);
        if (frac >= frac_min) spike_bins.push_back(idx);
    }

    std::vector<SpikeCluster> clusters;
    for (size_t i = 0; i < spike_bins.size();) {
        size_t j = i;
        while (j + 1 < spike_bins.size() && spike_bins[j + 1] - spike_bins[j] <= gap_bins) ++j;
        SpikeCluster c;
        c.bin_start = spike_bins[i];
        c.bin_end = spike_bins[j];
        auto it = h.bins.lower_bound(c.bin_start);
        auto end = h.bins.upper_bound(c.bin_end);
        for (; it != end; ++it) {
            c.matching_sum += it->second.matching;
            if (it->second.total > 0) {
                const double frac = static_cast<double>(it->second.matching) /
                                    static_cast<double>(it->second.total);
                c.peak_fraction = std::max(c.peak_fraction, frac);
            }
        }
        clusters.push_back(c);
        i = j + 1;
    }

    std::sort(clusters.begin(), clusters.end(), [](const SpikeCluster& a, const SpikeCluster& b) {
        return a.matching_sum != b.matching_sum ? a.matching_sum > b.matching_sum
                                                : a.bin_start < b.bin_start;
    });
    return clusters;
}

SnapshotDiff diff_snapshots(std::span<const uint64_t> earlier,
                            std::span<const uint64_t> later) {
    std::set<uint64_t> a(earlier.begin(), earlier.end());
    std::set<uint64_t> b(later.begin(), later.end());
    SnapshotDiff d;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(d.disappeared));
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::back_inserter(d.persisted));
    std::set_difference(b.begin(), b.end(), a.begin(), a.end(),
                        std::back_inserter(d.appeared));
    return d;
}

void write_histogram_csv(const IdBinHistogram& h, std::ostream& out) {
    out << "bin_index,id_low,id_high,total,matching,fraction\n";
    char frac[32];
    for (const auto& [idx, bin] : h.bins) {
        const double fraction =
            bin.total == 0 ? 0.0
                           : static_cast<double>(bin.matching) / static_cast<double>(bin.total);
        std::snprintf(frac, sizeof(frac), "%.6f", fraction);
        out << idx << ',' << idx * h.bin_width << ',' << (idx + 1) * h.bin_width << ','
            << bin.total << ',' << bin.matching << ',' << frac << '\n';
    }
}

std::vector<uint64_t> load_snapshot_ids(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<uint64_t> ids;
    std::string line;
    uint64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        // Trim ASCII whitespace; skip blank lines.
        size_t begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        size_t end = line.find_last_not_of(" \t\r");
        std::string_view body(line.data() + begin, end - begin + 1);

        uint64_t id = 0;
        bool parsed = false;
        if (body.find_first_not_of("0123456789") == std::string_view::npos) {
            try {
                id = std::stoull(std::string(body));
                parsed = true;
            } catch (const std::out_of_range&) {
                parsed = false;
            }
        } else {
            auto j = nlohmann::json::parse(body, nullptr, false);
            if (j.is_object() && j.contains("user_id") && j["user_id"].is_number_integer() &&
                j["user_id"].get<int64_t>() >= 0) {
                id = j["user_id"].get<uint64_t>();
                parsed = true;
            }
        }
        if (!parsed) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": not a user ID or {\"user_id\": N} row");
        }
        ids.push_back(id);
    }
    return ids;
}

}  // namespace botscan
