#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <ostream>
#include <span>
#include <vector>

namespace botscan {

struct IdBin {
    uint64_t total = 0;
    uint64_t matching = 0;
};

// Occupancy of a user-ID predicate over fixed-width ID bins.
struct IdBinHistogram {
    uint64_t bin_width = 1'000'000;
    std::map<uint64_t, IdBin> bins;  // bin_index -> counts; absent bins are empty

    uint64_t total_users() const;
    uint64_t total_matching() const;
};

IdBinHistogram build_histogram(std::span<const uint64_t> user_ids,
                               const std::function<bool(uint64_t)>& predicate,
                               uint64_t bin_width);

// Bin-wise sum; histograms must share bin_width.
IdBinHistogram merge_histograms(const IdBinHistogram& a, const IdBinHistogram& b);

// Contiguous run of anomalous bins. matching_sum covers every bin in
// [bin_start, bin_end]; peak_fraction is the largest per-bin matching/total.
struct SpikeCluster {
    uint64_t bin_start = 0;
    uint64_t bin_end = 0;  // inclusive
    uint64_t matching_sum = 0;
    double peak_fraction = 0.0;
};

// A bin spikes when matching >= abs_min and matching/total >= frac_min.
// Spike bins within gap_bins of each other merge into one cluster. Clusters
// come back sorted by matching_sum descending (ties by bin_start).
std::vector<SpikeCluster> detect_spikes(const IdBinHistogram& h, uint64_t abs_min,
                                        double frac_min, uint64_t gap_bins);

struct SnapshotDiff {
    std::vector<uint64_t> disappeared;  // earlier \ later
    std::vector<uint64_t> persisted;    // earlier ∩ later
    std::vector<uint64_t> appeared;     // later \ earlier
};

// Inputs may be unsorted and may contain duplicates; outputs are sorted
// ascending and duplicate-free.
SnapshotDiff diff_snapshots(std::span<const uint64_t> earlier,
                            std::span<const uint64_t> later);

// bin_index,id_low,id_high,total,matching,fraction, one row per non-empty bin.
void write_histogram_csv(const IdBinHistogram& h, std::ostream& out);

// One user ID per line: plain integers or NDJSON ({"user_id": N} or a bare
// JSON number). Unparseable lines throw std::runtime_error.
std::vector<uint64_t> load_snapshot_ids(const std::string& path);

}  // namespace botscan
