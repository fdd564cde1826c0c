#pragma once

#include "qspread/config.hpp"
#include "qspread/models.hpp"
#include "qspread/records.hpp"
#include "qspread/scrambling.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace qspread {

/// Haar references keyed by HaarCache::key.
using HaarTable = std::map<std::string, HaarReference>;

/// Per-realization records for every realization-level observable in `cfg`.
/// Deterministic in (cfg, r); this is also the replay entry point.
std::vector<ResultRecord> compute_realization(const SweepConfig &cfg, const DisorderRealization &r, const HaarTable &haar);

/// Haar references for every (L, partition) the TMI observables of `cfg` touch.
HaarTable haar_table(const SweepConfig &cfg, HaarCache &cache);

/// Physical time per unit of requested time: 1 with raw_time, else 1 / W.
double time_scale(const SweepConfig &cfg, double delta);

struct RealizationFailure {
    int num_sites = 0;
    double delta = 0.0;
    std::uint64_t index = 0;
    std::string message;
};

struct SweepResult {
    /// Per-realization records followed by summaries, in canonical order.
    std::vector<ResultRecord> records;
    std::vector<RealizationFailure> failures;
    std::size_t tasks = 0;
    /// Realizations taken from cfg.realizations_file instead of sampled.
    std::size_t reused_realizations = 0;
    /// One JSON line per realization (task order).
    std::vector<std::string> realization_lines;

    bool too_many_failures(double threshold) const;
};

/// Canonical record order: observable, model, L, delta, g, partition, time,
/// then realization index with the summary last.
void sort_records(std::vector<ResultRecord> &records);

/// Disorder-averaged summaries of the per-realization records. TMI summaries
/// fold the Haar standard error into their uncertainty.
std::vector<ResultRecord> summarize(const std::vector<ResultRecord> &records, const HaarTable &haar);

/// Runs every (L, delta, realization) task on a worker pool. Failed
/// realizations are listed in `failures` and excluded from the summaries.
SweepResult run_sweep(const SweepConfig &cfg);

/// Writes records (and realizations when requested). Exit code: 0, or 2 when
/// the failure fraction exceeds cfg.failure_threshold.
int write_sweep(const SweepConfig &cfg, const SweepResult &result);

} // namespace qspread
