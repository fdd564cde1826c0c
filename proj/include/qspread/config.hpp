#pragma once

#include "qspread/models.hpp"
#include "qspread/records.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qspread {

enum class Observable {
    EigenstateEE,
    SgCorrelator,
    StringOrder,
    GapRatio,
    QuenchEE,
    TmiSeries,
    TmiSaturation,
    HaarRef,
    AlgebraCheck,
};

std::string_view observable_name(Observable o);
Observable parse_observable(std::string_view name);

/// Thrown for any invalid configuration value; maps to exit code 1.
class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

struct TimeGrid {
    double start = 0.1;
    double stop = 1e10;
    int points = 60;
    /// Prepend t = 0 to the logarithmic grid.
    bool include_zero = true;

    std::vector<double> times() const;
};

/// Everything a sweep needs. Text form: one `key = value` per line, `#`
/// comments, lists comma separated. Keys:
///
///   model            ising | cluster
///   L                list of chain lengths
///   realizations     list aligned with L, or one value for all
///   g, delta         delta also accepts start:stop:step
///   observables      eigenstate-ee, sg-correlator, string-order, gap-ratio,
///                    quench-ee, tmi-series, tmi-saturation, haar-ref, algebra-check
///   partitions       equal-half, two-site, r=N, r-range (r = 2..L/2-1); ":d-first" suffix
///   initial_states   e.g. Z:all-up, X:all-up, Z:neel
///   time_start, time_stop, time_points, time_zero
///   raw_time         true: t is used as is; false: t is divided by W
///   seed, output, format (csv | jsonl)
///   haar_samples, haar_seed, haar_cache
///   realizations_file, save_realizations
///   cut, sg_distance, string_first, string_last, window (0 = default)
///   workers (0 = QSPREAD_WORKERS or hardware threads), failure_threshold
struct SweepConfig {
    Model model = Model::RandomIsing;
    std::vector<int> sizes{8};
    std::vector<int> realizations{10};
    double g = 0.2;
    std::vector<double> deltas{0.0};
    std::vector<Observable> observables;
    std::vector<std::string> partitions{"equal-half"};
    std::vector<std::string> initial_states{"Z:all-up"};
    TimeGrid time_grid;
    bool raw_time = false;
    std::uint64_t seed = 1;
    std::string output = "results.csv";
    OutputFormat format = OutputFormat::Csv;
    int haar_samples = 20;
    std::uint64_t haar_seed = 20220901;
    std::string haar_cache;
    std::string realizations_file;
    std::string save_realizations;
    int cut = 0;
    int sg_distance = 0;
    int string_first = -1;
    int string_last = -1;
    int window = 16;
    int workers = 0;
    double failure_threshold = 0.01;

    int realizations_for(int num_sites) const;
    bool wants(Observable o) const;
    /// Partition tags for one chain length with "r-range" expanded.
    std::vector<std::string> partitions_for(int num_sites) const;

    /// Throws ConfigError.
    void validate() const;
    /// Stable text form (all keys, fixed order); also the hash input.
    std::string canonical() const;
    /// FNV-1a of canonical(), hex.
    std::string hash() const;
};

/// Sets one key; throws ConfigError for unknown keys or bad values.
void apply_setting(SweepConfig &cfg, std::string_view key, std::string_view value);
void apply_config_text(SweepConfig &cfg, std::string_view text);
void apply_config_file(SweepConfig &cfg, const std::string &path);

/// fig1, fig2, fig4 .. fig12, with a/b variants where a figure has two panels
/// of different parameters (fig6a, fig7a, fig9a, fig10b, fig11b, ...).
SweepConfig preset(std::string_view name);
std::vector<std::string> preset_names();

/// Worker count: cfg.workers if positive, else QSPREAD_WORKERS, else hardware threads.
int resolve_workers(const SweepConfig &cfg);

} // namespace qspread
