#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qspread {

/// One observable value with everything needed to regenerate it.
///
/// `realization` is empty for disorder-averaged summaries. `partition` holds
/// the TMI partition tag, the initial-state tag for quench series, or the
/// site label for algebra checks.
struct ResultRecord {
    std::string observable;
    std::string model;
    int num_sites = 0;
    double g = 0.0;
    double delta = 0.0;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> realization;
    std::string partition;
    std::optional<double> time;
    double value = 0.0;
    std::optional<double> standard_error;
    /// Summaries: number of member records. Per-realization TMI: raw I_3.
    std::optional<std::uint64_t> samples;
    std::optional<double> raw;

    friend bool operator==(const ResultRecord &, const ResultRecord &) = default;
};

enum class OutputFormat { Csv, JsonLines };

OutputFormat parse_format(std::string_view name);

inline constexpr std::string_view kCsvHeader = "observable,model,L,g,delta,seed,realization,partition,time,value,stderr";
inline constexpr std::string_view kToolVersion = "0.1.0";

/// Shortest decimal that round-trips.
std::string format_double(double x);

std::string to_csv_line(const ResultRecord &r);
std::string to_json_line(const ResultRecord &r);
ResultRecord record_from_json_line(std::string_view line);

/// Writes `records` to `path` and a sidecar `<path>.meta.json` holding the
/// config hash and tool version. Throws std::runtime_error on I/O failure.
void write_results(const std::vector<ResultRecord> &records, const std::string &path, OutputFormat format, std::string_view config_hash);

std::vector<ResultRecord> read_json_lines(const std::string &path);

} // namespace qspread
