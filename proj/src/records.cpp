#include "qspread/records.hpp"

#include "json.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace qspread {

using nlohmann::json;

OutputFormat parse_format(std::string_view name) {
    if(name == "csv") return OutputFormat::Csv;
    if(name == "jsonl" || name == "json-lines") return OutputFormat::JsonLines;
    throw std::invalid_argument("unknown output format '" + std::string(name) + "'");
}

std::string format_double(double x) {
    if(std::isnan(x)) return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return {buf, res.ptr};
}

namespace {

std::string csv_field(std::string_view s) {
    if(s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for(char c : s) {
        if(c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace

std::string to_csv_line(const ResultRecord &r) {
    std::string line;
    line += csv_field(r.observable) + ',';
    line += csv_field(r.model) + ',';
    line += std::to_string(r.num_sites) + ',';
    line += format_double(r.g) + ',';
    line += format_double(r.delta) + ',';
    line += std::to_string(r.seed) + ',';
    line += (r.realization ? std::to_string(*r.realization) : std::string{}) + ',';
    line += csv_field(r.partition) + ',';
    line += (r.time ? format_double(*r.time) : std::string{}) + ',';
    line += format_double(r.value) + ',';
    line += r.standard_error ? format_double(*r.standard_error) : std::string{};
    return line;
}

std::string to_json_line(const ResultRecord &r) {
    json j;
    j["observable"] = r.observable;
    j["model"] = r.model;
    j["L"] = r.num_sites;
    j["g"] = r.g;
    j["delta"] = r.delta;
    j["seed"] = r.seed;
    j["realization"] = r.realization ? json(*r.realization) : json(nullptr);
    j["partition"] = r.partition;
    j["time"] = r.time ? json(*r.time) : json(nullptr);
    j["value"] = r.value;
    j["stderr"] = r.standard_error ? json(*r.standard_error) : json(nullptr);
    if(r.samples) j["samples"] = *r.samples;
    if(r.raw) j["raw"] = *r.raw;
    return j.dump();
}

ResultRecord record_from_json_line(std::string_view line) {
    const json j = json::parse(line);
    ResultRecord r;
    r.observable = j.at("observable").get<std::string>();
    r.model = j.at("model").get<std::string>();
    r.num_sites = j.at("L").get<int>();
    r.g = j.at("g").get<double>();
    r.delta = j.at("delta").get<double>();
    r.seed = j.at("seed").get<std::uint64_t>();
    if(!j.at("realization").is_null()) r.realization = j.at("realization").get<std::uint64_t>();
    r.partition = j.at("partition").get<std::string>();
    if(!j.at("time").is_null()) r.time = j.at("time").get<double>();
    r.value = j.at("value").get<double>();
    if(!j.at("stderr").is_null()) r.standard_error = j.at("stderr").get<double>();
    if(j.contains("samples")) r.samples = j.at("samples").get<std::uint64_t>();
    if(j.contains("raw")) r.raw = j.at("raw").get<double>();
    return r;
}

void write_results(const std::vector<ResultRecord> &records, const std::string &path, OutputFormat format, std::string_view config_hash) {
    {
        std::ofstream out(path, std::ios::binary);
        if(!out) throw std::runtime_error("cannot open " + path + " for writing");
        if(format == OutputFormat::Csv) {
            out << kCsvHeader << '\n';
            for(const auto &r : records) out << to_csv_line(r) << '\n';
        } else {
            for(const auto &r : records) out << to_json_line(r) << '\n';
        }
        if(!out) throw std::runtime_error("write to " + path + " failed");
    }
    json meta;
    meta["config_hash"] = std::string(config_hash);
    meta["tool_version"] = std::string(kToolVersion);
    meta["records"] = records.size();
    meta["format"] = format == OutputFormat::Csv ? "csv" : "jsonl";
    std::ofstream out(path + ".meta.json", std::ios::binary);
    if(!out) throw std::runtime_error("cannot write metadata for " + path);
    out << meta.dump(2) << '\n';
    if(!out) throw std::runtime_error("metadata write for " + path + " failed");
}

std::vector<ResultRecord> read_json_lines(const std::string &path) {
    std::ifstream in(path);
    if(!in) throw std::runtime_error("cannot open " + path);
    std::vector<ResultRecord> out;
    std::string line;
    while(std::getline(in, line))
        if(!line.empty()) out.push_back(record_from_json_line(line));
    return out;
}

} // namespace qspread
