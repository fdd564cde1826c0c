#include "qspread/config.hpp"

#include "qspread/quench.hpp"
#include "qspread/scrambling.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

namespace qspread {

namespace {

constexpr std::pair<Observable, std::string_view> kObservableNames[] = {
    {Observable::EigenstateEE, "eigenstate-ee"}, {Observable::SgCorrelator, "sg-correlator"}, {Observable::StringOrder, "string-order"},
    {Observable::GapRatio, "gap-ratio"},         {Observable::QuenchEE, "quench-ee"},         {Observable::TmiSeries, "tmi-series"},
    {Observable::TmiSaturation, "tmi-saturation"}, {Observable::HaarRef, "haar-ref"},         {Observable::AlgebraCheck, "algebra-check"},
};

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if(b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s) {
    std::vector<std::string_view> out;
    while(true) {
        const auto pos = s.find(',');
        const auto item = trim(s.substr(0, pos));
        if(!item.empty()) out.push_back(item);
        if(pos == std::string_view::npos) break;
        s.remove_prefix(pos + 1);
    }
    return out;
}

template <class T>
T parse_number(std::string_view key, std::string_view text) {
    text = trim(text);
    T value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if(ec != std::errc{} || ptr != text.data() + text.size())
        throw ConfigError("bad value '" + std::string(text) + "' for " + std::string(key));
    return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
    text = trim(text);
    if(text == "true" || text == "1" || text == "yes") return true;
    if(text == "false" || text == "0" || text == "no") return false;
    throw ConfigError("bad boolean '" + std::string(text) + "' for " + std::string(key));
}

std::vector<double> parse_deltas(std::string_view text) {
    std::vector<double> out;
    for(auto item : split(text)) {
        if(const auto c1 = item.find(':'); c1 != std::string_view::npos) {
            const auto c2 = item.find(':', c1 + 1);
            if(c2 == std::string_view::npos) throw ConfigError("delta range must be start:stop:step");
            const double a = parse_number<double>("delta", item.substr(0, c1));
            const double b = parse_number<double>("delta", item.substr(c1 + 1, c2 - c1 - 1));
            const double step = parse_number<double>("delta", item.substr(c2 + 1));
            if(!(step > 0.0) || !(b >= a)) throw ConfigError("delta range needs step > 0 and stop >= start");
            const auto n = static_cast<long>(std::floor((b - a) / step + 1e-9));
            if(n > 100000) throw ConfigError("delta range too long");
            for(long k = 0; k <= n; ++k) out.push_back(a + static_cast<double>(k) * step);
        } else {
            out.push_back(parse_number<double>("delta", item));
        }
    }
    return out;
}

template <class T>
std::string join(const std::vector<T> &v) {
    std::string out;
    for(std::size_t k = 0; k < v.size(); ++k) {
        if(k) out += ',';
        if constexpr(std::is_same_v<T, double>)
            out += format_double(v[k]);
        else if constexpr(std::is_same_v<T, std::string>)
            out += v[k];
        else
            out += std::to_string(v[k]);
    }
    return out;
}

} // namespace

std::string_view observable_name(Observable o) {
    for(const auto &[obs, name] : kObservableNames)
        if(obs == o) return name;
    return "?";
}

Observable parse_observable(std::string_view name) {
    for(const auto &[obs, n] : kObservableNames)
        if(n == name) return obs;
    throw ConfigError("unknown observable '" + std::string(name) + "'");
}

std::vector<double> TimeGrid::times() const {
    std::vector<double> out;
    if(include_zero) out.push_back(0.0);
    const auto grid = log_time_grid(start, stop, points);
    out.insert(out.end(), grid.begin(), grid.end());
    return out;
}

int SweepConfig::realizations_for(int num_sites) const {
    if(realizations.size() == 1) return realizations.front();
    for(std::size_t k = 0; k < sizes.size(); ++k)
        if(sizes[k] == num_sites) return realizations[k];
    throw ConfigError("no realization count for L=" + std::to_string(num_sites));
}

bool SweepConfig::wants(Observable o) const { return std::find(observables.begin(), observables.end(), o) != observables.end(); }

std::vector<std::string> SweepConfig::partitions_for(int num_sites) const {
    std::vector<std::string> out;
    for(const auto &p : partitions) {
        if(p.starts_with("r-range")) {
            const std::string suffix = p.substr(7);
            for(int r = 2; r <= std::max(2, num_sites / 2 - 1); ++r) out.push_back("r=" + std::to_string(r) + suffix);
        } else {
            out.push_back(p);
        }
    }
    return out;
}

void SweepConfig::validate() const {
    if(sizes.empty()) throw ConfigError("L list is empty");
    if(realizations.size() != 1 && realizations.size() != sizes.size()) throw ConfigError("realizations must have one entry or one per L");
    for(int r : realizations)
        if(r < 1) throw ConfigError("realizations must be >= 1");
    if(deltas.empty()) throw ConfigError("delta grid is empty");
    for(std::size_t k = 0; k < deltas.size(); ++k) {
        if(!std::isfinite(deltas[k])) throw ConfigError("delta grid must be finite");
        if(k > 0 && !(deltas[k] > deltas[k - 1])) throw ConfigError("delta grid must be strictly ascending");
    }
    if(observables.empty()) throw ConfigError("no observables selected");
    for(int n : sizes) {
        ModelParams params{model, n, g, 0.0};
        try {
            params.validate();
        } catch(const std::invalid_argument &e) {
            throw ConfigError(e.what());
        }
    }
    const bool tmi = wants(Observable::TmiSeries) || wants(Observable::TmiSaturation) || wants(Observable::HaarRef);
    if(tmi) {
        if(partitions.empty()) throw ConfigError("TMI observables need at least one partition");
        for(int n : sizes) {
            if(n > 12) throw ConfigError("TMI observables support L <= 12");
            for(const auto &tag : partitions_for(n)) {
                try {
                    (void)Partition::parse(tag, n);
                } catch(const std::exception &e) {
                    throw ConfigError("partition '" + tag + "' at L=" + std::to_string(n) + ": " + e.what());
                }
            }
        }
        if(haar_samples < 2) throw ConfigError("haar_samples must be >= 2");
    }
    if(wants(Observable::QuenchEE)) {
        if(initial_states.empty()) throw ConfigError("quench-ee needs at least one initial state");
        for(int n : sizes)
            for(const auto &tag : initial_states) {
                try {
                    (void)InitialState::parse(tag, n);
                } catch(const std::exception &e) {
                    throw ConfigError("initial state '" + tag + "': " + e.what());
                }
            }
    }
    if(wants(Observable::QuenchEE) || wants(Observable::TmiSeries)) {
        if(time_grid.points < 1) throw ConfigError("time_points must be >= 1");
        if(!(time_grid.start > 0.0) || !(time_grid.stop >= time_grid.start) || !std::isfinite(time_grid.stop))
            throw ConfigError("time grid needs 0 < time_start <= time_stop");
        if(time_grid.points == 1 && time_grid.stop != time_grid.start) throw ConfigError("a single time point needs time_start == time_stop");
    }
    if(wants(Observable::StringOrder) && model != Model::ExtendedCluster) throw ConfigError("string-order is defined for the cluster model");
    for(int n : sizes) {
        if(cut < 0 || cut >= n) throw ConfigError("cut must be in 0..L-1");
        if(sg_distance < 0 || sg_distance >= n) throw ConfigError("sg_distance must be in 0..L-1");
        if(wants(Observable::StringOrder)) {
            const int first = string_first < 0 ? 1 : string_first;
            const int last = string_last < 0 ? n - 2 : string_last;
            if(first < 0 || last >= n || last < first + 3) throw ConfigError("string order endpoints need 0 <= i, j <= L-1, j >= i+3");
        }
    }
    if(window < 1) throw ConfigError("window must be >= 1");
    if(workers < 0) throw ConfigError("workers must be >= 0");
    if(!(failure_threshold >= 0.0 && failure_threshold <= 1.0)) throw ConfigError("failure_threshold must be in [0, 1]");
}

std::string SweepConfig::canonical() const {
    std::vector<std::string> obs;
    for(auto o : observables) obs.emplace_back(observable_name(o));
    std::ostringstream out;
    out << "model = " << model_name(model) << '\n'
        << "L = " << join(sizes) << '\n'
        << "realizations = " << join(realizations) << '\n'
        << "g = " << format_double(g) << '\n'
        << "delta = " << join(deltas) << '\n'
        << "observables = " << join(obs) << '\n'
        << "partitions = " << join(partitions) << '\n'
        << "initial_states = " << join(initial_states) << '\n'
        << "time_start = " << format_double(time_grid.start) << '\n'
        << "time_stop = " << format_double(time_grid.stop) << '\n'
        << "time_points = " << time_grid.points << '\n'
        << "time_zero = " << (time_grid.include_zero ? "true" : "false") << '\n'
        << "raw_time = " << (raw_time ? "true" : "false") << '\n'
        << "seed = " << seed << '\n'
        << "haar_samples = " << haar_samples << '\n'
        << "haar_seed = " << haar_seed << '\n'
        << "cut = " << cut << '\n'
        << "sg_distance = " << sg_distance << '\n'
        << "string_first = " << string_first << '\n'
        << "string_last = " << string_last << '\n'
        << "window = " << window << '\n';
    return out.str();
}

std::string SweepConfig::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for(unsigned char c : canonical()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void apply_setting(SweepConfig &cfg, std::string_view key, std::string_view value) {
    key = trim(key);
    value = trim(value);
    const std::string v(value);
    try {
        if(key == "model") {
            cfg.model = parse_model(value);
        } else if(key == "L") {
            cfg.sizes.clear();
            for(auto item : split(value)) cfg.sizes.push_back(parse_number<int>(key, item));
        } else if(key == "realizations") {
            cfg.realizations.clear();
            for(auto item : split(value)) cfg.realizations.push_back(parse_number<int>(key, item));
        } else if(key == "g") {
            cfg.g = parse_number<double>(key, value);
        } else if(key == "delta") {
            cfg.deltas = parse_deltas(value);
        } else if(key == "observables") {
            cfg.observables.clear();
            for(auto item : split(value)) cfg.observables.push_back(parse_observable(item));
        } else if(key == "partitions") {
            cfg.partitions.clear();
            for(auto item : split(value)) cfg.partitions.emplace_back(item);
        } else if(key == "initial_states") {
            cfg.initial_states.clear();
            for(auto item : split(value)) cfg.initial_states.emplace_back(item);
        } else if(key == "time_start") {
            cfg.time_grid.start = parse_number<double>(key, value);
        } else if(key == "time_stop") {
            cfg.time_grid.stop = parse_number<double>(key, value);
        } else if(key == "time_points") {
            cfg.time_grid.points = parse_number<int>(key, value);
        } else if(key == "time_zero") {
            cfg.time_grid.include_zero = parse_bool(key, value);
        } else if(key == "raw_time") {
            cfg.raw_time = parse_bool(key, value);
        } else if(key == "seed") {
            cfg.seed = parse_number<std::uint64_t>(key, value);
        } else if(key == "output") {
            cfg.output = v;
        } else if(key == "format") {
            cfg.format = parse_format(value);
        } else if(key == "haar_samples") {
            cfg.haar_samples = parse_number<int>(key, value);
        } else if(key == "haar_seed") {
            cfg.haar_seed = parse_number<std::uint64_t>(key, value);
        } else if(key == "haar_cache") {
            cfg.haar_cache = v;
        } else if(key == "realizations_file") {
            cfg.realizations_file = v;
        } else if(key == "save_realizations") {
            cfg.save_realizations = v;
        } else if(key == "cut") {
            cfg.cut = parse_number<int>(key, value);
        } else if(key == "sg_distance") {
            cfg.sg_distance = parse_number<int>(key, value);
        } else if(key == "string_first") {
            cfg.string_first = parse_number<int>(key, value);
        } else if(key == "string_last") {
            cfg.string_last = parse_number<int>(key, value);
        } else if(key == "window") {
            cfg.window = parse_number<int>(key, value);
        } else if(key == "workers") {
            cfg.workers = parse_number<int>(key, value);
        } else if(key == "failure_threshold") {
            cfg.failure_threshold = parse_number<double>(key, value);
        } else {
            throw ConfigError("unknown config key '" + std::string(key) + "'");
        }
    } catch(const ConfigError &) {
        throw;
    } catch(const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
}

void apply_config_text(SweepConfig &cfg, std::string_view text) {
    int line_no = 0;
    while(!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if(const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if(line.empty()) continue;
        const auto eq = line.find('=');
        if(eq == std::string_view::npos) throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        apply_setting(cfg, line.substr(0, eq), line.substr(eq + 1));
    }
}

void apply_config_file(SweepConfig &cfg, const std::string &path) {
    std::ifstream in(path);
    if(!in) throw ConfigError("cannot read config file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    apply_config_text(cfg, buf.str());
}

namespace {

const std::vector<double> kCoarseDeltas{-4, -3, -2, -1, 0, 1, 2, 3, 4};

std::vector<double> fine_deltas() {
    std::vector<double> out;
    for(int k = -8; k <= 8; ++k) out.push_back(0.5 * k);
    return out;
}

SweepConfig static_preset(Model model) {
    SweepConfig c;
    c.model = model;
    c.g = 0.2;
    c.sizes = {8, 9, 10, 11, 12};
    c.realizations = {1000, 750, 500, 300, 150};
    c.deltas = fine_deltas();
    c.observables = {Observable::EigenstateEE, Observable::SgCorrelator, Observable::GapRatio};
    if(model == Model::ExtendedCluster) c.observables.push_back(Observable::StringOrder);
    return c;
}

SweepConfig quench_preset(Model model, double g, std::vector<std::string> inits) {
    SweepConfig c;
    c.model = model;
    c.g = g;
    c.sizes = {12};
    c.realizations = {10};
    c.deltas = kCoarseDeltas;
    c.observables = {Observable::QuenchEE};
    c.initial_states = std::move(inits);
    c.time_grid = {0.1, 1e5, 60, true};
    return c;
}

SweepConfig series_preset(double g) {
    SweepConfig c;
    c.model = Model::RandomIsing;
    c.g = g;
    c.sizes = {12};
    c.realizations = {10};
    c.deltas = {-4, -3, -2, -1, 0, 1, 2, 2.5, 3, 4};
    c.observables = {Observable::TmiSeries};
    c.partitions = {"equal-half"};
    c.time_grid = {0.1, 1e10, 60, true};
    return c;
}

SweepConfig saturation_preset(Model model, double g, std::string partition) {
    SweepConfig c;
    c.model = model;
    c.g = g;
    c.sizes = {8, 10, 12};
    c.realizations = {1000, 500, 100};
    c.deltas = fine_deltas();
    c.observables = {Observable::TmiSaturation};
    c.partitions = {std::move(partition)};
    return c;
}

SweepConfig r_preset(Model model, std::vector<double> deltas) {
    SweepConfig c;
    c.model = model;
    c.g = 0.2;
    c.sizes = {12};
    c.realizations = {100};
    c.deltas = std::move(deltas);
    c.observables = {Observable::TmiSaturation};
    c.partitions = {"r-range"};
    return c;
}

} // namespace

std::vector<std::string> preset_names() {
    return {"fig1", "fig2", "fig4", "fig5", "fig6", "fig6a", "fig6b", "fig7", "fig7a", "fig7b", "fig8", "fig9", "fig9a",
            "fig9b", "fig10", "fig10a", "fig10b", "fig11", "fig11a", "fig11b", "fig12"};
}

SweepConfig preset(std::string_view name) {
    SweepConfig c;
    if(name == "fig1")
        c = static_preset(Model::RandomIsing);
    else if(name == "fig2")
        c = static_preset(Model::ExtendedCluster);
    else if(name == "fig4")
        c = quench_preset(Model::RandomIsing, 0.0, {"Z:all-up"});
    else if(name == "fig5")
        c = quench_preset(Model::RandomIsing, 0.2, {"Z:all-up", "X:all-up"});
    else if(name == "fig6" || name == "fig6a")
        c = series_preset(0.0);
    else if(name == "fig6b")
        c = series_preset(0.2);
    else if(name == "fig7" || name == "fig7b")
        c = saturation_preset(Model::RandomIsing, 0.2, "equal-half");
    else if(name == "fig7a")
        c = saturation_preset(Model::RandomIsing, 0.0, "equal-half");
    else if(name == "fig8")
        c = quench_preset(Model::ExtendedCluster, 0.2, {"X:all-up"});
    else if(name == "fig9" || name == "fig9b")
        c = saturation_preset(Model::ExtendedCluster, 0.2, "equal-half");
    else if(name == "fig9a")
        c = saturation_preset(Model::ExtendedCluster, 0.0, "equal-half");
    else if(name == "fig10" || name == "fig10a")
        c = saturation_preset(Model::RandomIsing, 0.2, "two-site");
    else if(name == "fig10b")
        c = saturation_preset(Model::ExtendedCluster, 0.2, "two-site");
    else if(name == "fig11" || name == "fig11a")
        c = r_preset(Model::RandomIsing, {-4, 4});
    else if(name == "fig11b")
        c = r_preset(Model::ExtendedCluster, {-4});
    else if(name == "fig12") {
        c = series_preset(0.0);
        c.sizes = {8, 10, 12};
        c.realizations = {10};
        c.deltas = {2.0, 2.5};
        c.time_grid = {0.1, 1e13, 76, true};
    } else
        throw ConfigError("unknown preset '" + std::string(name) + "'");
    c.seed = 20220901;
    c.output = std::string(name) + ".csv";
    return c;
}

int resolve_workers(const SweepConfig &cfg) {
    if(cfg.workers > 0) return cfg.workers;
    if(const char *env = std::getenv("QSPREAD_WORKERS")) {
        const std::string_view text(env);
        int n = 0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
        if(ec != std::errc{} || ptr != text.data() + text.size() || n < 1) throw ConfigError("QSPREAD_WORKERS must be a positive integer");
        return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

} // namespace qspread
