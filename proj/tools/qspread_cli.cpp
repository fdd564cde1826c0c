#include "qspread/config.hpp"
#include "qspread/sweep.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <map>

using namespace qspread;

namespace {

struct Options {
    std::string preset;
    std::string config;
    std::vector<std::string> sets;
    std::map<std::string, std::string> direct;
};

const std::map<std::string, std::vector<Observable>> kClasses = {
    {"spectrum", {Observable::EigenstateEE, Observable::SgCorrelator, Observable::StringOrder, Observable::GapRatio}},
    {"quench", {Observable::QuenchEE}},
    {"tmi", {Observable::TmiSeries, Observable::TmiSaturation}},
    {"haar", {Observable::HaarRef}},
    {"algebra", {Observable::AlgebraCheck}},
};

void add_options(CLI::App *cmd, Options &opt) {
    cmd->add_option("--preset", opt.preset, "Figure preset")->check(CLI::IsMember(preset_names()));
    cmd->add_option("--config", opt.config, "key = value config file")->check(CLI::ExistingFile);
    cmd->add_option("--set", opt.sets, "Override one config key, key=value");
    const std::pair<const char *, const char *> flags[] = {
        {"model", "ising | cluster"},
        {"L", "Chain lengths, comma separated"},
        {"realizations", "Realizations per L"},
        {"g", "Interaction strength"},
        {"delta", "Delta grid: list or start:stop:step"},
        {"observables", "Observable list"},
        {"partitions", "TMI partitions"},
        {"initial_states", "Quench initial states"},
        {"seed", "Master seed"},
        {"output", "Output path"},
        {"format", "csv | jsonl"},
        {"workers", "Worker threads"},
        {"haar_cache", "Haar cache file"},
        {"realizations_file", "Reuse stored realizations"},
        {"save_realizations", "Store sampled realizations"},
        {"time_start", "First log-grid time"},
        {"time_stop", "Last log-grid time"},
        {"time_points", "Log-grid points"},
    };
    for(const auto &[key, help] : flags) {
        std::string name = "--" + std::string(key);
        for(auto &c : name)
            if(c == '_') c = '-';
        cmd->add_option_function<std::string>(name, [&opt, k = std::string(key)](const std::string &v) { opt.direct[k] = v; }, help);
    }
    cmd->add_flag_function("--raw-time", [&opt](std::int64_t) { opt.direct["raw_time"] = "true"; }, "Use t without dividing by W");
}

SweepConfig build_config(const std::string &command, const Options &opt) {
    SweepConfig cfg = opt.preset.empty() ? SweepConfig{} : preset(opt.preset);
    if(!opt.config.empty()) apply_config_file(cfg, opt.config);
    for(const auto &[k, v] : opt.direct) apply_setting(cfg, k, v);
    for(const auto &kv : opt.sets) {
        const auto eq = kv.find('=');
        if(eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
        apply_setting(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if(const auto it = kClasses.find(command); it != kClasses.end()) {
        std::vector<Observable> kept;
        for(auto o : cfg.observables)
            if(std::find(it->second.begin(), it->second.end(), o) != it->second.end()) kept.push_back(o);
        if(kept.empty()) {
            if(command == "spectrum") {
                kept = {Observable::EigenstateEE, Observable::SgCorrelator, Observable::GapRatio};
                if(cfg.model == Model::ExtendedCluster) kept.push_back(Observable::StringOrder);
            } else if(command == "tmi") {
                kept = {Observable::TmiSaturation};
            } else {
                kept = it->second;
            }
        }
        cfg.observables = kept;
    }
    return cfg;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Disordered spin chain entanglement and scrambling sweeps"};
    app.require_subcommand(1);
    Options opt;
    const std::pair<const char *, const char *> commands[] = {
        {"spectrum", "Eigenstate entanglement, order parameters and gap ratio"},
        {"quench", "Entanglement growth after a product-state quench"},
        {"tmi", "Tripartite mutual information series and saturation values"},
        {"haar", "Haar-random reference TMI"},
        {"algebra", "Cluster operator algebra residuals"},
        {"sweep", "Run every observable of a config or preset"},
    };
    for(const auto &[name, help] : commands) add_options(app.add_subcommand(name, help), opt);

    try {
        app.parse(argc, argv);
    } catch(const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    SweepConfig cfg;
    try {
        cfg = build_config(command, opt);
        cfg.validate();
    } catch(const std::invalid_argument &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    }

    try {
        const SweepResult result = run_sweep(cfg);
        for(const auto &f : result.failures)
            std::cerr << "realization failed: L=" << f.num_sites << " delta=" << f.delta << " index=" << f.index << ": " << f.message << '\n';
        const int code = write_sweep(cfg, result);
        std::cerr << result.records.size() << " records written to " << cfg.output;
        if(result.reused_realizations) std::cerr << " (" << result.reused_realizations << " stored realizations reused)";
        std::cerr << '\n';
        if(code == 2) std::cerr << result.failures.size() << " of " << result.tasks << " realizations failed\n";
        return code;
    } catch(const ConfigError &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch(const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
