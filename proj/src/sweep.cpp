#include "qspread/sweep.hpp"

#include "qspread/algebra.hpp"
#include "qspread/observables.hpp"
#include "qspread/quench.hpp"
#include "qspread/spectrum.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <thread>
#include <tuple>

namespace qspread {

double time_scale(const SweepConfig &cfg, double delta) {
    if(cfg.raw_time) return 1.0;
    return 1.0 / ModelParams{cfg.model, 2, cfg.g, delta}.disorder_width();
}

HaarTable haar_table(const SweepConfig &cfg, HaarCache &cache) {
    HaarTable table;
    const bool needed = cfg.wants(Observable::TmiSeries) || cfg.wants(Observable::TmiSaturation) || cfg.wants(Observable::HaarRef);
    if(!needed) return table;
    for(int n : cfg.sizes)
        for(const auto &tag : cfg.partitions_for(n)) {
            const Partition part = Partition::parse(tag, n);
            const auto key = HaarCache::key(part);
            if(!table.contains(key)) table[key] = cache.get(part, cfg.haar_samples, cfg.haar_seed);
        }
    return table;
}

std::vector<ResultRecord> compute_realization(const SweepConfig &cfg, const DisorderRealization &r, const HaarTable &haar) {
    const int n = r.num_sites;
    const ModelParams params{cfg.model, n, cfg.g, r.delta};
    const Spectrum s = diagonalize(build_hamiltonian(params, r), "L=" + std::to_string(n) + " delta=" + format_double(r.delta) +
                                                                     " seed=" + std::to_string(r.seed) + " index=" + std::to_string(r.index));
    const double scale = time_scale(cfg, r.delta);
    const int cut = cfg.cut > 0 ? cfg.cut : n / 2;

    std::vector<ResultRecord> out;
    auto emit = [&](Observable o, std::string partition, std::optional<double> time, double value) -> ResultRecord & {
        ResultRecord rec;
        rec.observable = std::string(observable_name(o));
        rec.model = std::string(model_name(cfg.model));
        rec.num_sites = n;
        rec.g = cfg.g;
        rec.delta = r.delta;
        rec.seed = r.seed;
        rec.realization = r.index;
        rec.partition = std::move(partition);
        rec.time = time;
        rec.value = value;
        out.push_back(std::move(rec));
        return out.back();
    };

    const StateWindow mid = mid_spectrum_window(s, cfg.window);
    if(cfg.wants(Observable::EigenstateEE)) emit(Observable::EigenstateEE, {}, {}, eigenstate_half_chain_ee(s, cut).mean);
    if(cfg.wants(Observable::SgCorrelator)) {
        const int dist = cfg.sg_distance > 0 ? cfg.sg_distance : n / 2;
        emit(Observable::SgCorrelator, {}, {}, spin_glass_correlator(s, mid, dist).mean);
    }
    if(cfg.wants(Observable::StringOrder)) {
        const int first = cfg.string_first < 0 ? 1 : cfg.string_first;
        const int last = cfg.string_last < 0 ? n - 2 : cfg.string_last;
        emit(Observable::StringOrder, {}, {}, string_order(s, mid, first, last).phi);
    }
    if(cfg.wants(Observable::GapRatio)) emit(Observable::GapRatio, {}, {}, sector_gap_ratio(s));

    if(cfg.wants(Observable::QuenchEE)) {
        const auto times = cfg.time_grid.times();
        for(const auto &tag : cfg.initial_states) {
            const auto init = InitialState::parse(tag, n);
            const auto series = quench_ee_series(s, product_state(init), times, cut, scale, init.tag());
            for(std::size_t k = 0; k < times.size(); ++k) emit(Observable::QuenchEE, "init=" + init.tag(), times[k], series.values[k]);
        }
    }

    const bool series = cfg.wants(Observable::TmiSeries);
    const bool saturation = cfg.wants(Observable::TmiSaturation);
    if(series || saturation) {
        std::vector<Partition> parts;
        std::vector<double> means;
        for(const auto &tag : cfg.partitions_for(n)) {
            parts.push_back(Partition::parse(tag, n));
            const auto it = haar.find(HaarCache::key(parts.back()));
            if(it == haar.end()) throw std::logic_error("missing Haar reference for " + tag);
            means.push_back(it->second.mean);
        }
        if(series) {
            const auto results = tmi_series(s, parts, cfg.time_grid.times(), means, scale);
            for(const auto &res : results) emit(Observable::TmiSeries, res.partition, res.time, res.i3_normalized).raw = res.i3;
        }
        if(saturation) {
            const auto values = saturation_tmi(s, parts, means, scale);
            for(std::size_t p = 0; p < parts.size(); ++p)
                emit(Observable::TmiSaturation, parts[p].tag(), {}, values[p].i3_normalized).raw = values[p].i3;
        }
    }
    return out;
}

namespace {

auto sort_key(const ResultRecord &r) {
    const double time = r.time ? *r.time : -std::numeric_limits<double>::infinity();
    const auto real = r.realization ? std::make_pair(0, *r.realization) : std::make_pair(1, std::uint64_t{0});
    return std::make_tuple(std::cref(r.observable), std::cref(r.model), r.num_sites, r.delta, r.g, std::cref(r.partition), time, real);
}

bool same_group(const ResultRecord &a, const ResultRecord &b) {
    return a.observable == b.observable && a.model == b.model && a.num_sites == b.num_sites && a.delta == b.delta && a.g == b.g &&
           a.partition == b.partition && a.time == b.time;
}

bool is_tmi(const std::string &observable) {
    return observable == observable_name(Observable::TmiSeries) || observable == observable_name(Observable::TmiSaturation);
}

} // namespace

void sort_records(std::vector<ResultRecord> &records) {
    std::stable_sort(records.begin(), records.end(), [](const ResultRecord &a, const ResultRecord &b) { return sort_key(a) < sort_key(b); });
}

std::vector<ResultRecord> summarize(const std::vector<ResultRecord> &records, const HaarTable &haar) {
    std::vector<ResultRecord> members;
    for(const auto &r : records)
        if(r.realization) members.push_back(r);
    sort_records(members);

    std::vector<ResultRecord> out;
    for(std::size_t begin = 0; begin < members.size();) {
        std::size_t end = begin + 1;
        while(end < members.size() && same_group(members[begin], members[end])) ++end;
        const auto count = static_cast<double>(end - begin);
        double sum = 0.0, raw_sum = 0.0;
        bool has_raw = true;
        for(std::size_t k = begin; k < end; ++k) {
            sum += members[k].value;
            has_raw = has_raw && members[k].raw.has_value();
            if(members[k].raw) raw_sum += *members[k].raw;
        }
        ResultRecord summary = members[begin];
        summary.realization.reset();
        summary.value = sum / count;
        summary.samples = end - begin;
        summary.raw = has_raw ? std::optional<double>(raw_sum / count) : std::nullopt;
        summary.standard_error.reset();
        if(end - begin >= 2) {
            double var = 0.0;
            for(std::size_t k = begin; k < end; ++k) var += (members[k].value - summary.value) * (members[k].value - summary.value);
            double se2 = var / (count - 1.0) / count;
            if(is_tmi(summary.observable)) {
                const auto part = Partition::parse(summary.partition, summary.num_sites);
                if(const auto it = haar.find(HaarCache::key(part)); it != haar.end() && it->second.mean != 0.0) {
                    const double rel = it->second.standard_error / it->second.mean;
                    se2 += summary.value * summary.value * rel * rel;
                }
            }
            summary.standard_error = std::sqrt(se2);
        }
        out.push_back(std::move(summary));
        begin = end;
    }
    return out;
}

namespace {

using StoreKey = std::tuple<int, double, std::uint64_t, std::uint64_t>;

std::map<StoreKey, DisorderRealization> load_store(const SweepConfig &cfg) {
    std::map<StoreKey, DisorderRealization> store;
    if(cfg.realizations_file.empty()) return store;
    std::ifstream in(cfg.realizations_file);
    if(!in) throw std::runtime_error("cannot open " + cfg.realizations_file);
    std::string line;
    while(std::getline(in, line)) {
        if(line.empty()) continue;
        auto [params, r] = realization_from_json(line);
        if(params.model != cfg.model) continue;
        store[{r.num_sites, r.delta, r.seed, r.index}] = std::move(r);
    }
    return store;
}

struct Task {
    int num_sites;
    double delta;
    std::uint64_t index;
};

struct TaskOutput {
    std::vector<ResultRecord> records;
    std::string realization_line;
    std::optional<std::string> error;
    bool reused = false;
};

ResultRecord global_record(const SweepConfig &cfg, Observable o, std::string model, int n, std::string partition, double value) {
    ResultRecord r;
    r.observable = std::string(observable_name(o));
    r.model = std::move(model);
    r.num_sites = n;
    r.g = 0.0;
    r.delta = 0.0;
    r.seed = o == Observable::HaarRef ? cfg.haar_seed : 0;
    r.partition = std::move(partition);
    r.value = value;
    return r;
}

bool per_realization(const SweepConfig &cfg) {
    for(auto o : cfg.observables)
        if(o != Observable::HaarRef && o != Observable::AlgebraCheck) return true;
    return false;
}

} // namespace

bool SweepResult::too_many_failures(double threshold) const {
    if(tasks == 0) return false;
    return static_cast<double>(failures.size()) > threshold * static_cast<double>(tasks);
}

SweepResult run_sweep(const SweepConfig &cfg) {
    cfg.validate();
    HaarCache cache(cfg.haar_cache);
    const HaarTable haar = haar_table(cfg, cache);
    const auto store = load_store(cfg);

    SweepResult result;
    std::vector<ResultRecord> records;

    if(cfg.wants(Observable::HaarRef)) {
        for(int n : cfg.sizes)
            for(const auto &tag : cfg.partitions_for(n)) {
                const auto &h = haar.at(HaarCache::key(Partition::parse(tag, n)));
                auto rec = global_record(cfg, Observable::HaarRef, "haar", n, Partition::parse(tag, n).tag(), h.mean);
                rec.standard_error = h.standard_error;
                rec.samples = static_cast<std::uint64_t>(h.n_samples);
                records.push_back(std::move(rec));
            }
    }
    if(cfg.wants(Observable::AlgebraCheck)) {
        for(int n : cfg.sizes)
            for(int site = 1; site <= n - 2; ++site)
                records.push_back(global_record(cfg, Observable::AlgebraCheck, "algebra", n, "site=" + std::to_string(site),
                                                verify_cluster_algebra(n, site).max_residual()));
    }

    std::vector<Task> tasks;
    if(per_realization(cfg))
        for(int n : cfg.sizes)
            for(double delta : cfg.deltas)
                for(int k = 0; k < cfg.realizations_for(n); ++k) tasks.push_back({n, delta, static_cast<std::uint64_t>(k)});
    result.tasks = tasks.size();

    std::vector<TaskOutput> outputs(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for(std::size_t t = next++; t < tasks.size(); t = next++) {
            const Task &task = tasks[t];
            TaskOutput &slot = outputs[t];
            const ModelParams params{cfg.model, task.num_sites, cfg.g, task.delta};
            DisorderRealization r;
            if(const auto it = store.find({task.num_sites, task.delta, cfg.seed, task.index}); it != store.end()) {
                r = it->second;
                slot.reused = true;
            } else {
                r = sample_realization(params, cfg.seed, task.index);
            }
            slot.realization_line = realization_to_json(params, r);
            try {
                slot.records = compute_realization(cfg, r, haar);
            } catch(const std::exception &e) {
                slot.records.clear();
                slot.error = e.what();
            }
        }
    };
    const int n_workers = std::min<int>(resolve_workers(cfg), static_cast<int>(std::max<std::size_t>(tasks.size(), 1)));
    if(n_workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for(int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    }

    for(std::size_t t = 0; t < tasks.size(); ++t) {
        auto &slot = outputs[t];
        result.realization_lines.push_back(std::move(slot.realization_line));
        if(slot.reused) ++result.reused_realizations;
        if(slot.error) {
            result.failures.push_back({tasks[t].num_sites, tasks[t].delta, tasks[t].index, *slot.error});
            continue;
        }
        for(auto &rec : slot.records) records.push_back(std::move(rec));
    }

    auto summaries = summarize(records, haar);
    records.insert(records.end(), std::make_move_iterator(summaries.begin()), std::make_move_iterator(summaries.end()));
    sort_records(records);
    result.records = std::move(records);
    return result;
}

int write_sweep(const SweepConfig &cfg, const SweepResult &result) {
    write_results(result.records, cfg.output, cfg.format, cfg.hash());
    if(!cfg.save_realizations.empty()) {
        std::ofstream out(cfg.save_realizations, std::ios::binary);
        if(!out) throw std::runtime_error("cannot open " + cfg.save_realizations + " for writing");
        for(const auto &line : result.realization_lines) out << line << '\n';
        if(!out) throw std::runtime_error("write to " + cfg.save_realizations + " failed");
    }
    return result.too_many_failures(cfg.failure_threshold) ? 2 : 0;
}

} // namespace qspread
