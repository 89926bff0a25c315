#include "corepool/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

#include "corepool/allocator.hpp"
#include "corepool/errors.hpp"
#include "corepool/text.hpp"
#include "json.hpp"

namespace corepool {

BoxplotStats boxplot_stats(std::span<const double> samples) {
    if (samples.empty()) {
        throw EmptySampleError("boxplot statistics need at least one sample");
    }
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());

    auto quantile = [&](double q) {
        const double pos = q * static_cast<double>(sorted.size() - 1);
        const std::size_t lo = static_cast<std::size_t>(pos);
        const double frac = pos - static_cast<double>(lo);
        if (lo + 1 >= sorted.size()) return sorted.back();
        return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
    };

    BoxplotStats s;
    s.min = sorted.front();
    s.q1 = quantile(0.25);
    s.median = quantile(0.5);
    s.q3 = quantile(0.75);
    s.max = sorted.back();
    s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) /
             static_cast<double>(sorted.size());
    return s;
}

ReportStats compute_stats(std::span<const TrialResult> trials) {
    auto collect = [&](auto field) {
        std::vector<double> values;
        values.reserve(trials.size());
        for (const TrialResult& t : trials) values.push_back(static_cast<double>(t.*field));
        return boxplot_stats(values);
    };
    ReportStats s;
    s.shared_cores = collect(&TrialResult::shared_cores);
    s.separate_cores = collect(&TrialResult::separate_cores);
    s.shared_watts = collect(&TrialResult::shared_watts);
    s.separate_watts = collect(&TrialResult::separate_watts);
    s.core_savings_pct = collect(&TrialResult::core_savings_pct);
    s.power_savings_pct = collect(&TrialResult::power_savings_pct);
    return s;
}

ComparisonReport run_trials(const WorkloadSpec& spec, const ServerProfile& profile,
                            int n_trials, std::uint64_t base_seed,
                            std::string_view spec_label) {
    if (n_trials < 1) {
        throw DomainError("n_trials must be >= 1, got " + std::to_string(n_trials));
    }
    spec.validate();
    profile.validate();

    ComparisonReport report;
    report.spec_label = std::string(spec_label);
    report.spec = spec;
    report.profile_name = profile.name;
    report.base_seed = base_seed;
    report.trials.reserve(static_cast<std::size_t>(n_trials));

    for (int t = 0; t < n_trials; ++t) {
        const std::uint64_t seed = base_seed + static_cast<std::uint64_t>(t);
        const Workload w = generate_workload(spec, seed);
        const Allocation shared = allocate_shared(w);
        const SeparateAllocation separate = allocate_separate(w);
        const PowerReport shared_power = total_power(shared, profile);
        const PowerReport separate_power = total_power(separate, profile);

        TrialResult trial;
        trial.trial_index = t;
        trial.seed = seed;
        trial.shared_cores = shared.core_count();
        trial.separate_cores = separate.total_cores();
        trial.shared_watts = shared_power.total_watts;
        trial.separate_watts = separate_power.total_watts;
        trial.core_savings_pct =
            savings_percent(trial.shared_cores, trial.separate_cores);
        trial.power_savings_pct = savings_percent(shared_power, separate_power);
        report.trials.push_back(trial);
    }
    report.stats = compute_stats(report.trials);
    return report;
}

namespace {

nlohmann::json stats_to_json(const BoxplotStats& s) {
    return {{"min", s.min}, {"q1", s.q1},   {"median", s.median},
            {"q3", s.q3},   {"max", s.max}, {"mean", s.mean}};
}

BoxplotStats stats_from_json(const nlohmann::json& doc) {
    BoxplotStats s;
    s.min = doc.at("min").get<double>();
    s.q1 = doc.at("q1").get<double>();
    s.median = doc.at("median").get<double>();
    s.q3 = doc.at("q3").get<double>();
    s.max = doc.at("max").get<double>();
    s.mean = doc.at("mean").get<double>();
    return s;
}

}  // namespace

void report_to_csv(const ComparisonReport& r, std::ostream& out) {
    out << "trial,seed,shared_cores,separate_cores,shared_watts,separate_watts,"
           "core_savings_pct,power_savings_pct\n";
    for (const TrialResult& t : r.trials) {
        out << t.trial_index << ',' << t.seed << ',' << t.shared_cores << ','
            << t.separate_cores << ',' << format_double(t.shared_watts) << ','
            << format_double(t.separate_watts) << ',' << format_double(t.core_savings_pct)
            << ',' << format_double(t.power_savings_pct) << '\n';
    }
}

std::string report_to_json(const ComparisonReport& r) {
    nlohmann::json trials = nlohmann::json::array();
    for (const TrialResult& t : r.trials) {
        trials.push_back({{"trial", t.trial_index},
                          {"seed", t.seed},
                          {"shared_cores", t.shared_cores},
                          {"separate_cores", t.separate_cores},
                          {"shared_watts", t.shared_watts},
                          {"separate_watts", t.separate_watts},
                          {"core_savings_pct", t.core_savings_pct},
                          {"power_savings_pct", t.power_savings_pct}});
    }
    nlohmann::json doc{
        {"schema", 1},
        {"spec_label", r.spec_label},
        {"spec", nlohmann::json::parse(workload_spec_to_json(r.spec))},
        {"profile", r.profile_name},
        {"base_seed", r.base_seed},
        {"trials", std::move(trials)},
        {"stats",
         {{"shared_cores", stats_to_json(r.stats.shared_cores)},
          {"separate_cores", stats_to_json(r.stats.separate_cores)},
          {"shared_watts", stats_to_json(r.stats.shared_watts)},
          {"separate_watts", stats_to_json(r.stats.separate_watts)},
          {"core_savings_pct", stats_to_json(r.stats.core_savings_pct)},
          {"power_savings_pct", stats_to_json(r.stats.power_savings_pct)}}}};
    return doc.dump(2) + "\n";
}

ComparisonReport report_from_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid report JSON: ") + e.what());
    }
    try {
        if (doc.at("schema").get<int>() != 1) {
            throw ParseError("unsupported report schema " + doc.at("schema").dump());
        }
        ComparisonReport r;
        r.spec_label = doc.at("spec_label").get<std::string>();
        r.spec = workload_spec_from_json(doc.at("spec").dump());
        r.profile_name = doc.at("profile").get<std::string>();
        r.base_seed = doc.at("base_seed").get<std::uint64_t>();
        for (const auto& entry : doc.at("trials")) {
            TrialResult t;
            t.trial_index = entry.at("trial").get<int>();
            t.seed = entry.at("seed").get<std::uint64_t>();
            t.shared_cores = entry.at("shared_cores").get<int>();
            t.separate_cores = entry.at("separate_cores").get<int>();
            t.shared_watts = entry.at("shared_watts").get<double>();
            t.separate_watts = entry.at("separate_watts").get<double>();
            t.core_savings_pct = entry.at("core_savings_pct").get<double>();
            t.power_savings_pct = entry.at("power_savings_pct").get<double>();
            r.trials.push_back(t);
        }
        const auto& stats = doc.at("stats");
        r.stats.shared_cores = stats_from_json(stats.at("shared_cores"));
        r.stats.separate_cores = stats_from_json(stats.at("separate_cores"));
        r.stats.shared_watts = stats_from_json(stats.at("shared_watts"));
        r.stats.separate_watts = stats_from_json(stats.at("separate_watts"));
        r.stats.core_savings_pct = stats_from_json(stats.at("core_savings_pct"));
        r.stats.power_savings_pct = stats_from_json(stats.at("power_savings_pct"));
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid report JSON: ") + e.what());
    }
}

}  // namespace corepool
