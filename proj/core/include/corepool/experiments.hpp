#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "corepool/power.hpp"
#include "corepool/workload.hpp"

namespace corepool {

struct TrialResult {
    int trial_index = 0;
    std::uint64_t seed = 0;
    int shared_cores = 0;
    int separate_cores = 0;
    double shared_watts = 0.0;
    double separate_watts = 0.0;
    double core_savings_pct = 0.0;
    double power_savings_pct = 0.0;

    bool operator==(const TrialResult&) const = default;
};

struct BoxplotStats {
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double max = 0.0;
    double mean = 0.0;

    bool operator==(const BoxplotStats&) const = default;
};

// Quartiles by linear interpolation between closest ranks: the q-quantile
// sits at position q * (n - 1) of the sorted samples. Throws
// EmptySampleError on empty input.
BoxplotStats boxplot_stats(std::span<const double> samples);

struct ReportStats {
    BoxplotStats shared_cores;
    BoxplotStats separate_cores;
    BoxplotStats shared_watts;
    BoxplotStats separate_watts;
    BoxplotStats core_savings_pct;
    BoxplotStats power_savings_pct;

    bool operator==(const ReportStats&) const = default;
};

struct ComparisonReport {
    std::string spec_label;  // "usecase-2" or "custom"
    WorkloadSpec spec;
    std::string profile_name;
    std::uint64_t base_seed = 0;
    std::vector<TrialResult> trials;
    ReportStats stats;

    bool operator==(const ComparisonReport&) const = default;
};

// Trial t draws its workload with seed base_seed + t, packs it with both
// schemes and evaluates both against `profile`. Deterministic given
// (spec, profile, n_trials, base_seed). n_trials >= 1.
ComparisonReport run_trials(const WorkloadSpec& spec, const ServerProfile& profile,
                            int n_trials, std::uint64_t base_seed,
                            std::string_view spec_label = "custom");

// Recomputes the stats block from the trial rows.
ReportStats compute_stats(std::span<const TrialResult> trials);

// CSV rows = trials, header
// `trial,seed,shared_cores,separate_cores,shared_watts,separate_watts,core_savings_pct,power_savings_pct`.
// Doubles are printed with enough digits to round-trip exactly.
void report_to_csv(const ComparisonReport& r, std::ostream& out);

// Lossless JSON document with a "schema":1 marker and a stats block.
std::string report_to_json(const ComparisonReport& r);
ComparisonReport report_from_json(std::string_view text);

}  // namespace corepool
