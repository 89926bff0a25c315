#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace corepool {

enum class ProcessKind { Sdr, Sdn };

const char* to_string(ProcessKind kind);
ProcessKind process_kind_from_string(std::string_view s);

// One schedulable load unit. SDR baseband processes are single-threaded and
// must be placed whole; SDN data-plane load may be aggregated and split
// across cores.
struct Process {
    std::uint64_t id = 0;
    ProcessKind kind = ProcessKind::Sdr;
    double utilization = 0.0;  // percent of one core, in (0, 100]

    bool operator==(const Process&) const = default;
};

struct UtilizationRange {
    double lo = 0.0;
    double hi = 0.0;

    bool operator==(const UtilizationRange&) const = default;
};

// Per-class process counts and uniform utilization ranges.
struct WorkloadSpec {
    int sdr_count = 0;
    UtilizationRange sdr_range;
    int sdn_count = 0;
    UtilizationRange sdn_range;

    // Throws SpecError unless counts >= 0 and 0 <= lo <= hi <= 100 for both
    // ranges.
    void validate() const;

    // Short identifier such as "sdr=50[80,100] sdn=30[10,30]".
    std::string label() const;

    bool operator==(const WorkloadSpec&) const = default;
};

// The three preset rows: n in {1, 2, 3}. Throws InvalidUsecaseError.
WorkloadSpec usecase_spec(int n);

// {"sdr_count":int,"sdr_range":[lo,hi],"sdn_count":int,"sdn_range":[lo,hi]}
WorkloadSpec workload_spec_from_json(std::string_view text);
std::string workload_spec_to_json(const WorkloadSpec& spec);

struct Workload {
    std::vector<Process> processes;  // SDR block first, then SDN
    WorkloadSpec spec;
    std::uint64_t seed = 0;

    std::vector<double> utilizations(ProcessKind kind) const;
    bool operator==(const Workload&) const = default;
};

// Deterministic generation. Uses mt19937_64 seeded with `seed`; each value is
// drawn as lo + (hi - lo) * u with u = (next() >> 11) * 2^-53, SDR values
// first, then SDN. The mt19937_64 output sequence is fixed by the standard,
// so identical (spec, seed) pairs yield bit-identical workloads on any
// platform.
Workload generate_workload(const WorkloadSpec& spec, std::uint64_t seed);

// Total SDN utilization: the divisible aggregate the shared scheme packs.
double aggregate_sdn(const Workload& w);

// CSV with header `id,kind,utilization`; values round-trip exactly.
void workload_to_csv(const Workload& w, std::ostream& out);

}  // namespace corepool
