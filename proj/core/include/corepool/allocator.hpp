#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "corepool/workload.hpp"

namespace corepool {

enum class Scheme { Shared, SeparateSdr, SeparateSdn };

const char* to_string(Scheme scheme);

// Core capacity in utilization percent.
inline constexpr double kCoreCapacity = 100.0;

// Residual below which a fluid remainder is treated as zero.
inline constexpr double kFluidEps = 1e-9;

// One CPU core and what is placed on it.
struct CoreAssignment {
    int core_index = 0;
    std::vector<std::uint64_t> sdr_process_ids;
    double sdn_fraction = 0.0;  // slice of the divisible SDN aggregate
    double base_load = 0.0;     // pre-existing occupancy (warm pools only)
    double total_utilization = 0.0;

    bool operator==(const CoreAssignment&) const = default;
};

struct Allocation {
    Scheme scheme = Scheme::Shared;
    std::vector<CoreAssignment> cores;
    std::uint64_t workload_seed = 0;
    std::string workload_label;

    int core_count() const { return static_cast<int>(cores.size()); }
    double total_utilization() const;

    bool operator==(const Allocation&) const = default;
};

// {"scheme":..., "cores":[{"index":..., "sdr_ids":[...], "sdn_fraction":..., "total":...}]}
std::string allocation_to_json(const Allocation& a);

// Shared-pool packing: SDR processes placed first-fit-decreasing (ties broken
// by ascending id) onto cores of capacity 100, opened on demand; the SDN
// aggregate is then poured into remaining capacity in core-index order,
// opening further cores as needed. `initial_loads` pre-occupies the first
// cores of the pool with the given utilizations (warm start); default empty.
// Throws InfeasibleProcessError if any SDR utilization exceeds 100.
Allocation allocate_shared(const Workload& w, std::span<const double> initial_loads = {});

struct SeparateAllocation {
    Allocation sdr;
    Allocation sdn;

    int total_cores() const { return sdr.core_count() + sdn.core_count(); }

    bool operator==(const SeparateAllocation&) const = default;
};

// Class-segregated baseline: each class packed by the same first-fit-
// decreasing rule on its own disjoint pool. SDN processes are placed whole
// here — without the shared scheme's optimizer nothing aggregates them —
// and each SDN core records its content as an sdn_fraction.
SeparateAllocation allocate_separate(const Workload& w);

struct Violation {
    enum class Kind {
        OverCapacity,
        UnplacedProcess,
        DuplicateProcess,
        UnknownProcess,
        SdnTotalMismatch,
        TotalMismatch,
        NegativeLoad,
    };
    Kind kind;
    std::string detail;
};

// Checks every Allocation invariant; an empty result means valid.
std::vector<Violation> validate_allocation(const Allocation& a, const Workload& w);
std::vector<Violation> validate_allocation(const SeparateAllocation& a, const Workload& w);

// Exact minimum core count over all SDR partitions with the SDN aggregate
// poured into the remaining capacity. Exhaustive; throws OracleSizeError when
// the workload has more than `max_items` SDR processes.
int brute_force_min_cores(const Workload& w, int max_items = 10);

}  // namespace corepool
