#include "corepool/allocator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "corepool/errors.hpp"
#include "json.hpp"

namespace corepool {

const char* to_string(Scheme scheme) {
    switch (scheme) {
        case Scheme::Shared: return "SHARED";
        case Scheme::SeparateSdr: return "SEPARATE_SDR";
        case Scheme::SeparateSdn: return "SEPARATE_SDN";
    }
    return "?";
}

double Allocation::total_utilization() const {
    double total = 0.0;
    for (const CoreAssignment& c : cores) total += c.total_utilization;
    return total;
}

namespace {

struct Item {
    std::uint64_t id;
    double utilization;
};

// Descending utilization, ties by ascending id.
void sort_for_ffd(std::vector<Item>& items) {
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
        if (a.utilization != b.utilization) return a.utilization > b.utilization;
        return a.id < b.id;
    });
}

void check_feasible(const std::vector<Item>& items) {
    for (const Item& it : items) {
        if (it.utilization > kCoreCapacity) {
            std::ostringstream msg;
            msg << "process " << it.id << " needs " << it.utilization
                << "% of a core; a single core holds at most " << kCoreCapacity << "%";
            throw InfeasibleProcessError(msg.str());
        }
    }
}

std::vector<Item> items_of_kind(const Workload& w, ProcessKind kind) {
    std::vector<Item> items;
    for (const Process& p : w.processes) {
        if (p.kind == kind) items.push_back({p.id, p.utilization});
    }
    return items;
}

// First-fit-decreasing over cores that may carry pre-existing load. Cores are
// opened on demand; records which item ids land where.
void pack_ffd(std::vector<CoreAssignment>& cores, std::vector<Item> items) {
    sort_for_ffd(items);
    for (const Item& it : items) {
        bool placed = false;
        for (CoreAssignment& core : cores) {
            if (core.total_utilization + it.utilization <= kCoreCapacity + kFluidEps) {
                core.sdr_process_ids.push_back(it.id);
                core.total_utilization += it.utilization;
                placed = true;
                break;
            }
        }
        if (!placed) {
            CoreAssignment core;
            core.core_index = static_cast<int>(cores.size());
            core.sdr_process_ids.push_back(it.id);
            core.total_utilization = it.utilization;
            cores.push_back(std::move(core));
        }
    }
}

// Pours a divisible load into remaining capacity in core order, opening new
// cores as needed.
void pour_fluid(std::vector<CoreAssignment>& cores, double amount) {
    for (CoreAssignment& core : cores) {
        if (amount <= kFluidEps) break;
        const double take = std::min(kCoreCapacity - core.total_utilization, amount);
        if (take <= 0.0) continue;
        core.sdn_fraction += take;
        core.total_utilization += take;
        amount -= take;
    }
    while (amount > kFluidEps) {
        CoreAssignment core;
        core.core_index = static_cast<int>(cores.size());
        core.sdn_fraction = std::min(kCoreCapacity, amount);
        core.total_utilization = core.sdn_fraction;
        amount -= core.sdn_fraction;
        cores.push_back(std::move(core));
    }
}

int fluid_core_count(double amount) {
    if (amount <= kFluidEps) return 0;
    return static_cast<int>(std::ceil((amount - kFluidEps) / kCoreCapacity));
}

}  // namespace

Allocation allocate_shared(const Workload& w, std::span<const double> initial_loads) {
    std::vector<Item> sdr = items_of_kind(w, ProcessKind::Sdr);
    check_feasible(sdr);

    Allocation a;
    a.scheme = Scheme::Shared;
    a.workload_seed = w.seed;
    a.workload_label = w.spec.label();
    for (double load : initial_loads) {
        if (load < 0.0 || load > kCoreCapacity) {
            throw DomainError("initial core load must lie in [0, 100], got " +
                              std::to_string(load));
        }
        CoreAssignment core;
        core.core_index = static_cast<int>(a.cores.size());
        core.base_load = load;
        core.total_utilization = load;
        a.cores.push_back(std::move(core));
    }

    pack_ffd(a.cores, std::move(sdr));
    pour_fluid(a.cores, aggregate_sdn(w));
    return a;
}

SeparateAllocation allocate_separate(const Workload& w) {
    std::vector<Item> sdr = items_of_kind(w, ProcessKind::Sdr);
    std::vector<Item> sdn = items_of_kind(w, ProcessKind::Sdn);
    check_feasible(sdr);
    check_feasible(sdn);

    SeparateAllocation out;
    out.sdr.scheme = Scheme::SeparateSdr;
    out.sdr.workload_seed = w.seed;
    out.sdr.workload_label = w.spec.label();
    pack_ffd(out.sdr.cores, std::move(sdr));

    out.sdn.scheme = Scheme::SeparateSdn;
    out.sdn.workload_seed = w.seed;
    out.sdn.workload_label = w.spec.label();
    pack_ffd(out.sdn.cores, std::move(sdn));
    // SDN identities are not tracked per core; keep the packed amounts as
    // fractions of the aggregate.
    for (CoreAssignment& core : out.sdn.cores) {
        core.sdn_fraction = core.total_utilization;
        core.sdr_process_ids.clear();
    }
    return out;
}

namespace {

void append(std::vector<Violation>& out, Violation::Kind kind, std::string detail) {
    out.push_back({kind, std::move(detail)});
}

void validate_one(std::vector<Violation>& out, const Allocation& a, const Workload& w) {
    std::unordered_map<std::uint64_t, double> sdr_utils;
    for (const Process& p : w.processes) {
        if (p.kind == ProcessKind::Sdr) sdr_utils.emplace(p.id, p.utilization);
    }

    constexpr double kTol = 1e-6;
    std::unordered_map<std::uint64_t, int> seen;
    double sdn_total = 0.0;

    for (const CoreAssignment& core : a.cores) {
        const std::string where = "core " + std::to_string(core.core_index);
        if (core.sdn_fraction < 0.0 || core.base_load < 0.0) {
            append(out, Violation::Kind::NegativeLoad, where + " carries negative load");
        }
        double sdr_sum = 0.0;
        for (std::uint64_t id : core.sdr_process_ids) {
            ++seen[id];
            auto it = sdr_utils.find(id);
            if (it == sdr_utils.end()) {
                append(out, Violation::Kind::UnknownProcess,
                       where + " references unknown SDR process " + std::to_string(id));
            } else {
                sdr_sum += it->second;
            }
        }
        const double expected = core.base_load + sdr_sum + core.sdn_fraction;
        if (std::abs(core.total_utilization - expected) > kTol) {
            std::ostringstream msg;
            msg << where << " total " << core.total_utilization
                << " != base + SDR + SDN = " << expected;
            append(out, Violation::Kind::TotalMismatch, msg.str());
        }
        if (core.total_utilization > kCoreCapacity + kTol) {
            std::ostringstream msg;
            msg << where << " at " << core.total_utilization << "% exceeds capacity";
            append(out, Violation::Kind::OverCapacity, msg.str());
        }
        sdn_total += core.sdn_fraction;
    }

    if (a.scheme == Scheme::Shared || a.scheme == Scheme::SeparateSdr) {
        for (const auto& [id, util] : sdr_utils) {
            auto it = seen.find(id);
            if (it == seen.end()) {
                append(out, Violation::Kind::UnplacedProcess,
                       "SDR process " + std::to_string(id) + " is not placed on any core");
            } else if (it->second > 1) {
                append(out, Violation::Kind::DuplicateProcess,
                       "SDR process " + std::to_string(id) + " is placed on " +
                           std::to_string(it->second) + " cores");
            }
        }
    } else if (!seen.empty()) {
        append(out, Violation::Kind::UnknownProcess,
               "SDN-only allocation carries SDR process ids");
    }

    const double expected_sdn =
        a.scheme == Scheme::SeparateSdr ? 0.0 : aggregate_sdn(w);
    if (std::abs(sdn_total - expected_sdn) > kTol) {
        std::ostringstream msg;
        msg << "SDN fractions sum to " << sdn_total << ", expected " << expected_sdn;
        append(out, Violation::Kind::SdnTotalMismatch, msg.str());
    }
}

}  // namespace

std::vector<Violation> validate_allocation(const Allocation& a, const Workload& w) {
    std::vector<Violation> out;
    validate_one(out, a, w);
    return out;
}

std::vector<Violation> validate_allocation(const SeparateAllocation& a, const Workload& w) {
    std::vector<Violation> out;
    validate_one(out, a.sdr, w);
    validate_one(out, a.sdn, w);
    return out;
}

namespace {

// Can `items` (sorted descending) be packed into `k` bins of capacity 100?
// Depth-first with symmetric-bin pruning.
bool fits_in_bins(const std::vector<double>& items, std::size_t next,
                  std::vector<double>& bins) {
    if (next == items.size()) return true;
    const double u = items[next];
    for (std::size_t b = 0; b < bins.size(); ++b) {
        bool symmetric = false;
        for (std::size_t prev = 0; prev < b; ++prev) {
            if (bins[prev] == bins[b]) {
                symmetric = true;
                break;
            }
        }
        if (symmetric) continue;
        if (bins[b] + u <= kCoreCapacity + kFluidEps) {
            bins[b] += u;
            if (fits_in_bins(items, next + 1, bins)) return true;
            bins[b] -= u;
        }
    }
    return false;
}

}  // namespace

int brute_force_min_cores(const Workload& w, int max_items) {
    std::vector<Item> sdr = items_of_kind(w, ProcessKind::Sdr);
    if (static_cast<int>(sdr.size()) > max_items) {
        throw OracleSizeError("exhaustive oracle limited to " + std::to_string(max_items) +
                              " SDR processes, got " + std::to_string(sdr.size()));
    }
    check_feasible(sdr);

    std::vector<double> utils;
    double sdr_total = 0.0;
    for (const Item& it : sdr) {
        utils.push_back(it.utilization);
        sdr_total += it.utilization;
    }
    std::sort(utils.begin(), utils.end(), std::greater<>());

    const double sdn_total = aggregate_sdn(w);
    const int n = static_cast<int>(utils.size());

    int k_min = 0;
    if (n > 0) {
        k_min = n;
        for (int k = 1; k <= n; ++k) {
            std::vector<double> bins(static_cast<std::size_t>(k), 0.0);
            if (fits_in_bins(utils, 0, bins)) {
                k_min = k;
                break;
            }
        }
    }

    // For a fixed SDR bin count k the free capacity is 100k - sum(SDR)
    // regardless of the partition, so minimizing over partitions reduces to
    // minimizing over feasible k.
    int best = -1;
    for (int k = k_min; k <= std::max(k_min, n); ++k) {
        const double spill = sdn_total - (kCoreCapacity * k - sdr_total);
        const int total = k + fluid_core_count(spill);
        if (best < 0 || total < best) best = total;
    }
    return best;
}

std::string allocation_to_json(const Allocation& a) {
    nlohmann::json cores = nlohmann::json::array();
    for (const CoreAssignment& core : a.cores) {
        nlohmann::json entry{{"index", core.core_index},
                             {"sdr_ids", core.sdr_process_ids},
                             {"sdn_fraction", core.sdn_fraction},
                             {"total", core.total_utilization}};
        if (core.base_load != 0.0) entry["base_load"] = core.base_load;
        cores.push_back(std::move(entry));
    }
    nlohmann::json doc{{"scheme", to_string(a.scheme)},
                       {"workload_seed", a.workload_seed},
                       {"workload_label", a.workload_label},
                       {"cores", std::move(cores)}};
    return doc.dump();
}

}  // namespace corepool
