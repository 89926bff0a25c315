#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "corepool/allocator.hpp"

namespace corepool {

struct CurvePoint {
    double load = 0.0;   // fraction of full server load, in [0, 1]
    double watts = 0.0;

    bool operator==(const CurvePoint&) const = default;
};

// Server power model: core count plus a monotone load->watts curve anchored
// at idle (load 0) and full load (load 1).
struct ServerProfile {
    std::string name;
    int cores_per_server = 0;
    std::vector<CurvePoint> curve;

    // Throws ProfileFormatError unless cores_per_server > 0, loads are
    // strictly increasing with 0 and 1 present, and watts are non-negative
    // and non-decreasing.
    void validate() const;

    double idle_watts() const { return curve.front().watts; }
    double full_load_watts() const { return curve.back().watts; }

    bool operator==(const ServerProfile&) const = default;
};

// Piecewise-linear interpolation over the profile curve; load in [0, 1].
double power_at_load(const ServerProfile& p, double load);

enum class PowerScheme { Shared, Separate };

const char* to_string(PowerScheme scheme);

struct ServerLoad {
    int server_index = 0;
    int cores_used = 0;
    double load = 0.0;
    double watts = 0.0;

    bool operator==(const ServerLoad&) const = default;
};

struct PowerReport {
    PowerScheme scheme = PowerScheme::Shared;
    int cores_used = 0;
    int servers_used = 0;
    double total_watts = 0.0;
    std::vector<ServerLoad> breakdown;

    bool operator==(const PowerReport&) const = default;
};

// Cores fill servers of cores_per_server in index order; a server's load
// fraction is (cores provisioned on it) / cores_per_server. A provisioned
// core is billed whole regardless of its packed utilization — power follows
// the provisioned footprint, so the watts trend mirrors the core-count
// trend. Zero cores means zero servers and 0 W.
PowerReport total_power(const Allocation& a, const ServerProfile& p);

// The pair occupies one farm with disjoint cores, SDR block first.
PowerReport total_power(const SeparateAllocation& a, const ServerProfile& p);

// 100 * (separate - shared) / separate. Throws UndefinedSavingsError when
// the separate baseline is zero. Also used for core-count savings.
double savings_percent(double shared, double separate);
double savings_percent(const PowerReport& shared, const PowerReport& separate);

// {"name":str, "cores_per_server":int, "curve":[[load,watts],...]}
ServerProfile profile_from_json(std::string_view text);
std::string profile_to_json(const ServerProfile& p);

// CSV rows `load,watts` (with header); name and core count are sidecar data.
ServerProfile profile_from_csv(std::istream& in, std::string name, int cores_per_server);

// Bundled profiles: "asus-80core" (idle 100 W) and "hpe-400core" (idle
// 700 W). Full-load points are assumptions recorded in the profile files.
std::span<const std::string_view> bundled_profile_names();
const ServerProfile& bundled_profile(std::string_view name);

}  // namespace corepool
