#pragma once

#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

namespace corepool {

enum class Protocol { Tcp, Udp };

const char* to_string(Protocol protocol);
Protocol protocol_from_string(std::string_view s);

// One row of the LTE eNodeB testbed tables: offered load against measured
// throughput, mean CPU utilization, and packet loss (UDP) or retries (TCP).
struct SdrMeasurement {
    int prb = 0;  // 25 or 50
    Protocol protocol = Protocol::Tcp;
    double bandwidth_setting_mbps = 0.0;
    double throughput_mbps = 0.0;
    double cpu_utilization_pct = 0.0;
    double loss_or_retries = 0.0;

    bool operator==(const SdrMeasurement&) const = default;
};

// Measurement dataset keyed by (prb, protocol, bandwidth setting).
class MeasurementTable {
public:
    // The built-in testbed tables (PRB 50 and PRB 25, TCP and UDP).
    static const MeasurementTable& embedded();

    // CSV with header
    // `prb,protocol,bandwidth_setting_mbps,throughput_mbps,cpu_util_pct,loss_or_retries`.
    static MeasurementTable from_csv(std::istream& in);

    explicit MeasurementTable(std::vector<SdrMeasurement> rows);

    const std::vector<SdrMeasurement>& rows() const { return rows_; }

    // Exact-key lookup; throws MeasurementNotFoundError listing the valid
    // settings for the requested (prb, protocol).
    const SdrMeasurement& lookup(int prb, Protocol protocol,
                                 double bandwidth_setting_mbps) const;

    void to_csv(std::ostream& out) const;

private:
    std::vector<SdrMeasurement> rows_;
};

// Lookup against the embedded tables.
const SdrMeasurement& sdr_measurement_lookup(int prb, Protocol protocol,
                                             double bandwidth_setting_mbps);

// Log-linear CPU model: utilization = intercept + slope * log10(rate_kbps).
// Utilization is percent of the core pool and may exceed 100 (multi-core
// data-plane load).
struct SdnRateModel {
    double intercept_pct = 0.0;
    double slope_pct_per_decade = 0.0;  // > 0

    bool operator==(const SdnRateModel&) const = default;
};

struct RateSample {
    double rate_kbps = 0.0;
    double utilization_pct = 0.0;
};

// Mean-utilization anchors of the virtual-switch measurements: 20% at
// 100 kbps rising to 175% at 10 Gbps.
std::span<const RateSample> sdn_rate_anchors();

// Least-squares fit of utilization against log10(rate). Throws
// UnderdeterminedFitError with fewer than two distinct rates and
// DegenerateFitError when the fitted slope is not positive.
SdnRateModel fit_sdn_rate_model(std::span<const RateSample> samples);

// intercept + slope * log10(rate_kbps), clamped below at 0. rate_kbps > 0.
double predict_sdn_utilization(const SdnRateModel& model, double rate_kbps);

}  // namespace corepool
