#include "corepool/measurements.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "corepool/errors.hpp"
#include "corepool/text.hpp"

namespace corepool {

const char* to_string(Protocol protocol) {
    return protocol == Protocol::Tcp ? "TCP" : "UDP";
}

Protocol protocol_from_string(std::string_view s) {
    if (s == "TCP") return Protocol::Tcp;
    if (s == "UDP") return Protocol::Udp;
    throw ParseError("unknown protocol: " + std::string(s));
}

namespace {

constexpr Protocol kTcp = Protocol::Tcp;
constexpr Protocol kUdp = Protocol::Udp;

// Testbed tables, verbatim. PRB 50 caps near 21 Mbps / ~90% CPU; PRB 25 caps
// near 9.5 Mbps / ~63% CPU.
const SdrMeasurement kEmbeddedRows[] = {
    // PRB 50, TCP: setting, throughput, cpu%, retries
    {50, kTcp, 1, 1, 28.5, 0},
    {50, kTcp, 5, 5, 68.3, 0},
    {50, kTcp, 10, 9.8, 73.4, 0},
    {50, kTcp, 15, 14.6, 76.3, 0},
    {50, kTcp, 20, 19.3, 87.1, 0},
    {50, kTcp, 25, 21.2, 90.3, 36},
    {50, kTcp, 30, 21.2, 90.3, 58},
    {50, kTcp, 35, 21.1, 90.8, 44},
    {50, kTcp, 40, 21.1, 90.9, 30},
    {50, kTcp, 45, 21.1, 90.9, 31},
    {50, kTcp, 50, 21.2, 90.4, 40},
    {50, kTcp, 100, 21.2, 90.0, 50},
    // PRB 50, UDP: setting, throughput, cpu%, packet loss
    {50, kUdp, 1, 1, 29.8, 0},
    {50, kUdp, 5, 5, 49.0, 0},
    {50, kUdp, 10, 10, 62.8, 0},
    {50, kUdp, 15, 15, 74.2, 0},
    {50, kUdp, 20, 20, 84.7, 0},
    {50, kUdp, 25, 20.6, 86.6, 16},
    {50, kUdp, 30, 20.6, 86.1, 30},
    {50, kUdp, 35, 20.3, 86.0, 41},
    {50, kUdp, 40, 20.6, 86.6, 48},
    {50, kUdp, 45, 20.1, 86.0, 54},
    {50, kUdp, 50, 20.1, 85.1, 59},
    {50, kUdp, 100, 19.5, 86.7, 80},
    // PRB 25, TCP
    {25, kTcp, 1, 1, 42.1, 0},
    {25, kTcp, 5, 4.99, 50.3, 0},
    {25, kTcp, 10, 9.46, 61.1, 54},
    {25, kTcp, 15, 9.46, 64.4, 58},
    {25, kTcp, 20, 9.46, 63.1, 57},
    {25, kTcp, 25, 9.46, 64.1, 54},
    {25, kTcp, 30, 9.46, 63.7, 58},
    {25, kTcp, 35, 9.46, 65.0, 53},
    {25, kTcp, 40, 9.46, 61.7, 59},
    {25, kTcp, 45, 9.47, 59.5, 58},
    {25, kTcp, 50, 9.46, 63.6, 58},
    // PRB 25, UDP
    {25, kUdp, 1, 1, 37.4, 0},
    {25, kUdp, 5, 4.99, 51.0, 0},
    {25, kUdp, 10, 9.13, 62.3, 8.1},
    {25, kUdp, 15, 9.03, 60.1, 39},
    {25, kUdp, 20, 8.92, 63.3, 55},
    {25, kUdp, 25, 8.82, 63.1, 64},
    {25, kUdp, 30, 8.74, 63.1, 71},
    {25, kUdp, 35, 7.71, 63.3, 78},
    {25, kUdp, 40, 7.48, 62.9, 81},
    {25, kUdp, 45, 7.21, 62.1, 84},
    {25, kUdp, 50, 6.54, 63.3, 86},
};

double parse_double(std::string_view field, int line_no) {
    double value = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw ParseError("measurement CSV line " + std::to_string(line_no) +
                         ": bad number '" + std::string(field) + "'");
    }
    return value;
}

}  // namespace

const MeasurementTable& MeasurementTable::embedded() {
    static const MeasurementTable table{
        std::vector<SdrMeasurement>(std::begin(kEmbeddedRows), std::end(kEmbeddedRows))};
    return table;
}

MeasurementTable::MeasurementTable(std::vector<SdrMeasurement> rows)
    : rows_(std::move(rows)) {}

MeasurementTable MeasurementTable::from_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("measurement CSV: empty input");
    }
    if (line != "prb,protocol,bandwidth_setting_mbps,throughput_mbps,cpu_util_pct,loss_or_retries") {
        throw ParseError("measurement CSV: unexpected header '" + line + "'");
    }
    std::vector<SdrMeasurement> rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string_view> fields;
        std::string_view rest = line;
        while (true) {
            auto comma = rest.find(',');
            fields.push_back(rest.substr(0, comma));
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        if (fields.size() != 6) {
            throw ParseError("measurement CSV line " + std::to_string(line_no) +
                             ": expected 6 fields, got " + std::to_string(fields.size()));
        }
        SdrMeasurement m;
        m.prb = static_cast<int>(parse_double(fields[0], line_no));
        m.protocol = protocol_from_string(fields[1]);
        m.bandwidth_setting_mbps = parse_double(fields[2], line_no);
        m.throughput_mbps = parse_double(fields[3], line_no);
        m.cpu_utilization_pct = parse_double(fields[4], line_no);
        m.loss_or_retries = parse_double(fields[5], line_no);
        rows.push_back(m);
    }
    return MeasurementTable(std::move(rows));
}

const SdrMeasurement& MeasurementTable::lookup(int prb, Protocol protocol,
                                               double bandwidth_setting_mbps) const {
    for (const SdrMeasurement& m : rows_) {
        if (m.prb == prb && m.protocol == protocol &&
            m.bandwidth_setting_mbps == bandwidth_setting_mbps) {
            return m;
        }
    }
    std::ostringstream msg;
    msg << "no measurement for PRB " << prb << " " << to_string(protocol)
        << " at " << bandwidth_setting_mbps << " Mbps; valid settings:";
    bool any = false;
    for (const SdrMeasurement& m : rows_) {
        if (m.prb == prb && m.protocol == protocol) {
            msg << ' ' << m.bandwidth_setting_mbps;
            any = true;
        }
    }
    if (!any) msg << " (none for this PRB/protocol)";
    throw MeasurementNotFoundError(msg.str());
}

void MeasurementTable::to_csv(std::ostream& out) const {
    out << "prb,protocol,bandwidth_setting_mbps,throughput_mbps,cpu_util_pct,loss_or_retries\n";
    for (const SdrMeasurement& m : rows_) {
        out << m.prb << ',' << to_string(m.protocol) << ','
            << format_double(m.bandwidth_setting_mbps) << ',' << format_double(m.throughput_mbps)
            << ',' << format_double(m.cpu_utilization_pct) << ','
            << format_double(m.loss_or_retries) << '\n';
    }
}

const SdrMeasurement& sdr_measurement_lookup(int prb, Protocol protocol,
                                             double bandwidth_setting_mbps) {
    return MeasurementTable::embedded().lookup(prb, protocol, bandwidth_setting_mbps);
}

namespace {
const RateSample kSdnRateAnchors[] = {
    {100.0, 20.0},        // 100 kbps
    {10000000.0, 175.0},  // 10 Gbps
};
}

std::span<const RateSample> sdn_rate_anchors() {
    return kSdnRateAnchors;
}

SdnRateModel fit_sdn_rate_model(std::span<const RateSample> samples) {
    std::vector<double> xs;
    xs.reserve(samples.size());
    for (const RateSample& s : samples) {
        if (s.rate_kbps <= 0.0) {
            throw DomainError("rate must be positive, got " + std::to_string(s.rate_kbps));
        }
        xs.push_back(std::log10(s.rate_kbps));
    }
    bool distinct = false;
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (xs[i] != xs[0]) {
            distinct = true;
            break;
        }
    }
    if (samples.size() < 2 || !distinct) {
        throw UnderdeterminedFitError("need at least two samples with distinct rates");
    }

    const double n = static_cast<double>(samples.size());
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        sx += xs[i];
        sy += samples[i].utilization_pct;
    }
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (samples[i].utilization_pct - my);
    }
    const double slope = sxy / sxx;
    if (!(slope > 0.0)) {
        std::ostringstream msg;
        msg << "degenerate fit: slope " << slope
            << " per decade is not positive (utilization must grow with rate)";
        throw DegenerateFitError(msg.str());
    }
    return {my - slope * mx, slope};
}

double predict_sdn_utilization(const SdnRateModel& model, double rate_kbps) {
    if (!(rate_kbps > 0.0)) {
        throw DomainError("rate must be positive, got " + std::to_string(rate_kbps));
    }
    const double u = model.intercept_pct +
                     model.slope_pct_per_decade * std::log10(rate_kbps);
    return u < 0.0 ? 0.0 : u;
}

}  // namespace corepool
