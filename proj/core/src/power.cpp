#include "corepool/power.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <sstream>

#include "corepool/errors.hpp"
#include "json.hpp"

namespace corepool {

const char* to_string(PowerScheme scheme) {
    return scheme == PowerScheme::Shared ? "SHARED" : "SEPARATE";
}

void ServerProfile::validate() const {
    if (cores_per_server <= 0) {
        throw ProfileFormatError("profile '" + name + "': cores_per_server must be positive");
    }
    if (curve.size() < 2) {
        throw ProfileFormatError("profile '" + name + "': curve needs at least 2 points");
    }
    if (curve.front().load != 0.0) {
        throw ProfileFormatError("profile '" + name + "': curve must start at load 0 (idle)");
    }
    if (curve.back().load != 1.0) {
        throw ProfileFormatError("profile '" + name + "': curve must end at load 1 (full)");
    }
    for (std::size_t i = 0; i < curve.size(); ++i) {
        if (curve[i].watts < 0.0) {
            throw ProfileFormatError("profile '" + name + "': negative watts");
        }
        if (i > 0) {
            if (curve[i].load <= curve[i - 1].load) {
                throw ProfileFormatError("profile '" + name +
                                         "': curve loads must be strictly increasing");
            }
            if (curve[i].watts < curve[i - 1].watts) {
                throw ProfileFormatError("profile '" + name +
                                         "': watts must be non-decreasing in load");
            }
        }
    }
}

double power_at_load(const ServerProfile& p, double load) {
    if (!(load >= 0.0 && load <= 1.0)) {
        throw DomainError("load must lie in [0, 1], got " + std::to_string(load));
    }
    const auto& curve = p.curve;
    if (load == curve.front().load) return curve.front().watts;
    for (std::size_t i = 1; i < curve.size(); ++i) {
        if (load <= curve[i].load) {
            const CurvePoint& a = curve[i - 1];
            const CurvePoint& b = curve[i];
            const double t = (load - a.load) / (b.load - a.load);
            return a.watts + t * (b.watts - a.watts);
        }
    }
    return curve.back().watts;
}

namespace {

PowerReport report_for_cores(int cores, PowerScheme scheme, const ServerProfile& p) {
    p.validate();
    PowerReport report;
    report.scheme = scheme;
    report.cores_used = cores;
    int remaining = cores;
    int index = 0;
    while (remaining > 0) {
        const int on_server = std::min(remaining, p.cores_per_server);
        const double load = static_cast<double>(on_server) / p.cores_per_server;
        const double watts = power_at_load(p, load);
        report.breakdown.push_back({index, on_server, load, watts});
        report.total_watts += watts;
        remaining -= on_server;
        ++index;
    }
    report.servers_used = index;
    return report;
}

}  // namespace

PowerReport total_power(const Allocation& a, const ServerProfile& p) {
    return report_for_cores(a.core_count(), PowerScheme::Shared, p);
}

PowerReport total_power(const SeparateAllocation& a, const ServerProfile& p) {
    return report_for_cores(a.total_cores(), PowerScheme::Separate, p);
}

double savings_percent(double shared, double separate) {
    if (separate == 0.0) {
        throw UndefinedSavingsError("separate baseline is zero; savings undefined");
    }
    return 100.0 * (separate - shared) / separate;
}

double savings_percent(const PowerReport& shared, const PowerReport& separate) {
    return savings_percent(shared.total_watts, separate.total_watts);
}

ServerProfile profile_from_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ProfileFormatError(std::string("invalid profile JSON: ") + e.what());
    }
    ServerProfile p;
    try {
        p.name = doc.at("name").get<std::string>();
        p.cores_per_server = doc.at("cores_per_server").get<int>();
        for (const auto& point : doc.at("curve")) {
            p.curve.push_back({point.at(0).get<double>(), point.at(1).get<double>()});
        }
    } catch (const nlohmann::json::exception& e) {
        throw ProfileFormatError(std::string("invalid profile JSON: ") + e.what());
    }
    p.validate();
    return p;
}

std::string profile_to_json(const ServerProfile& p) {
    nlohmann::json curve = nlohmann::json::array();
    for (const CurvePoint& point : p.curve) {
        curve.push_back({point.load, point.watts});
    }
    nlohmann::json doc{{"name", p.name},
                       {"cores_per_server", p.cores_per_server},
                       {"curve", std::move(curve)}};
    return doc.dump();
}

ServerProfile profile_from_csv(std::istream& in, std::string name, int cores_per_server) {
    std::string line;
    if (!std::getline(in, line) || line != "load,watts") {
        throw ProfileFormatError("profile CSV: expected header 'load,watts'");
    }
    ServerProfile p;
    p.name = std::move(name);
    p.cores_per_server = cores_per_server;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw ProfileFormatError("profile CSV line " + std::to_string(line_no) +
                                     ": expected 'load,watts'");
        }
        CurvePoint point;
        auto parse = [&](std::string_view field, double& out) {
            auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
            if (ec != std::errc{} || ptr != field.data() + field.size()) {
                throw ProfileFormatError("profile CSV line " + std::to_string(line_no) +
                                         ": bad number '" + std::string(field) + "'");
            }
        };
        parse(std::string_view(line).substr(0, comma), point.load);
        parse(std::string_view(line).substr(comma + 1), point.watts);
        p.curve.push_back(point);
    }
    p.validate();
    return p;
}

namespace {

constexpr std::string_view kBundledNames[] = {"asus-80core", "hpe-400core"};

// Idle watts are published figures for the two servers; full-load watts are
// assumptions (see the bundled profile files).
const ServerProfile kAsus80{"asus-80core", 80, {{0.0, 100.0}, {1.0, 500.0}}};
const ServerProfile kHpe400{"hpe-400core", 400, {{0.0, 700.0}, {1.0, 2800.0}}};

}  // namespace

std::span<const std::string_view> bundled_profile_names() {
    return kBundledNames;
}

const ServerProfile& bundled_profile(std::string_view name) {
    if (name == "asus-80core") return kAsus80;
    if (name == "hpe-400core") return kHpe400;
    std::ostringstream msg;
    msg << "unknown bundled profile '" << name << "'; available:";
    for (std::string_view n : kBundledNames) msg << ' ' << n;
    throw ProfileFormatError(msg.str());
}

}  // namespace corepool
