#include "corepool/workload.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include "corepool/errors.hpp"
#include "corepool/text.hpp"
#include "json.hpp"

namespace corepool {

const char* to_string(ProcessKind kind) {
    return kind == ProcessKind::Sdr ? "SDR" : "SDN";
}

ProcessKind process_kind_from_string(std::string_view s) {
    if (s == "SDR") return ProcessKind::Sdr;
    if (s == "SDN") return ProcessKind::Sdn;
    throw ParseError("unknown process kind: " + std::string(s));
}

void WorkloadSpec::validate() const {
    if (sdr_count < 0 || sdn_count < 0) {
        throw SpecError("process counts must be non-negative");
    }
    for (const auto& [name, r] : {std::pair{"sdr_range", sdr_range},
                                  std::pair{"sdn_range", sdn_range}}) {
        if (!(r.lo >= 0.0 && r.lo <= r.hi && r.hi <= 100.0)) {
            std::ostringstream msg;
            msg << name << " must satisfy 0 <= lo <= hi <= 100, got ["
                << r.lo << ", " << r.hi << "]";
            throw SpecError(msg.str());
        }
    }
}

std::string WorkloadSpec::label() const {
    std::ostringstream out;
    out << "sdr=" << sdr_count << "[" << sdr_range.lo << "," << sdr_range.hi
        << "] sdn=" << sdn_count << "[" << sdn_range.lo << "," << sdn_range.hi
        << "]";
    return out.str();
}

WorkloadSpec usecase_spec(int n) {
    switch (n) {
        case 1: return {50, {80.0, 100.0}, 30, {10.0, 30.0}};
        case 2: return {30, {60.0, 80.0}, 50, {30.0, 50.0}};
        case 3: return {50, {80.0, 100.0}, 50, {30.0, 50.0}};
        default:
            throw InvalidUsecaseError("use case must be 1, 2 or 3, got " +
                                      std::to_string(n));
    }
}

WorkloadSpec workload_spec_from_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid workload spec JSON: ") + e.what());
    }
    WorkloadSpec spec;
    try {
        spec.sdr_count = doc.at("sdr_count").get<int>();
        spec.sdr_range = {doc.at("sdr_range").at(0).get<double>(),
                          doc.at("sdr_range").at(1).get<double>()};
        spec.sdn_count = doc.at("sdn_count").get<int>();
        spec.sdn_range = {doc.at("sdn_range").at(0).get<double>(),
                          doc.at("sdn_range").at(1).get<double>()};
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid workload spec JSON: ") + e.what());
    }
    spec.validate();
    return spec;
}

std::string workload_spec_to_json(const WorkloadSpec& spec) {
    nlohmann::json doc{{"sdr_count", spec.sdr_count},
                       {"sdr_range", {spec.sdr_range.lo, spec.sdr_range.hi}},
                       {"sdn_count", spec.sdn_count},
                       {"sdn_range", {spec.sdn_range.lo, spec.sdn_range.hi}}};
    return doc.dump();
}

std::vector<double> Workload::utilizations(ProcessKind kind) const {
    std::vector<double> out;
    for (const Process& p : processes) {
        if (p.kind == kind) out.push_back(p.utilization);
    }
    return out;
}

namespace {

// 53-bit uniform in [0, 1). Spelled out instead of uniform_real_distribution,
// whose output is implementation-defined.
double draw_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double draw_in_range(std::mt19937_64& rng, const UtilizationRange& r) {
    double u = r.lo + (r.hi - r.lo) * draw_unit(rng);
    // utilization 0 is outside the Process domain; lift measure-zero draws
    if (u <= 0.0) u = std::numeric_limits<double>::min();
    return u;
}

}  // namespace

Workload generate_workload(const WorkloadSpec& spec, std::uint64_t seed) {
    spec.validate();
    Workload w;
    w.spec = spec;
    w.seed = seed;
    w.processes.reserve(static_cast<std::size_t>(spec.sdr_count + spec.sdn_count));
    std::mt19937_64 rng(seed);
    std::uint64_t next_id = 0;
    for (int i = 0; i < spec.sdr_count; ++i) {
        w.processes.push_back({next_id++, ProcessKind::Sdr, draw_in_range(rng, spec.sdr_range)});
    }
    for (int j = 0; j < spec.sdn_count; ++j) {
        w.processes.push_back({next_id++, ProcessKind::Sdn, draw_in_range(rng, spec.sdn_range)});
    }
    return w;
}

double aggregate_sdn(const Workload& w) {
    double total = 0.0;
    for (const Process& p : w.processes) {
        if (p.kind == ProcessKind::Sdn) total += p.utilization;
    }
    return total;
}

void workload_to_csv(const Workload& w, std::ostream& out) {
    out << "id,kind,utilization\n";
    for (const Process& p : w.processes) {
        out << p.id << ',' << to_string(p.kind) << ',' << format_double(p.utilization) << '\n';
    }
}

}  // namespace corepool
