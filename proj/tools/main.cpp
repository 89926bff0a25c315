// corepool: workload generation, shared-vs-separate core packing comparison,
// and server power evaluation from the command line.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "corepool/allocator.hpp"
#include "corepool/errors.hpp"
#include "corepool/experiments.hpp"
#include "corepool/power.hpp"
#include "corepool/text.hpp"
#include "corepool/workload.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

// Bad argument values that CLI11 cannot catch itself (exit code 2).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Writes via a temp file plus rename so failures never leave partial output.
void write_file_atomic(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw corepool::Error("cannot open " + tmp.string() + " for writing");
        }
        out << content;
        if (!out.flush()) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw corepool::Error("failed writing " + tmp.string());
        }
    }
    fs::rename(tmp, path);
}

struct SpecSource {
    std::optional<int> usecase;
    std::string spec_file;

    corepool::WorkloadSpec resolve(std::string& label) const {
        if (usecase.has_value() == !spec_file.empty()) {
            throw UsageError("exactly one of --usecase and --spec is required");
        }
        if (usecase) {
            if (*usecase < 1 || *usecase > 3) {
                throw UsageError("--usecase must be 1, 2 or 3");
            }
            label = "usecase-" + std::to_string(*usecase);
            return corepool::usecase_spec(*usecase);
        }
        std::ifstream in(spec_file);
        if (!in) {
            throw corepool::Error("cannot read spec file " + spec_file);
        }
        std::ostringstream text;
        text << in.rdbuf();
        label = "custom";
        return corepool::workload_spec_from_json(text.str());
    }
};

// --profile accepts a bundled name or a file path. A bundled name may be
// overridden by $COREPOOL_PROFILE_DIR/<name>.json. CSV profiles take the
// name and core count from --profile-name / --profile-cores.
corepool::ServerProfile resolve_profile(const std::string& source,
                                        const std::string& csv_name,
                                        int csv_cores) {
    auto load_file = [&](const fs::path& path) {
        std::ifstream in(path);
        if (!in) {
            throw corepool::Error("cannot read profile " + path.string());
        }
        if (path.extension() == ".csv") {
            if (csv_name.empty() || csv_cores <= 0) {
                throw UsageError(
                    "CSV profiles need --profile-name and --profile-cores");
            }
            return corepool::profile_from_csv(in, csv_name, csv_cores);
        }
        std::ostringstream text;
        text << in.rdbuf();
        return corepool::profile_from_json(text.str());
    };

    for (std::string_view bundled : corepool::bundled_profile_names()) {
        if (source == bundled) {
            if (const char* dir = std::getenv("COREPOOL_PROFILE_DIR")) {
                const fs::path override_path = fs::path(dir) / (source + ".json");
                if (fs::exists(override_path)) {
                    return load_file(override_path);
                }
            }
            return corepool::bundled_profile(source);
        }
    }
    if (!fs::exists(source)) {
        std::ostringstream msg;
        msg << "unknown profile '" << source << "': not a bundled name (";
        bool first = true;
        for (std::string_view n : corepool::bundled_profile_names()) {
            if (!first) msg << ", ";
            msg << n;
            first = false;
        }
        msg << ") and no such file";
        throw corepool::Error(msg.str());
    }
    return load_file(source);
}

std::string render_workload_csv(const corepool::Workload& w) {
    std::ostringstream out;
    corepool::workload_to_csv(w, out);
    return out.str();
}

std::string render_report(const corepool::ComparisonReport& report,
                          const std::string& format) {
    if (format == "json") {
        return corepool::report_to_json(report);
    }
    std::ostringstream out;
    corepool::report_to_csv(report, out);
    return out.str();
}

std::string fmt_pct(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", value);
    return buf;
}

void print_summary(const corepool::ComparisonReport& r) {
    std::cout << r.spec_label << " on " << r.profile_name << ": "
              << r.trials.size() << " trials, base seed " << r.base_seed << "\n"
              << "  cores  shared/separate median: " << r.stats.shared_cores.median
              << " / " << r.stats.separate_cores.median << "\n"
              << "  watts  shared/separate median: "
              << fmt_pct(r.stats.shared_watts.median) << " / "
              << fmt_pct(r.stats.separate_watts.median) << "\n"
              << "  median core savings:  " << fmt_pct(r.stats.core_savings_pct.median)
              << "%\n"
              << "  median power savings: " << fmt_pct(r.stats.power_savings_pct.median)
              << "%\n";
}

int run_generate(const SpecSource& spec_source, std::uint64_t seed,
                 const std::string& out_path) {
    std::string label;
    const corepool::WorkloadSpec spec = spec_source.resolve(label);
    const corepool::Workload w = corepool::generate_workload(spec, seed);
    write_file_atomic(out_path, render_workload_csv(w));
    return kExitOk;
}

int run_compare(const SpecSource& spec_source, const std::string& profile_source,
                const std::string& csv_name, int csv_cores, int trials,
                std::uint64_t seed, const std::string& out_path,
                const std::string& format) {
    if (trials < 1) {
        throw UsageError("--trials must be >= 1");
    }
    std::string label;
    const corepool::WorkloadSpec spec = spec_source.resolve(label);
    const corepool::ServerProfile profile =
        resolve_profile(profile_source, csv_name, csv_cores);
    const corepool::ComparisonReport report =
        corepool::run_trials(spec, profile, trials, seed, label);
    if (!out_path.empty()) {
        write_file_atomic(out_path, render_report(report, format));
    }
    print_summary(report);
    return kExitOk;
}

int run_reproduce(bool all, std::optional<int> usecase, const std::string& outdir,
                  const std::string& format) {
    if (all == usecase.has_value()) {
        throw UsageError("exactly one of --all and --usecase is required");
    }
    if (usecase && (*usecase < 1 || *usecase > 3)) {
        throw UsageError("--usecase must be 1, 2 or 3");
    }
    std::vector<int> usecases;
    if (all) {
        usecases = {1, 2, 3};
    } else {
        usecases = {*usecase};
    }
    constexpr int kTrials = 20;

    std::ostringstream summary;
    summary << "# Shared vs separate CPU allocation\n\n"
            << "20 trials per cell; trial t of use case u draws its workload with seed "
               "1000 + 100*u + t.\n\n"
            << "| use case | profile | shared cores (median) | separate cores (median) "
               "| core savings % (median) | shared W (median) | separate W (median) "
               "| power savings % (median) |\n"
            << "|---|---|---|---|---|---|---|---|\n";

    for (int uc : usecases) {
        const std::uint64_t base_seed = 1000 + 100 * static_cast<std::uint64_t>(uc);
        for (std::string_view profile_name : corepool::bundled_profile_names()) {
            const corepool::ServerProfile& profile = corepool::bundled_profile(profile_name);
            const corepool::ComparisonReport report =
                corepool::run_trials(corepool::usecase_spec(uc), profile, kTrials,
                                     base_seed, "usecase-" + std::to_string(uc));
            const std::string stem =
                "usecase" + std::to_string(uc) + "-" + std::string(profile_name);
            const std::string ext = format == "json" ? ".json" : ".csv";
            write_file_atomic(fs::path(outdir) / (stem + ext),
                              render_report(report, format));
            summary << "| " << uc << " | " << profile_name << " | "
                    << report.stats.shared_cores.median << " | "
                    << report.stats.separate_cores.median << " | "
                    << fmt_pct(report.stats.core_savings_pct.median) << " | "
                    << fmt_pct(report.stats.shared_watts.median) << " | "
                    << fmt_pct(report.stats.separate_watts.median) << " | "
                    << fmt_pct(report.stats.power_savings_pct.median) << " |\n";
            std::cout << "wrote " << (fs::path(outdir) / (stem + ext)).string() << "\n";
        }
    }
    write_file_atomic(fs::path(outdir) / "summary.md", summary.str());
    std::cout << "wrote " << (fs::path(outdir) / "summary.md").string() << "\n";
    return kExitOk;
}

int run_power_curve(const std::string& profile_source, const std::string& csv_name,
                    int csv_cores, int steps, const std::string& out_path) {
    if (steps < 2) {
        throw UsageError("--steps must be >= 2");
    }
    const corepool::ServerProfile profile =
        resolve_profile(profile_source, csv_name, csv_cores);
    std::ostringstream out;
    out << "load,watts\n";
    for (int i = 0; i < steps; ++i) {
        const double load = static_cast<double>(i) / (steps - 1);
        out << corepool::format_double(load) << ','
            << corepool::format_double(corepool::power_at_load(profile, load)) << '\n';
    }
    if (out_path.empty()) {
        std::cout << out.str();
    } else {
        write_file_atomic(out_path, out.str());
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Shared CPU-pool packing and power comparison for SDR/SDN process mixes"};
    app.require_subcommand(1);

    // generate
    auto* generate = app.add_subcommand("generate", "Draw a workload and write it as CSV");
    SpecSource gen_spec;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    generate->add_option("--usecase", gen_spec.usecase, "Preset use case (1-3)");
    generate->add_option("--spec", gen_spec.spec_file, "Workload spec JSON file");
    generate->add_option("--seed", gen_seed, "Generator seed (default 0)");
    generate->add_option("-o,--output", gen_out, "Output CSV path")->required();

    // compare
    auto* compare = app.add_subcommand(
        "compare", "Run repeated trials of shared vs separate allocation");
    SpecSource cmp_spec;
    std::string cmp_profile, cmp_profile_name, cmp_out, cmp_format = "csv";
    int cmp_profile_cores = 0, cmp_trials = 20;
    std::uint64_t cmp_seed = 0;
    compare->add_option("--usecase", cmp_spec.usecase, "Preset use case (1-3)");
    compare->add_option("--spec", cmp_spec.spec_file, "Workload spec JSON file");
    compare->add_option("--profile", cmp_profile, "Bundled profile name or file path")
        ->required();
    compare->add_option("--profile-name", cmp_profile_name, "Name for CSV profiles");
    compare->add_option("--profile-cores", cmp_profile_cores,
                        "Cores per server for CSV profiles");
    compare->add_option("--trials", cmp_trials, "Number of trials (default 20)");
    compare->add_option("--seed", cmp_seed, "Base seed; trial t uses seed+t (default 0)");
    compare->add_option("-o,--output", cmp_out, "Report output path");
    compare->add_option("--format", cmp_format, "Report format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    // reproduce
    auto* reproduce = app.add_subcommand(
        "reproduce", "Run the fixed-seed use-case x profile grid and a summary table");
    bool rep_all = false;
    std::optional<int> rep_usecase;
    std::string rep_outdir = "reproduction", rep_format = "json";
    reproduce->add_flag("--all", rep_all, "All three use cases");
    reproduce->add_option("--usecase", rep_usecase, "Single use case (1-3)");
    reproduce->add_option("-o,--outdir", rep_outdir,
                          "Output directory (default ./reproduction)");
    reproduce->add_option("--format", rep_format, "Per-cell report format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    // power-curve
    auto* power_curve =
        app.add_subcommand("power-curve", "Sample a profile's load->watts curve as CSV");
    std::string pc_profile, pc_profile_name, pc_out;
    int pc_profile_cores = 0, pc_steps = 11;
    power_curve->add_option("--profile", pc_profile, "Bundled profile name or file path")
        ->required();
    power_curve->add_option("--profile-name", pc_profile_name, "Name for CSV profiles");
    power_curve->add_option("--profile-cores", pc_profile_cores,
                            "Cores per server for CSV profiles");
    power_curve->add_option("--steps", pc_steps, "Sample count (default 11)");
    power_curve->add_option("-o,--output", pc_out, "Output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (generate->parsed()) {
            return run_generate(gen_spec, gen_seed, gen_out);
        }
        if (compare->parsed()) {
            return run_compare(cmp_spec, cmp_profile, cmp_profile_name,
                               cmp_profile_cores, cmp_trials, cmp_seed, cmp_out,
                               cmp_format);
        }
        if (reproduce->parsed()) {
            return run_reproduce(rep_all, rep_usecase, rep_outdir, rep_format);
        }
        if (power_curve->parsed()) {
            return run_power_curve(pc_profile, pc_profile_name, pc_profile_cores,
                                   pc_steps, pc_out);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const corepool::InvalidUsecaseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}
