// Command-line front end: run a configured study, validate a config, or
// re-render summaries from a finished run directory.
//
// Exit codes: 0 pass, 1 error, 2 fail, 3 inconclusive.
#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "schlab/config.hpp"
#include "schlab/harness.hpp"
#include "schlab/io.hpp"
#include "schlab/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string resolve_output_dir(const std::string& configured, const std::string& cli_override) {
    std::string dir = configured;
    if (!cli_override.empty()) dir = cli_override;
    if (const char* root = std::getenv("SCHLAB_OUTPUT_ROOT"); root && *root)
        return (fs::path(root) / dir).string();
    return dir;
}

int cmd_run(const std::string& config_path, long long seed_override, int jobs,
            const std::string& output_override) {
    schlab::RunConfig cfg = schlab::parse_config_file(config_path);
    if (seed_override >= 0) cfg.seed = static_cast<std::uint64_t>(seed_override);
    cfg.jobs = jobs;
    cfg.output_dir = resolve_output_dir(cfg.output_dir, output_override);

    const schlab::RunResult res = schlab::run_study(cfg);
    std::cout << "run dir: " << res.run_dir << "\n";
    for (const auto& a : res.report.assertions) {
        std::cout << "  [" << schlab::to_string(a.status) << "] " << a.name
                  << " value=" << schlab::format_double(a.value);
        if (std::isfinite(a.hi)) std::cout << " band=[" << a.lo << ", " << a.hi << "]";
        if (!a.note.empty()) std::cout << "  (" << a.note << ")";
        std::cout << "\n";
    }
    std::cout << "status: " << schlab::to_string(res.status) << "\n";
    return res.exit_code;
}

int cmd_validate(const std::string& config_path) {
    schlab::RunConfig cfg = schlab::parse_config_file(config_path);
    const auto diags = schlab::validate_config(cfg);
    if (!diags.empty()) {
        std::cerr << "config invalid:\n";
        for (const auto& d : diags) std::cerr << "  " << d << "\n";
        return 1;
    }
    std::cout << "config valid; effective resolved config:\n"
              << json::parse(schlab::echo_config_json(cfg)).dump(2) << "\n";
    return 0;
}

int cmd_report(const std::string& dir) {
    fs::path run_dir = dir;
    if (!fs::exists(run_dir / "manifest.json")) {
        // accept an output root: pick the latest completed run
        std::string best;
        if (fs::exists(run_dir))
            for (const auto& e : fs::directory_iterator(run_dir))
                if (e.is_directory() && fs::exists(e.path() / "manifest.json"))
                    if (e.path().filename().string() > best) best = e.path().filename().string();
        if (best.empty()) {
            std::cerr << "no completed run (manifest.json) under " << dir << "\n";
            return 1;
        }
        run_dir /= best;
    }

    const json manifest = json::parse(schlab::read_text_file((run_dir / "manifest.json").string()));
    const json summary = json::parse(schlab::read_text_file((run_dir / "summary.json").string()));
    std::cout << "run: " << run_dir.string() << "\n"
              << "study: " << manifest["study"].get<std::string>()
              << "  seed: " << manifest["seed"] << "  version: "
              << manifest["version"].get<std::string>() << "\n"
              << "status: " << summary["status"].get<std::string>() << "\n";
    for (const auto& a : summary["assertions"]) {
        std::cout << "  [" << a["status"].get<std::string>() << "] " << a["name"].get<std::string>()
                  << " value=" << a["value"].get<double>();
        if (a.contains("note")) std::cout << "  (" << a["note"].get<std::string>() << ")";
        std::cout << "\n";
    }
    for (const auto& art : manifest["artifacts"])
        std::cout << "  artifact: " << art.get<std::string>() << "\n";
    const std::string status = summary["status"].get<std::string>();
    return status == "pass" ? 0 : status == "fail" ? 2 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stochastic Cahn-Hilliard fluctuation laboratory"};
    app.set_version_flag("--version", std::string(schlab::kVersion));
    app.require_subcommand(1);

    std::string config_path, output_override, report_dir;
    long long seed_override = -1;
    int jobs = 1;

    auto* run = app.add_subcommand("run", "execute the study named in the config");
    run->add_option("--config", config_path, "JSON run configuration")->required();
    run->add_option("--seed-override", seed_override, "replace the config seed");
    run->add_option("--jobs", jobs, "worker count for replica cells (results are job-count invariant)");
    run->add_option("--output", output_override, "override the configured output directory");

    auto* validate = app.add_subcommand("validate", "check a config against the model hypotheses");
    validate->add_option("--config", config_path, "JSON run configuration")->required();

    auto* report = app.add_subcommand("report", "re-render a finished run's summary");
    report->add_option("--dir", report_dir, "run directory or output root")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path, seed_override, jobs, output_override);
        if (validate->parsed()) return cmd_validate(config_path);
        if (report->parsed()) return cmd_report(report_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
