#include "schlab/harness.hpp"

#include <chrono>
#include <filesystem>

#include "json.hpp"
#include "schlab/deterministic.hpp"
#include "schlab/io.hpp"
#include "schlab/norms.hpp"
#include "schlab/rate.hpp"
#include "schlab/stochastic.hpp"
#include "schlab/transform.hpp"
#include "schlab/version.hpp"

using nlohmann::json;

namespace schlab {

int exit_code_for(StudyStatus s) {
    switch (s) {
        case StudyStatus::pass: return 0;
        case StudyStatus::fail: return 2;
        case StudyStatus::inconclusive: return 3;
    }
    return 1;
}

namespace {

StudyReport run_simulate(const RunConfig& cfg, Trajectory* traj_out) {
    StudyReport rep;
    rep.study = "simulate";
    const double eps = cfg.params.simulate_eps;
    Trajectory traj;
    if (eps == 0.0) {
        traj = solve_u0(cfg.model);
    } else {
        const NoisePath noise = generate_noise(cfg.seed, cfg.grid);
        traj = solve_u_eps(eps, noise, cfg.model);
    }

    const double sup = sup_lp(traj, cfg.norms.p);
    rep.rows.push_back({"simulate", {}, "sup_lp", sup, 0.0, 1});

    // mass drift: the mean mode is untouched by the deterministic flow
    double mass0 = 0.0, drift = 0.0;
    for (std::size_t k = 0; k < traj.frames.size(); ++k) {
        const SpectralField c = to_spectral(traj.frames[k]);
        if (k == 0)
            mass0 = c.coeffs[0];
        else
            drift = std::max(drift, std::abs(c.coeffs[0] - mass0));
    }
    rep.rows.push_back({"simulate", {}, "mass_drift", drift, 0.0, 1});
    if (eps == 0.0) {
        Assertion a;
        a.name = "simulate_mass_conserved";
        a.value = drift;
        a.lo = 0.0;
        a.hi = 1e-8;
        a.status = drift <= a.hi ? StudyStatus::pass : StudyStatus::fail;
        rep.assertions.push_back(a);
    }
    if (traj_out) *traj_out = std::move(traj);
    return rep;
}

StudyReport run_rate(const RunConfig& cfg) {
    StudyReport rep;
    rep.study = "rate";
    const GridSpec& g = cfg.grid;
    const Trajectory u0 = solve_u0(cfg.model);

    // reference control v(t,x) = sin(t) cos(x1)
    Trajectory vtraj(g);
    for (int k = 0; k <= g.nt; ++k) {
        vtraj.times.push_back(k * g.dt());
        Field f(g);
        const double a = std::sin(k * g.dt());
        for (std::size_t i = 0; i < f.size(); ++i) {
            const auto kk = unrank_mode(i, g);
            f[i] = a * std::cos(g.node(kk[0]));
        }
        vtraj.frames.push_back(std::move(f));
    }
    const Control vstar = make_control(std::move(vtraj));
    const Trajectory target = solve_skeleton(vstar, u0, cfg.model);
    const RateResult rr = rate_eval(target, u0, cfg.model);

    rep.rows.push_back({"rate", {}, "value", rr.value, 0.0, 1});
    rep.rows.push_back({"rate", {}, "expected_half_v2", vstar.l2_cost, 0.0, 1});
    rep.rows.push_back({"rate", {}, "residual_rel", rr.residual_rel, 0.0, 1});

    Assertion a;
    a.name = "rate_round_trip";
    a.value = std::abs(rr.value - vstar.l2_cost) / vstar.l2_cost;
    a.lo = 0.0;
    a.hi = cfg.params.rate_tolerance;
    a.status = a.value <= a.hi ? StudyStatus::pass : StudyStatus::fail;
    rep.assertions.push_back(a);

    Assertion res;
    res.name = "rate_residual";
    res.value = rr.residual_rel;
    res.lo = 0.0;
    res.hi = 0.05;
    res.status = rr.residual_rel <= res.hi ? StudyStatus::pass : StudyStatus::fail;
    rep.assertions.push_back(res);

    for (double c : {2.0, 4.0}) {
        Trajectory scaled = target;
        for (auto& f : scaled.frames)
            for (auto& v : f.values) v *= c;
        const RateResult rc = rate_eval(scaled, u0, cfg.model);
        const double ratio = rc.value / rr.value;
        rep.rows.push_back({"rate", {{"c", format_double(c)}}, "homogeneity_ratio", ratio, 0.0, 1});
        Assertion h;
        h.name = "rate_homogeneity_c" + std::to_string(static_cast<int>(c));
        h.value = std::abs(ratio - c * c) / (c * c);
        h.lo = 0.0;
        h.hi = cfg.params.homogeneity_tolerance;
        h.status = h.value <= h.hi ? StudyStatus::pass : StudyStatus::fail;
        rep.assertions.push_back(h);
    }
    return rep;
}

}  // namespace

StudyReport execute_study(const RunConfig& cfg) {
    if (cfg.study == "simulate") return run_simulate(cfg, nullptr);
    if (cfg.study == "rate") return run_rate(cfg);
    if (cfg.study == "clt") {
        CltStudyConfig c;
        c.model = cfg.model;
        c.eps_list = cfg.scaling.eps_list;
        c.replicas = cfg.replicas;
        c.norms = cfg.norms;
        c.seed = cfg.seed;
        c.jobs = cfg.jobs;
        return clt_study(c);
    }
    if (cfg.study == "holder") {
        HolderStudyConfig c;
        c.model = cfg.model;
        c.process = cfg.params.holder_process == "u0" ? HolderStudyConfig::Process::u0
                    : cfg.params.holder_process == "u_eps" ? HolderStudyConfig::Process::u_eps
                                                           : HolderStudyConfig::Process::y;
        c.eps = cfg.scaling.eps_list.empty() ? 1e-2 : cfg.scaling.eps_list.front();
        c.replicas = cfg.replicas;
        c.norms = cfg.norms;
        c.seed = cfg.seed;
        c.jobs = cfg.jobs;
        c.band_lo = cfg.params.holder_band_lo;
        c.band_hi = cfg.params.holder_band_hi;
        return holder_study(c);
    }
    if (cfg.study == "mdp") {
        MdpStudyConfig c;
        c.model = cfg.model;
        c.scaling = cfg.scaling;
        c.replicas = cfg.replicas;
        c.seed = cfg.seed;
        c.jobs = cfg.jobs;
        c.with_probe = cfg.params.mdp_probe;
        return mdp_scaling_sweep(c);
    }
    if (cfg.study == "kernel") {
        KernelStudyConfig c;
        if (cfg.grid.d == 1) c.dims = {1};
        else if (cfg.grid.d == 2) c.dims = {1, 2};
        else c.dims = {1, 2, 3};
        return kernel_estimate_fits(c);
    }
    throw std::invalid_argument("unknown study: " + cfg.study);
}

std::string summary_json(const RunConfig& cfg, const StudyReport& rep) {
    json j;
    j["study"] = rep.study;
    j["seed"] = cfg.seed;
    j["config_digest"] = config_digest(cfg);
    j["status"] = to_string(rep.status());
    json as = json::array();
    for (const auto& a : rep.assertions) {
        json e;
        e["name"] = a.name;
        e["value"] = a.value;
        e["lo"] = a.lo;
        e["hi"] = a.hi;
        e["status"] = to_string(a.status);
        if (!a.note.empty()) e["note"] = a.note;
        as.push_back(e);
    }
    j["assertions"] = as;
    return j.dump(2) + "\n";
}

RunResult run_study(const RunConfig& cfg) {
    const auto diags = validate_config(cfg);
    if (!diags.empty()) {
        std::string msg = "invalid config:";
        for (const auto& d : diags) msg += "\n  " + d;
        throw std::invalid_argument(msg);
    }

    const auto t0 = std::chrono::steady_clock::now();
    RunResult out;
    out.run_dir = make_run_dir(cfg.output_dir);
    const std::string echo = echo_config_json(cfg);

    std::vector<std::string> artifacts;
    if (cfg.study == "simulate") {
        Trajectory traj;
        out.report = run_simulate(cfg, &traj);
        write_text_file(out.run_dir + "/traj.csv", trajectory_csv(traj, cfg.seed, echo));
        write_text_file(out.run_dir + "/modes.csv", trajectory_modes_csv(traj, cfg.seed, echo));
        artifacts = {"traj.csv", "modes.csv"};
        if (cfg.params.binary_trajectory) {
            write_trajectory_binary(out.run_dir + "/traj.bin", traj);
            artifacts.push_back("traj.bin");
        }
    } else {
        out.report = execute_study(cfg);
    }

    const std::string csv_name = out.report.study + ".csv";
    write_text_file(out.run_dir + "/" + csv_name, study_csv(out.report, cfg.seed, echo));
    artifacts.push_back(csv_name);
    write_text_file(out.run_dir + "/summary.json", summary_json(cfg, out.report));
    artifacts.push_back("summary.json");

    out.status = out.report.status();
    out.exit_code = exit_code_for(out.status);

    const auto t1 = std::chrono::steady_clock::now();
    json manifest;
    manifest["version"] = std::string(kVersion);
    manifest["study"] = cfg.study;
    manifest["seed"] = cfg.seed;
    manifest["jobs"] = cfg.jobs;
    manifest["config"] = nlohmann::json::parse(echo);
    manifest["config_digest"] = config_digest(cfg);
    manifest["output_dir"] = cfg.output_dir;
    manifest["artifacts"] = artifacts;
    manifest["status"] = to_string(out.status);
    manifest["elapsed_seconds"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count() / 1000.0;
    manifest["completed"] = true;
    // written last: a run directory without a manifest is incomplete
    write_text_file(out.run_dir + "/manifest.json", manifest.dump(2) + "\n");
    return out;
}

}  // namespace schlab
