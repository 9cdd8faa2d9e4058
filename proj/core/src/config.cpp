#include "schlab/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "json.hpp"
#include "schlab/io.hpp"

using nlohmann::json;

namespace schlab {

RunConfig::RunConfig() {
    model = ModelSpec::default_model(grid);
    scaling = ScalingSpec::clt({1e-2, 3e-3, 1e-3, 3e-4, 1e-4});
}

namespace {

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
    throw std::invalid_argument("config field '" + field + "': " + why);
}

void check_keys(const json& obj, const std::string& where,
                const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            bad_field(where.empty() ? it.key() : where + "." + it.key(), "unknown field");
}

double get_num(const json& obj, const std::string& where, const std::string& key,
               double fallback, bool* present = nullptr) {
    if (!obj.contains(key)) {
        if (present) *present = false;
        return fallback;
    }
    if (present) *present = true;
    if (!obj[key].is_number()) bad_field(where + "." + key, "expected a number");
    return obj[key].get<double>();
}

Sigma parse_sigma(const json& j) {
    if (!j.is_object()) bad_field("model.sigma", "expected an object");
    check_keys(j, "model.sigma", {"kind", "value"});
    const std::string kind = j.value("kind", "constant");
    const double value = get_num(j, "model.sigma", "value", 1.0);
    if (kind == "constant") return Sigma::constant(value);
    if (kind == "cosine") return Sigma::cosine();
    if (kind == "rational_bounded") return Sigma::rational_bounded(value);
    bad_field("model.sigma.kind",
              "unknown choice '" + kind +
                  "' (registry: constant, cosine, rational_bounded; "
                  "H.1 admits only bounded Lipschitz entries)");
}

InitialDatum parse_u0(const json& j) {
    if (!j.is_object()) bad_field("model.u0", "expected an object");
    check_keys(j, "model.u0", {"kind", "k", "amp"});
    InitialDatum u;
    const std::string kind = j.value("kind", "single_mode");
    if (kind == "single_mode")
        u.kind = InitialDatum::Kind::single_mode;
    else if (kind == "smooth_bump")
        u.kind = InitialDatum::Kind::smooth_bump;
    else if (kind == "zero")
        u.kind = InitialDatum::Kind::zero;
    else
        bad_field("model.u0.kind", "unknown choice '" + kind +
                                       "' (registry: single_mode, smooth_bump, zero; "
                                       "H.3/H.4 admit only continuous Holder entries)");
    if (j.contains("k")) {
        if (!j["k"].is_number_integer()) bad_field("model.u0.k", "expected an integer");
        u.k = j["k"].get<int>();
    }
    u.amp = get_num(j, "model.u0", "amp", 1.0);
    return u;
}

ScalingSpec parse_scaling(const json& j) {
    if (!j.is_object()) bad_field("scaling", "expected an object");
    check_keys(j, "scaling", {"eps", "h"});
    std::vector<double> eps;
    if (j.contains("eps")) {
        if (!j["eps"].is_array()) bad_field("scaling.eps", "expected an array of numbers");
        for (const auto& e : j["eps"]) {
            if (!e.is_number()) bad_field("scaling.eps", "expected numbers");
            eps.push_back(e.get<double>());
        }
    } else {
        eps = {1e-2, 3e-3, 1e-3, 3e-4, 1e-4};
    }
    ScalingSpec s;
    s.eps_list = eps;
    if (j.contains("h")) {
        const json& h = j["h"];
        if (!h.is_object()) bad_field("scaling.h", "expected an object");
        check_keys(h, "scaling.h", {"kind", "theta"});
        const std::string kind = h.value("kind", "one");
        if (kind == "one")
            s.kind = ScalingSpec::HKind::one;
        else if (kind == "inv_sqrt")
            s.kind = ScalingSpec::HKind::inv_sqrt;
        else if (kind == "power")
            s.kind = ScalingSpec::HKind::power;
        else if (kind == "log")
            s.kind = ScalingSpec::HKind::log_family;
        else
            bad_field("scaling.h.kind", "unknown choice '" + kind + "'");
        s.theta = get_num(h, "scaling.h", "theta", 0.25);
    }
    return s;
}

}  // namespace

RunConfig parse_config_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("config root must be an object");
    check_keys(j, "", {"study", "seed", "replicas", "output_dir", "grid", "model", "scaling",
                       "norms", "params"});

    RunConfig cfg;
    if (!j.contains("study") || !j["study"].is_string())
        bad_field("study", "required string (simulate|clt|holder|mdp|kernel|rate)");
    cfg.study = j["study"].get<std::string>();

    if (!j.contains("seed"))
        bad_field("seed", "required; runs never default to wall-clock seeds");
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
        bad_field("seed", "expected a non-negative integer");
    cfg.seed = j["seed"].get<std::uint64_t>();
    cfg.seed_set = true;

    if (j.contains("replicas")) {
        if (!j["replicas"].is_number_integer()) bad_field("replicas", "expected an integer");
        cfg.replicas = j["replicas"].get<int>();
    }
    if (j.contains("output_dir")) {
        if (!j["output_dir"].is_string()) bad_field("output_dir", "expected a string");
        cfg.output_dir = j["output_dir"].get<std::string>();
    }

    if (j.contains("grid")) {
        const json& g = j["grid"];
        if (!g.is_object()) bad_field("grid", "expected an object");
        check_keys(g, "grid", {"d", "n", "T", "nt"});
        if (g.contains("d")) cfg.grid.d = g["d"].get<int>();
        if (g.contains("n")) cfg.grid.n = g["n"].get<int>();
        cfg.grid.T = get_num(g, "grid", "T", cfg.grid.T);
        if (g.contains("nt")) cfg.grid.nt = g["nt"].get<int>();
    }

    std::array<double, 4> fc{1.0, 0.0, -1.0, 0.0};
    Sigma sig = Sigma::constant(1.0);
    InitialDatum u0{InitialDatum::Kind::single_mode, 1, 1.0};
    double gamma = 1.0;
    if (j.contains("model")) {
        const json& m = j["model"];
        if (!m.is_object()) bad_field("model", "expected an object");
        check_keys(m, "model", {"f", "sigma", "u0", "gamma"});
        if (m.contains("f")) {
            if (!m["f"].is_array() || m["f"].size() != 4)
                bad_field("model.f", "expected [a3, a2, a1, a0]");
            for (int i = 0; i < 4; ++i) fc[static_cast<std::size_t>(i)] = m["f"][static_cast<std::size_t>(i)].get<double>();
        }
        if (m.contains("sigma")) sig = parse_sigma(m["sigma"]);
        if (m.contains("u0")) u0 = parse_u0(m["u0"]);
        gamma = get_num(m, "model", "gamma", 1.0);
    }
    cfg.model = ModelSpec::unchecked(cfg.grid, fc, sig, u0, gamma);

    if (j.contains("scaling")) cfg.scaling = parse_scaling(j["scaling"]);
    cfg.scaling.eps_list.shrink_to_fit();

    if (j.contains("norms")) {
        const json& n = j["norms"];
        if (!n.is_object()) bad_field("norms", "expected an object");
        check_keys(n, "norms", {"p", "q", "alpha"});
        cfg.norms.p = get_num(n, "norms", "p", cfg.norms.p);
        cfg.norms.q = get_num(n, "norms", "q", cfg.norms.q);
        cfg.norms.alpha = get_num(n, "norms", "alpha", cfg.norms.alpha);
    }

    if (j.contains("params")) {
        const json& p = j["params"];
        if (!p.is_object()) bad_field("params", "expected an object");
        check_keys(p, "params",
                   {"holder_process", "holder_band_lo", "holder_band_hi", "simulate_eps",
                    "binary_trajectory", "rate_tolerance", "homogeneity_tolerance", "mdp_probe"});
        if (p.contains("holder_process")) {
            if (!p["holder_process"].is_string())
                bad_field("params.holder_process", "expected a string");
            cfg.params.holder_process = p["holder_process"].get<std::string>();
        }
        cfg.params.holder_band_lo = get_num(p, "params", "holder_band_lo", -1.0);
        cfg.params.holder_band_hi = get_num(p, "params", "holder_band_hi", -1.0);
        cfg.params.simulate_eps = get_num(p, "params", "simulate_eps", 0.0);
        if (p.contains("binary_trajectory")) {
            if (!p["binary_trajectory"].is_boolean())
                bad_field("params.binary_trajectory", "expected a boolean");
            cfg.params.binary_trajectory = p["binary_trajectory"].get<bool>();
        }
        cfg.params.rate_tolerance = get_num(p, "params", "rate_tolerance", 0.05);
        cfg.params.homogeneity_tolerance = get_num(p, "params", "homogeneity_tolerance", 0.01);
        if (p.contains("mdp_probe")) {
            if (!p["mdp_probe"].is_boolean()) bad_field("params.mdp_probe", "expected a boolean");
            cfg.params.mdp_probe = p["mdp_probe"].get<bool>();
        }
    }
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    return parse_config_json(read_text_file(path));
}

std::vector<std::string> validate_config(const RunConfig& cfg) {
    std::vector<std::string> diags;

    static const std::set<std::string> studies{"simulate", "clt", "holder", "mdp", "kernel", "rate"};
    if (!studies.count(cfg.study))
        diags.push_back("study: unknown study '" + cfg.study + "'");
    if (!cfg.seed_set) diags.push_back("seed: required, no wall-clock default");
    if (cfg.replicas < 1) diags.push_back("replicas: must be >= 1");

    try {
        cfg.grid.validate();
    } catch (const std::exception& e) {
        diags.push_back(std::string("grid: ") + e.what());
    }

    if (!(cfg.model.f_coeffs[0] > 0.0))
        diags.push_back("model.f: violates H.2 — drift must be a degree-3 polynomial with "
                        "positive dominant coefficient (a3 > 0)");
    if (!(cfg.model.gamma > 0.0 && cfg.model.gamma <= 1.0))
        diags.push_back("model.gamma: violates H.4 — initial datum Holder exponent must lie in (0, 1]");
    if (!std::isfinite(cfg.model.sigma.bound) || !std::isfinite(cfg.model.sigma.lipschitz))
        diags.push_back("model.sigma: violates H.1 — registry entry lacks certified bounds");

    try {
        cfg.scaling.validate();
    } catch (const std::exception& e) {
        diags.push_back(std::string("scaling: ") + e.what());
    }

    try {
        cfg.norms.validate();
    } catch (const std::exception& e) {
        diags.push_back(std::string("norms: ") + e.what());
    }

    // the Holder band constraint applies whenever a Holder study runs
    if (cfg.study == "holder") {
        try {
            cfg.norms.validate_holder_band(cfg.grid.d, cfg.model.gamma);
        } catch (const std::exception& e) {
            const double cap = 0.5 * (1.0 - cfg.grid.d / 4.0);
            diags.push_back("norms.alpha: " + std::string(e.what()) +
                            " (requires alpha <= gamma/4 = " + format_double(cfg.model.gamma / 4.0) +
                            " and alpha < (1 - d/4)/2 = " + format_double(cap) + ")");
        }
        if (cfg.params.holder_process != "y" && cfg.params.holder_process != "u_eps" &&
            cfg.params.holder_process != "u0")
            diags.push_back("params.holder_process: expected y, u_eps or u0");
    }
    if (cfg.study == "mdp" && cfg.scaling.kind != ScalingSpec::HKind::power)
        diags.push_back("scaling.h: the mdp study requires the power family with theta in (0, 1/2)");
    if (cfg.params.simulate_eps < 0.0 || cfg.params.simulate_eps > 1.0)
        diags.push_back("params.simulate_eps: must lie in [0, 1]");
    return diags;
}

std::string echo_config_json(const RunConfig& cfg) {
    json j;
    j["study"] = cfg.study;
    j["seed"] = cfg.seed;
    j["replicas"] = cfg.replicas;
    j["grid"] = {{"d", cfg.grid.d}, {"n", cfg.grid.n}, {"T", cfg.grid.T}, {"nt", cfg.grid.nt}};
    j["model"] = {
        {"f", cfg.model.f_coeffs},
        {"sigma", {{"kind", cfg.model.sigma.name()}, {"value", cfg.model.sigma.param}}},
        {"u0", {{"kind", cfg.model.u0.name()}, {"k", cfg.model.u0.k}, {"amp", cfg.model.u0.amp}}},
        {"gamma", cfg.model.gamma}};
    j["scaling"] = {{"eps", cfg.scaling.eps_list},
                    {"h", {{"kind", cfg.scaling.h_name()}, {"theta", cfg.scaling.theta}}}};
    j["norms"] = {{"p", cfg.norms.p}, {"q", cfg.norms.q}, {"alpha", cfg.norms.alpha}};
    j["params"] = {{"holder_process", cfg.params.holder_process},
                   {"holder_band_lo", cfg.params.holder_band_lo},
                   {"holder_band_hi", cfg.params.holder_band_hi},
                   {"simulate_eps", cfg.params.simulate_eps},
                   {"binary_trajectory", cfg.params.binary_trajectory},
                   {"rate_tolerance", cfg.params.rate_tolerance},
                   {"homogeneity_tolerance", cfg.params.homogeneity_tolerance},
                   {"mdp_probe", cfg.params.mdp_probe}};
    return j.dump();
}

std::string config_digest(const RunConfig& cfg) {
    return hex64(fnv1a64(echo_config_json(cfg)));
}

}  // namespace schlab
