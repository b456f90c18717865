#include "runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include <json.hpp>

namespace csusy::cli {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string case_name(NuCase c) {
    switch (c) {
        case NuCase::CaseI: return "bound_state";
        case NuCase::CaseII_Right: return "vanishing_right";
        case NuCase::CaseII_Left: return "vanishing_left";
    }
    return "?";
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Regular: return "regular";
        case Verdict::Boundary: return "boundary";
        case Verdict::Singular: return "singular";
    }
    return "?";
}

std::string effect_name(SpectralEffect::Kind k) {
    switch (k) {
        case SpectralEffect::Kind::Isospectral: return "isospectral";
        case SpectralEffect::Kind::Created: return "created";
        case SpectralEffect::Kind::Deleted: return "deleted";
    }
    return "?";
}

std::filesystem::path out_path(const RunConfig& cfg, const std::string& suffix) {
    std::filesystem::create_directories(cfg.out_dir);
    return std::filesystem::path(cfg.out_dir) / (cfg.out_prefix + suffix);
}

json summary_json(const RunConfig& cfg, const PipelineResult& r) {
    json j;
    j["epsilon"] = r.seed.epsilon;
    j["nu"] = r.transform.classification.nu;
    j["case"] = case_name(r.transform.classification.nu_case);
    j["verdict"] = verdict_name(r.transform.classification.verdict);
    j["effect"] = effect_name(r.transform.effect.kind);
    if (r.transform.effect.n0) {
        j["n0"] = *r.transform.effect.n0;
    } else {
        j["n0"] = nullptr;
    }
    j["w0"] = r.transform.config.w0;
    j["x0"] = r.grid.x(r.transform.config.x0_index);
    j["grid"] = {{"xmin", r.grid.xmin}, {"xmax", r.grid.xmax}, {"n", r.grid.n}};
    if (r.seed.formula_sign != 0) j["seed_sign"] = r.seed.formula_sign;
    j["potential"] = cfg.potential;
    return j;
}

void write_transform_csv(const std::filesystem::path& path, const PipelineResult& r) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    const bool has_state = r.transform.extra_state.has_value();
    out << "x,V,u,w,Vt";
    if (has_state) out << ",psi";
    out << "\n";
    const Grid& g = r.grid;
    for (int i = 0; i < g.n; ++i) {
        out << fmt17(g.x(i)) << ',' << fmt17(r.seed.potential[i]) << ',' << fmt17(r.seed.u[i])
            << ',' << fmt17(r.transform.w[i]) << ',' << fmt17(r.transform.partner[i]);
        if (has_state) out << ',' << fmt17((*r.transform.extra_state)[i]);
        out << "\n";
    }
}

Side parse_side(const std::string& s) {
    if (s == "left") return Side::Left;
    if (s == "right") return Side::Right;
    throw std::invalid_argument("--vanish must be 'left' or 'right'");
}

Grid widen(const Grid& g) {
    // extend each side by 10% of the span in whole steps, keeping h and the
    // parity of n (and therefore every existing node) intact
    const int add = std::max(2, static_cast<int>(std::ceil(0.1 * (g.n - 1))));
    const int extra = add % 2 == 0 ? add : add + 1;
    return make_grid(g.xmin - extra * g.h, g.xmax + extra * g.h, g.n + 2 * extra);
}

std::vector<std::pair<std::string, double>> predicted_spectrum(const Potential& p,
                                                               const SpectralEffect& effect,
                                                               int levels, double threshold) {
    std::vector<std::pair<std::string, double>> expected;
    if (p.has_analytic_spectrum()) {
        const auto base = p.known_spectrum(levels);
        for (std::size_t i = 0; i < base.size(); ++i) {
            if (base[i] < threshold) expected.emplace_back("E" + std::to_string(i), base[i]);
        }
    }
    switch (effect.kind) {
        case SpectralEffect::Kind::Isospectral:
            break;
        case SpectralEffect::Kind::Created: {
            auto it = std::lower_bound(expected.begin(), expected.end(), effect.level,
                                       [](const auto& e, double v) { return e.second < v; });
            expected.insert(it, {"created", effect.level});
            break;
        }
        case SpectralEffect::Kind::Deleted:
            std::erase_if(expected, [&](const auto& e) {
                return std::abs(e.second - effect.level) <= 1e-9;
            });
            break;
    }
    if (static_cast<int>(expected.size()) > levels) {
        expected.resize(static_cast<std::size_t>(levels));
    }
    return expected;
}

json report_json(const VerifyOutcome& v) {
    json j;
    json exp = json::array();
    for (const auto& [label, value] : v.report.expected) {
        exp.push_back({{"label", label}, {"value", value}});
    }
    j["expected"] = exp;
    j["computed"] = v.report.computed;
    json matches = json::array();
    for (const auto& m : v.report.matches) {
        matches.push_back({{"expected_index", m.expected_index},
                           {"computed_index", m.computed_index},
                           {"abs_error", m.abs_error}});
    }
    j["matches"] = matches;
    j["pass"] = v.report.pass;
    j["tol"] = v.report.tol;
    if (std::isfinite(v.report.threshold)) j["threshold"] = v.report.threshold;
    j["effect"] = effect_name(v.effect.kind);
    j["widenings"] = v.widenings;
    j["grid"] = {{"xmin", v.grid.xmin}, {"xmax", v.grid.xmax}, {"n", v.grid.n}};
    return j;
}

}  // namespace

GridSpec parse_grid_spec(const std::string& text) {
    GridSpec spec;
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
        throw std::invalid_argument("grid spec must be xmin:xmax:n, got '" + text + "'");
    }
    std::size_t used = 0;
    spec.xmin = std::stod(text.substr(0, c1));
    spec.xmax = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    const std::string ntext = text.substr(c2 + 1);
    spec.n = std::stoi(ntext, &used);
    if (used != ntext.size()) throw std::invalid_argument("bad grid point count: " + ntext);
    return spec;
}

RunConfig config_with_env_defaults() {
    RunConfig cfg;
    if (const char* s = std::getenv("SINGULAR_TOL")) cfg.singular_tol = std::stod(s);
    if (const char* s = std::getenv("SPECTRUM_TOL")) cfg.spectrum_tol = std::stod(s);
    return cfg;
}

Potential build_potential(const RunConfig& cfg) {
    if (cfg.potential == "free") return Potential::free_particle();
    if (cfg.potential == "poschl-teller") return Potential::poschl_teller(cfg.k0);
    if (cfg.potential == "oscillator") return Potential::harmonic_oscillator();
    if (cfg.potential == "custom") {
        if (cfg.potential_file.empty()) {
            throw std::invalid_argument("custom potential requires --potential-file");
        }
        return load_custom_potential(cfg.potential_file);
    }
    throw std::invalid_argument("unknown potential '" + cfg.potential + "'");
}

Grid resolve_grid(const RunConfig& cfg, const Potential& p) {
    if (cfg.grid) return make_grid(cfg.grid->xmin, cfg.grid->xmax, cfg.grid->n);
    switch (p.kind()) {
        case Potential::Kind::HarmonicOscillator:
            return make_grid(-8.0, 8.0, 1601);
        case Potential::Kind::PoschlTeller:
            return make_grid(-15.0 / p.k0(), 15.0 / p.k0(), 3001);
        case Potential::Kind::FreeParticle: {
            if (!cfg.epsilon || !(*cfg.epsilon < 0.0)) {
                throw std::invalid_argument("free-particle runs need --epsilon < 0");
            }
            const double k = std::sqrt(-*cfg.epsilon);
            return make_grid(-12.0 / k, 12.0 / k, 2401);
        }
        case Potential::Kind::Custom:
            return p.samples().grid;
    }
    throw std::logic_error("unreachable");
}

PipelineResult run_pipeline(const RunConfig& cfg) {
    const bool has_seed_energy = cfg.epsilon.has_value() && cfg.vanish.has_value();
    if (cfg.bound_state_m.has_value() == has_seed_energy) {
        throw std::invalid_argument(
            "choose exactly one seed mode: --bound-state m, or --epsilon e with --vanish side");
    }
    if (cfg.w0.has_value() == cfg.nu.has_value()) {
        throw std::invalid_argument("exactly one of --w0 and --nu must be given");
    }

    Potential p = build_potential(cfg);
    const Grid g = resolve_grid(cfg, p);
    const int x0_index = g.index_of(cfg.x0);

    SeedSolution seed = cfg.bound_state_m ? bound_state(p, *cfg.bound_state_m, g)
                                          : seed_solution(p, *cfg.epsilon, *cfg.vanish, g);

    TransformConfig tc;
    if (cfg.nu) {
        tc = config_from_nu(seed, *cfg.nu, x0_index, cfg.singular_tol);
    } else {
        tc.w0 = *cfg.w0;
        tc.x0_index = x0_index;
        tc.singular_tol = cfg.singular_tol;
    }

    PipelineResult r{std::move(p), g, std::move(seed), {}};
    r.transform = make_transform(r.seed, tc);
    return r;
}

int cmd_transform(const RunConfig& cfg0) {
    RunConfig cfg = cfg0;
    if (cfg.out_prefix.empty()) cfg.out_prefix = "transform";
    try {
        const PipelineResult r = run_pipeline(cfg);
        write_transform_csv(out_path(cfg, ".csv"), r);
        std::ofstream js(out_path(cfg, "_summary.json"));
        js << summary_json(cfg, r).dump(2) << "\n";
        return 0;
    } catch (const SingularTransformError& e) {
        std::cerr << "error: " << e.what() << "\n";
        json j;
        j["verdict"] = "singular";
        j["near_zero_x"] = e.x_near_zero;
        std::ofstream js(out_path(cfg, "_summary.json"));
        js << j.dump(2) << "\n";
        return 2;
    }
}

VerifyOutcome verify_spectrum(const RunConfig& cfg0) {
    RunConfig cfg = cfg0;
    VerifyOutcome out;
    PipelineResult r = run_pipeline(cfg);
    const double threshold = r.potential.scattering_threshold();

    auto solve = [&](const PipelineResult& pr) {
        const TridiagonalOperator op = discretize(pr.transform.partner);
        return lowest_eigenvalues(op, std::min(cfg.levels + 2, op.dim()));
    };

    std::vector<double> computed = solve(r);
    auto expected = predicted_spectrum(r.potential, r.transform.effect, cfg.levels, threshold);

    // widen the box until the top compared level stops moving; custom
    // potentials cannot be widened past their samples
    if (cfg.auto_widen && !expected.empty() && r.potential.kind() != Potential::Kind::Custom) {
        for (int iter = 0; iter < 3; ++iter) {
            const Grid wider = widen(r.grid);
            RunConfig wcfg = cfg;
            wcfg.grid = GridSpec{wider.xmin, wider.xmax, wider.n};
            PipelineResult wr = run_pipeline(wcfg);
            std::vector<double> wcomputed = solve(wr);
            const std::size_t top = std::min(expected.size(), computed.size()) - 1;
            const double moved = std::abs(wcomputed[top] - computed[top]);
            if (moved < 1e-6) break;
            r = std::move(wr);
            computed = std::move(wcomputed);
            ++out.widenings;
        }
    }

    out.report = compare_spectra(expected, computed, cfg.spectrum_tol, threshold);
    out.grid = r.grid;
    out.effect = r.transform.effect;
    return out;
}

int cmd_verify(const RunConfig& cfg0) {
    RunConfig cfg = cfg0;
    if (cfg.out_prefix.empty()) cfg.out_prefix = "verify";
    try {
        const VerifyOutcome v = verify_spectrum(cfg);
        std::ofstream js(out_path(cfg, "_spectrum.json"));
        js << report_json(v).dump(2) << "\n";
        return v.report.pass ? 0 : 1;
    } catch (const SingularTransformError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

std::vector<ScanRow> scan_nu(const RunConfig& cfg, const std::vector<double>& nu_list) {
    RunConfig base = cfg;
    base.nu.reset();
    base.w0.reset();

    Potential p = build_potential(base);
    const Grid g = resolve_grid(base, p);
    const int x0_index = g.index_of(base.x0);
    const SeedSolution seed = base.bound_state_m
                                  ? bound_state(p, *base.bound_state_m, g)
                                  : seed_solution(p, *base.epsilon, *base.vanish, g);

    std::vector<ScanRow> rows;
    rows.reserve(nu_list.size());
    for (double nu : nu_list) {
        const TransformConfig tc = config_from_nu(seed, nu, x0_index, base.singular_tol);
        const NuClassification cls = classify(seed, tc);
        const SampledFunction w = build_w(seed, tc);
        ScanRow row;
        row.nu = cls.nu;
        row.verdict = cls.verdict;
        row.min_abs_w = std::abs(w[0]);
        for (int i = 1; i < g.n; ++i) row.min_abs_w = std::min(row.min_abs_w, std::abs(w[i]));
        if (cls.verdict == Verdict::Singular) {
            row.effect = "singular";
        } else if (cls.nu_case == NuCase::CaseI) {
            row.effect = cls.verdict == Verdict::Boundary ? "deleted" : "isospectral";
        } else {
            row.effect = cls.verdict == Verdict::Boundary ? "isospectral" : "created";
        }
        rows.push_back(row);
    }
    return rows;
}

int cmd_scan_nu(const RunConfig& cfg0, const std::vector<double>& nu_list) {
    RunConfig cfg = cfg0;
    if (cfg.out_prefix.empty()) cfg.out_prefix = "scan";
    const auto rows = scan_nu(cfg, nu_list);
    std::ofstream out(out_path(cfg, ".csv"));
    out << "nu,verdict,min_abs_w,effect\n";
    for (const auto& row : rows) {
        out << fmt17(row.nu) << ',' << verdict_name(row.verdict) << ',' << fmt17(row.min_abs_w)
            << ',' << row.effect << "\n";
    }
    return 0;
}

RunConfig figure_config(const std::string& name) {
    RunConfig cfg = config_with_env_defaults();
    cfg.potential = "oscillator";
    cfg.grid = GridSpec{-10.0, 10.0, 2001};
    cfg.x0 = 0.0;
    if (name == "fig1") {
        cfg.bound_state_m = 3;  // eps = E_3 = 7
        cfg.nu = -1.25;
        cfg.out_prefix = "fig1";
    } else if (name == "fig2") {
        cfg.epsilon = 8.0;
        cfg.vanish = Side::Left;
        cfg.w0 = -5.0;
        cfg.out_prefix = "fig2";
    } else {
        throw std::invalid_argument("unknown figure '" + name + "' (expected fig1 or fig2)");
    }
    return cfg;
}

int cmd_figure(const std::string& name, RunConfig base) {
    RunConfig cfg = figure_config(name);
    cfg.out_dir = base.out_dir;
    if (!base.out_prefix.empty()) cfg.out_prefix = base.out_prefix;
    cfg.spectrum_tol = base.spectrum_tol;
    cfg.singular_tol = base.singular_tol;
    cfg.levels = base.levels;

    const PipelineResult r = run_pipeline(cfg);
    std::ofstream out(out_path(cfg, ".csv"));
    out << "x,V,Vt\n";
    for (int i = 0; i < r.grid.n; ++i) {
        out << fmt17(r.grid.x(i)) << ',' << fmt17(r.seed.potential[i]) << ','
            << fmt17(r.transform.partner[i]) << "\n";
    }
    std::ofstream js(out_path(cfg, "_summary.json"));
    js << summary_json(cfg, r).dump(2) << "\n";

    const VerifyOutcome v = verify_spectrum(cfg);
    std::ofstream rjs(out_path(cfg, "_spectrum.json"));
    rjs << report_json(v).dump(2) << "\n";
    return v.report.pass ? 0 : 1;
}

}  // namespace csusy::cli
