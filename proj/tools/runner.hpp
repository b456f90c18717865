#pragma once

#include <optional>
#include <string>
#include <vector>

#include "csusy/confluent.hpp"
#include "csusy/potentials.hpp"
#include "csusy/spectral.hpp"

namespace csusy::cli {

struct GridSpec {
    double xmin = 0.0;
    double xmax = 0.0;
    int n = 0;
};

GridSpec parse_grid_spec(const std::string& text);  // "xmin:xmax:n"

struct RunConfig {
    std::string potential = "oscillator";  // free | poschl-teller | oscillator | custom
    double k0 = 1.0;
    std::string potential_file;

    std::optional<int> bound_state_m;
    std::optional<double> epsilon;
    std::optional<Side> vanish;

    std::optional<double> w0;
    std::optional<double> nu;

    std::optional<GridSpec> grid;
    double x0 = 0.0;

    std::string out_dir = ".";
    std::string out_prefix;

    double singular_tol = 1e-8;  // env SINGULAR_TOL
    double spectrum_tol = 5e-3;  // env SPECTRUM_TOL
    int levels = 6;
    bool auto_widen = true;
};

/// Applies SINGULAR_TOL / SPECTRUM_TOL environment overrides.
RunConfig config_with_env_defaults();

struct PipelineResult {
    Potential potential;
    Grid grid;
    SeedSolution seed;
    ConfluentTransform transform;
};

Potential build_potential(const RunConfig& cfg);
Grid resolve_grid(const RunConfig& cfg, const Potential& p);
PipelineResult run_pipeline(const RunConfig& cfg);

/// transform: CSV columns (x, V, u, w, Vt and the extra state when present)
/// plus a JSON summary. Exit 0 on a regular or boundary transform, 2 when
/// the configuration is singular (summary still written, with the location
/// of the near-zero of w).
int cmd_transform(const RunConfig& cfg);

struct VerifyOutcome {
    SpectrumReport report;
    Grid grid;
    int widenings = 0;
    SpectralEffect effect;
};

VerifyOutcome verify_spectrum(const RunConfig& cfg);

/// verify: eigensolve the partner potential and compare against the spectrum
/// predicted by the transform's effect. Exit 0 iff the report passes.
int cmd_verify(const RunConfig& cfg);

struct ScanRow {
    double nu = 0.0;
    Verdict verdict = Verdict::Singular;
    double min_abs_w = 0.0;
    std::string effect;
};

std::vector<ScanRow> scan_nu(const RunConfig& cfg, const std::vector<double>& nu_list);

/// scan-nu: one CSV row per nu with verdict, min |w| and spectral effect.
/// Singular rows are recorded, not fatal.
int cmd_scan_nu(const RunConfig& cfg, const std::vector<double>& nu_list);

/// figure: named parameter presets (fig1, fig2) emitting the (x, V, Vt)
/// curves and the spectrum verification report.
int cmd_figure(const std::string& name, RunConfig cfg);

/// Preset used by `figure`; exposed for tests.
RunConfig figure_config(const std::string& name);

}  // namespace csusy::cli
