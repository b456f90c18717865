#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "runner.hpp"

namespace {

using csusy::cli::RunConfig;

void add_common_options(CLI::App* cmd, RunConfig& cfg, std::string& grid_text,
                        std::string& vanish_text) {
    cmd->add_option("--potential", cfg.potential, "free | poschl-teller | oscillator | custom")
        ->capture_default_str();
    cmd->add_option("--k0", cfg.k0, "Poschl-Teller well scale")->capture_default_str();
    cmd->add_option("--potential-file", cfg.potential_file,
                    "two-column (x, V) file for --potential custom");
    cmd->add_option("--bound-state", cfg.bound_state_m, "use the m-th bound state as the seed");
    cmd->add_option("--epsilon", cfg.epsilon, "factorization energy of a vanishing seed");
    cmd->add_option("--vanish", vanish_text, "side on which the seed vanishes: left | right");
    cmd->add_option("--grid", grid_text, "grid as xmin:xmax:n (defaults per potential)");
    cmd->add_option("--x0", cfg.x0, "reference point (must be a grid node)")->capture_default_str();
    cmd->add_option("--out-dir", cfg.out_dir, "output directory")->capture_default_str();
    cmd->add_option("--out", cfg.out_prefix, "output file prefix");
    cmd->add_option("--singular-tol", cfg.singular_tol, "relative floor for |w| (env SINGULAR_TOL)")
        ->capture_default_str();
    cmd->add_option("--spectrum-tol", cfg.spectrum_tol, "eigenvalue match tolerance (env SPECTRUM_TOL)")
        ->capture_default_str();
    cmd->add_option("--levels", cfg.levels, "number of levels to verify")->capture_default_str();
    cmd->add_flag("!--no-auto-widen", cfg.auto_widen, "disable automatic box widening");
}

void finish_config(RunConfig& cfg, const std::string& grid_text, const std::string& vanish_text) {
    if (!grid_text.empty()) cfg.grid = csusy::cli::parse_grid_spec(grid_text);
    if (!vanish_text.empty()) {
        if (vanish_text == "left") {
            cfg.vanish = csusy::Side::Left;
        } else if (vanish_text == "right") {
            cfg.vanish = csusy::Side::Right;
        } else {
            throw CLI::ValidationError("--vanish", "must be 'left' or 'right'");
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"confluent second-order Darboux transforms of 1D Schrodinger potentials"};
    app.require_subcommand(1);

    RunConfig cfg = csusy::cli::config_with_env_defaults();
    std::string grid_text, vanish_text, figure_name;
    std::vector<double> nu_list;

    auto* t = app.add_subcommand("transform", "build a partner potential and write CSV + JSON");
    add_common_options(t, cfg, grid_text, vanish_text);
    auto* t_w0 = t->add_option("--w0", cfg.w0, "integration constant w0");
    auto* t_nu = t->add_option("--nu", cfg.nu, "target nu (w0 derived from it)");
    t_w0->excludes(t_nu);
    t_nu->excludes(t_w0);

    auto* v = app.add_subcommand("verify", "transform, eigensolve the partner and compare spectra");
    add_common_options(v, cfg, grid_text, vanish_text);
    auto* v_w0 = v->add_option("--w0", cfg.w0, "integration constant w0");
    auto* v_nu = v->add_option("--nu", cfg.nu, "target nu (w0 derived from it)");
    v_w0->excludes(v_nu);
    v_nu->excludes(v_w0);

    auto* s = app.add_subcommand("scan-nu", "classify a list of nu values for one seed");
    add_common_options(s, cfg, grid_text, vanish_text);
    s->add_option("--nu-list", nu_list, "comma-separated nu values")->delimiter(',');

    auto* f = app.add_subcommand("figure", "emit the data behind a named figure (fig1 | fig2)");
    f->add_option("name", figure_name, "fig1 | fig2")->required();
    f->add_option("--out-dir", cfg.out_dir, "output directory")->capture_default_str();
    f->add_option("--out", cfg.out_prefix, "output file prefix");
    f->add_option("--levels", cfg.levels, "number of levels to verify")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        finish_config(cfg, grid_text, vanish_text);
        if (t->parsed()) return csusy::cli::cmd_transform(cfg);
        if (v->parsed()) return csusy::cli::cmd_verify(cfg);
        if (s->parsed()) return csusy::cli::cmd_scan_nu(cfg, nu_list);
        if (f->parsed()) return csusy::cli::cmd_figure(figure_name, cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
