#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"
#include "stokeshs/runconfig.hpp"

using namespace stokeshs;

int main(int argc, char** argv) {
    CLI::App app{"half-space Stokes boundary-layer kernels and blow-up scans"};
    app.require_subcommand(1);

    std::string config_path;
    int dim = 0;
    double alpha = -1.0, eps = -1.0, rr = -1.0;
    std::string deltas_str, out_dir, component_str;
    bool deterministic = false;

    app.add_option("--config", config_path, "configuration file (INI sections)");
    app.add_option("--dim", dim, "spatial dimension (2 or 3)");
    app.add_option("--alpha", alpha, "datum amplitude");
    app.add_option("--eps", eps, "datum log exponent, in (0, 1/4]");
    app.add_option("--component", component_str, "scan component: 1..n or 'n'");
    app.add_option("--r", rr, "scan radius r <= 1/2");
    app.add_option("--deltas", deltas_str, "comma-separated decreasing delta list");
    app.add_option("--out", out_dir, "output directory for CSV files");
    app.add_flag("--deterministic", deterministic, "fixed node sets / byte-stable CSV");

    auto* c_ident = app.add_subcommand("check-identities", "kernel identity suite");
    double fx1 = 0.0, fx2 = 0.0, fxn = 0.1, ft = 0.125;
    bool split = false;
    std::string field_csv;
    auto* c_field = app.add_subcommand("field-eval", "evaluate w and grad w at a point");
    c_field->add_option("--x1", fx1, "tangential coordinate x1")->required();
    c_field->add_option("--x2", fx2, "second tangential coordinate (n = 3)");
    c_field->add_option("--xn", fxn, "normal coordinate x_n > 0")->required();
    c_field->add_option("--t", ft, "time")->required();
    c_field->add_flag("--split", split, "print decomposition parts");
    c_field->add_option("--csv", field_csv, "also append the record to this CSV");
    bool self_test = false, full_grad = false;
    auto* c_scan = app.add_subcommand("scan-blowup", "local gradient-energy scan");
    c_scan->add_flag("--self-test", self_test, "run the closed-form pipeline oracle");
    c_scan->add_flag("--full-gradient", full_grad, "integrate the full gradient");
    auto* c_norms = app.add_subcommand("norms", "global L^q L^p norms + asymptotics");
    std::vector<long> k_list{4, 6, 8, 10};
    auto* c_moll = app.add_subcommand("mollify-study", "mollified-datum study");
    c_moll->add_option("--k", k_list, "smoothing indices");
    auto* c_helm = app.add_subcommand("helmholtz-probe", "Helmholtz projection checks");

    CLI11_PARSE(app, argc, argv);

    cli::RunConfig rc;
    try {
        if (!config_path.empty()) rc = cli::RunConfig::load(config_path);
        rc.apply_env();
        if (dim != 0) rc.dim = dim;
        if (alpha > 0.0) rc.alpha = alpha;
        if (eps > 0.0) rc.eps = eps;
        if (rr > 0.0) rc.scan.r = rr;
        if (!deltas_str.empty()) rc.scan.deltas = cli::parse_double_list(deltas_str);
        if (!out_dir.empty()) rc.output_dir = out_dir;
        if (deterministic) rc.deterministic = true;
        if (!component_str.empty()) {
            if (component_str == "n") {
                rc.scan.component = rc.dim;
            } else {
                rc.scan.component = std::stoi(component_str);
            }
        }
        if (full_grad) rc.scan.full_gradient = true;
        rc.validate();
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return cli::kExitConfigError;
    }

    try {
        if (c_ident->parsed()) return cli::cmd_check_identities(rc);
        if (c_field->parsed())
            return cli::cmd_field_eval(rc, fx1, fx2, fxn, ft, split, field_csv);
        if (c_scan->parsed()) return cli::cmd_scan_blowup(rc, self_test);
        if (c_norms->parsed()) return cli::cmd_norms(rc);
        if (c_moll->parsed()) return cli::cmd_mollify_study(rc, k_list);
        if (c_helm->parsed()) return cli::cmd_helmholtz_probe(rc);
    } catch (const cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return cli::kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::kExitNoConvergence;
    }
    return cli::kExitConfigError;
}
