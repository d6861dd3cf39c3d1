#include <iostream>

#include <CLI11.hpp>

#include "expsum/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{
        "expsum: least-squares approximation of signals on [-pi, pi] "
        "by sums of exponentials"};
    app.require_subcommand(1);

    expsum::FitOptions fit_options;
    CLI::App* fit = app.add_subcommand(
        "fit", "fit n frequencies to a signal and write a report");
    fit->add_option("--signal", fit_options.signal, "sign | csv:PATH")
        ->capture_default_str();
    fit->add_option("--n", fit_options.n, "number of frequencies")
        ->capture_default_str();
    fit->add_option("--starts", fit_options.starts,
                    "independent optimizer starts")
        ->capture_default_str();
    fit->add_option("--seed", fit_options.seed, "start-point seed")
        ->capture_default_str();
    fit->add_option("--out", fit_options.out_path,
                    "report file (omit to print f_min only)");

    expsum::PhiMapOptions map_options;
    CLI::App* map = app.add_subcommand(
        "phi-map", "tabulate the deflection over a frequency grid");
    map->add_option("--signal", map_options.signal, "sign")
        ->capture_default_str();
    map->add_option("--n", map_options.mode,
                    "1 (single frequency) | 2cluster (coincident pair)")
        ->capture_default_str();
    map->add_option("--u", map_options.u_range, "MIN:MAX:STEPS for Re lambda")
        ->capture_default_str();
    map->add_option("--v", map_options.v_range, "MIN:MAX:STEPS for Im lambda")
        ->capture_default_str();
    map->add_option("--out", map_options.out_path, "CSV output file")
        ->required();

    expsum::ReproduceOptions reproduce_options;
    CLI::App* reproduce = app.add_subcommand(
        "reproduce-paper",
        "recompute the sign case-study reference values and check them");
    reproduce->add_flag("--inject-error", reproduce_options.inject_error,
                        "perturb results to exercise the failure exit code");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return expsum::kExitUsage;
    }

    try {
        if (fit->parsed()) {
            return expsum::run_fit(fit_options, std::cout, std::cerr);
        }
        if (map->parsed()) {
            return expsum::run_phi_map(map_options, std::cout, std::cerr);
        }
        return expsum::run_reproduce(reproduce_options, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return expsum::kExitUsage;
    }
}
