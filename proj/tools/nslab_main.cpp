#include <CLI11.hpp>

#include <cstdio>

#include "nslab/experiments.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Pseudo-spectral laboratory for renormalized approximations of the 3D "
                 "stochastic Navier-Stokes equation on the torus"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed_override = 0;
    bool seed_set = false;
    int jobs = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "key=value config file")->required();
        sub->add_option("--out", out_dir, "output directory (default: out_dir from config)");
        sub->add_option("--seed", seed_override, "override the config seed")
            ->each([&](const std::string&) { seed_set = true; });
        sub->add_option("--jobs", jobs, "worker threads (default: hardware)");
    };

    auto* constants = app.add_subcommand("constants", "renormalization constants, identities, continuum ladder");
    auto* noise = app.add_subcommand("noise-check", "covariance oracles and the u1 coupling ladder");
    auto* checks = app.add_subcommand("checks", "exact identities and operator-estimate probes");
    auto* converge = app.add_subcommand("converge", "shared-noise approximation ladder and counterterm study");
    auto* simulate = app.add_subcommand("simulate", "single trajectory of the approximating equation");
    for (auto* sub : {constants, noise, checks, converge, simulate}) add_common(sub);

    CLI11_PARSE(app, argc, argv);

    try {
        nslab::LabConfig cfg = nslab::parse_config_file(config_path);
        if (seed_set) cfg.sim.seed = seed_override;
        nslab::RunOptions opt{out_dir, jobs};
        if (constants->parsed()) return nslab::cmd_constants(cfg, opt);
        if (noise->parsed()) return nslab::cmd_noise_check(cfg, opt);
        if (checks->parsed()) return nslab::cmd_checks(cfg, opt);
        if (converge->parsed()) return nslab::cmd_converge(cfg, opt);
        if (simulate->parsed()) return nslab::cmd_simulate(cfg, opt);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
