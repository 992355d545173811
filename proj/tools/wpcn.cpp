// wpcn: time allocation solvers and Monte Carlo runs from a config file.

#include <wpcn/cli.hpp>

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Time allocation for wireless powered communication networks"};
    app.require_subcommand(1);
    app.fallthrough();

    wpcn::RunManifest m;
    std::string format = "csv";
    std::uint64_t seed = 0;
    int trials = 0;
    bool quiet = false, verbose = false;

    app.add_option("--config", m.config_path, "configuration file (key = value, or JSON output of a run)")
        ->required();
    app.add_option("--out", m.output_path, "output file")->required();
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    auto* seed_opt = app.add_option("--seed", seed, "override the config seed");
    auto* trials_opt = app.add_option("--trials", trials, "override the number of Monte Carlo trials");
    app.add_option("--threads", m.threads, "simulation threads (0 = all cores)");
    auto* q = app.add_flag("--quiet", quiet, "no progress output");
    app.add_flag("--verbose", verbose, "print solver statistics")->excludes(q);

    for (const auto& [cmd, name] : wpcn::command_names)
        app.add_subcommand(std::string(name))->callback([&m, c = cmd] { m.command = c; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : wpcn::exit_code::config_error;
    }

    m.output_format = format == "json" ? wpcn::Format::json : wpcn::Format::csv;
    if (*seed_opt)
        m.seed_override = seed;
    if (*trials_opt)
        m.trials_override = trials;
    m.verbosity = quiet ? wpcn::Verbosity::quiet : verbose ? wpcn::Verbosity::verbose : wpcn::Verbosity::normal;
    return wpcn::run(m);
}
