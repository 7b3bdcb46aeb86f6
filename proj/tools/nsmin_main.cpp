// Command-line front end: nsmin {run,validate,sweep} --config PATH [--out DIR] [--parallel K] [--quiet]

#include <iostream>

#include <CLI11.hpp>

#include "nsmin/commands.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"Online nonsubmodular minimization simulator"};
    app.require_subcommand(1);

    std::string config;
    std::string out;
    int parallel = 0;
    bool quiet = false;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config, "Run configuration (JSON)")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", out, "Output directory (overrides output_dir)");
        sub->add_option("--parallel", parallel, "Concurrent runs")->check(CLI::PositiveNumber);
        sub->add_flag("--quiet", quiet, "Suppress the summary table");
    };
    CLI::App* run = app.add_subcommand("run", "Execute every seed of a configuration");
    CLI::App* validate = app.add_subcommand("validate", "Check a sampled cost and estimate alpha, beta, L");
    CLI::App* sweep = app.add_subcommand("sweep", "Cross product over delays, algorithms and step multipliers");
    for (CLI::App* sub : {run, validate, sweep})
        add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : nsmin::kExitConfig;
    }

    nsmin::CliOptions opts;
    if (!out.empty())
        opts.out = out;
    if (parallel > 0)
        opts.parallel = parallel;
    opts.quiet = quiet;

    if (*run)
        return nsmin::cmd_run(config, opts, std::cout, std::cerr);
    if (*validate)
        return nsmin::cmd_validate(config, opts, std::cout, std::cerr);
    return nsmin::cmd_sweep(config, opts, std::cout, std::cerr);
}
