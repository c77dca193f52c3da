#include <chrono>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "shiftlab/report.hpp"

namespace {

struct CommonOpts {
    std::string path;
    long long max_nodes = 1000000;
    long long max_cells = 64;

    shiftlab::SearchBudget budget() const { return {max_cells, max_nodes}; }
};

void add_common(CLI::App* sub, CommonOpts& c) {
    sub->add_option("spec", c.path, "spec file")->required()->check(CLI::ExistingFile);
    sub->add_option("--max-nodes", c.max_nodes, "search node budget");
    sub->add_option("--max-cells", c.max_cells, "torus cell budget");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"shiftlab: matrix criteria and bounded search for graph-generated shifts"};
    app.require_subcommand(1);

    CommonOpts c_analyze, c_nonempty, c_finite, c_epairs, c_higher, c_periodic, c_oracle, c_growth;
    int oracle_max = 6;
    bool skip_oracle = false;
    std::vector<int> window, period, torus;
    long long list_limit = 16;
    int growth_max = 4;

    auto* sub_analyze = app.add_subcommand(
        "analyze", "run every matrix criterion per component, cross-checked by bounded search");
    add_common(sub_analyze, c_analyze);
    sub_analyze->add_option("--oracle-max", oracle_max, "bounded search side limit");
    sub_analyze->add_flag("--skip-oracle", skip_oracle, "skip the bounded search cross-check");

    auto* sub_nonempty = app.add_subcommand("nonempty", "decide non-emptiness where possible");
    add_common(sub_nonempty, c_nonempty);
    sub_nonempty->add_option("--oracle-max", oracle_max, "bounded search side limit");
    sub_nonempty->add_flag("--skip-oracle", skip_oracle, "skip the bounded search cross-check");

    auto* sub_finite = app.add_subcommand("finite", "sufficient conditions for finiteness");
    add_common(sub_finite, c_finite);

    auto* sub_epairs = app.add_subcommand("epairs", "square-extension tables and linking matrices");
    add_common(sub_epairs, c_epairs);

    auto* sub_higher = app.add_subcommand("higher-block", "recode to a one-step shift over window blocks");
    add_common(sub_higher, c_higher);
    sub_higher->add_option("window", window, "window extents, one per axis")->required();

    auto* sub_periodic = app.add_subcommand("periodic", "existence of periodic configurations");
    add_common(sub_periodic, c_periodic);
    sub_periodic->add_option("--period", period, "horizontal and vertical period")
        ->required()
        ->expected(2);

    auto* sub_oracle = app.add_subcommand("oracle", "enumerate valid tori at fixed periods");
    add_common(sub_oracle, c_oracle);
    sub_oracle->add_option("--torus", torus, "periods, one per axis")->required();
    sub_oracle->add_option("--list", list_limit, "max configurations to print");

    auto* sub_growth = app.add_subcommand("growth", "admissible block counts by side length");
    add_common(sub_growth, c_growth);
    sub_growth->add_option("--max", growth_max, "largest side length")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1; // usage errors map onto the error exit code
    }

    try {
        const auto t0 = std::chrono::steady_clock::now();
        shiftlab::CommandResult res;
        auto opts_for = [&](const CommonOpts& c) {
            shiftlab::AnalysisOptions o;
            o.budget = c.budget();
            o.oracle_n_max = oracle_max;
            o.run_oracle = !skip_oracle;
            return o;
        };
        if (sub_analyze->parsed()) {
            res = cmd_analyze(shiftlab::parse_spec_file(c_analyze.path), opts_for(c_analyze));
        } else if (sub_nonempty->parsed()) {
            res = cmd_nonempty(shiftlab::parse_spec_file(c_nonempty.path), opts_for(c_nonempty));
        } else if (sub_finite->parsed()) {
            res = cmd_finite(shiftlab::parse_spec_file(c_finite.path), opts_for(c_finite));
        } else if (sub_epairs->parsed()) {
            res = cmd_epairs(shiftlab::parse_spec_file(c_epairs.path), c_epairs.budget());
        } else if (sub_higher->parsed()) {
            res = cmd_higher_block(shiftlab::parse_spec_file(c_higher.path), window,
                                   c_higher.budget());
        } else if (sub_periodic->parsed()) {
            res = cmd_periodic(shiftlab::parse_spec_file(c_periodic.path), period[0], period[1],
                               c_periodic.budget());
        } else if (sub_oracle->parsed()) {
            res = cmd_oracle(shiftlab::parse_spec_file(c_oracle.path), torus, c_oracle.budget(),
                             list_limit);
        } else if (sub_growth->parsed()) {
            res = cmd_growth(shiftlab::parse_spec_file(c_growth.path), growth_max,
                             c_growth.budget());
        }
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
        res.report["timing"] = {{"ms", ms}};
        std::cout << res.report.dump(2) << "\n";
        return res.exit_code;
    } catch (const std::exception& e) {
        nlohmann::json err{{"error", e.what()}};
        std::cerr << err.dump(2) << "\n";
        return 1;
    }
}
