#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "restproj/scenario.hpp"

int main(int argc, char** argv) {
    CLI::App app{"restproj: restricted-projection geometry experiments"};

    std::string config_path;
    std::string out_path;
    long long seed = -1;
    unsigned threads = 0;
    bool verbose = false;

    app.add_option("--config", config_path, "scenario config file (key = value lines)")
        ->required();
    app.add_option("--seed", seed, "override the config seed");
    app.add_option("--out", out_path, "override the CSV output path");
    app.add_option("--threads", threads, "worker count (default: config value)");
    app.add_flag("--verbose", verbose, "print the result table to stdout");

    CLI11_PARSE(app, argc, argv);

    restproj::ScenarioConfig cfg;
    try {
        cfg = restproj::parse_config_file(config_path);
        if (seed >= 0) cfg.seed = std::uint64_t(seed);
        if (threads > 0) cfg.threads = threads;
        if (!out_path.empty()) cfg.out = out_path;
        cfg.validate();
    } catch (const restproj::config_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    }

    try {
        const restproj::ResultTable table = restproj::run_scenario(cfg);
        if (verbose || cfg.out.empty()) restproj::write_csv(std::cout, table);
        if (!cfg.out.empty() && verbose)
            std::cerr << "wrote " << table.rows.size() << " rows to " << cfg.out << '\n';
    } catch (const restproj::config_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
