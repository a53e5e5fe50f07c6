#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qjp/acceptance.hpp"
#include "qjp/scenario.hpp"

namespace fs = std::filesystem;

namespace {

std::string resolve_out(const std::string& flag_value) {
    if (const char* env = std::getenv("QJPLAB_OUT"); env && *env)
        return env;
    return flag_value;
}

void write_bundle(const qjp::ReportBundle& bundle, const std::string& out_dir,
                  const std::string& prefix) {
    fs::create_directories(out_dir);
    for (const auto& [name, text] : bundle.tables) {
        std::ofstream file(fs::path(out_dir) / name, std::ios::binary);
        file << text;
    }
    std::ofstream summary(fs::path(out_dir) / (prefix + "_summary.json"), std::ios::binary);
    summary << bundle.summary_json;
    if (!bundle.plot_script.empty()) {
        std::ofstream plot(fs::path(out_dir) / (prefix + "_plot.gp"), std::ios::binary);
        plot << bundle.plot_script;
    }
}

void print_checks(const qjp::ReportBundle& bundle) {
    for (const auto& c : bundle.checks)
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name
                  << " (value=" << c.value << ", tol=" << c.tolerance << ")\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quasi-joint-probability measurement laboratory"};
    app.require_subcommand(1);

    std::string scenario_path, out_dir = ".";
    int jobs = 1;
    std::uint64_t seed = qjp::kDefaultSeed;
    bool plot = false, seed_given = false;

    CLI::App* run = app.add_subcommand("run", "execute a JSON scenario");
    run->add_option("scenario", scenario_path, "scenario JSON file")->required();
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--jobs", jobs, "concurrent sweep evaluations");
    run->add_option("--seed", seed, "random seed override")->each([&](const std::string&) {
        seed_given = true;
    });
    run->add_flag("--plot", plot, "emit a gnuplot script next to the tables");

    CLI::App* acc = app.add_subcommand("acceptance", "run the full verification battery");
    acc->add_option("--out", out_dir, "output directory");
    acc->add_option("--seed", seed, "random seed")->each([&](const std::string&) {
        seed_given = true;
    });

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            std::ifstream file(scenario_path, std::ios::binary);
            if (!file) {
                std::cerr << "cannot open scenario file: " << scenario_path << "\n";
                return 2;
            }
            std::ostringstream text;
            text << file.rdbuf();
            qjp::Scenario s = qjp::parse_scenario(text.str());
            if (seed_given)
                s.seed = seed;
            qjp::ReportBundle bundle = qjp::run_scenario(s, jobs, plot);
            write_bundle(bundle, resolve_out(out_dir), s.prefix);
            print_checks(bundle);
            return bundle.ok ? 0 : 1;
        }
        qjp::Scenario s;
        s.kind = "acceptance";
        s.prefix = "acceptance";
        if (seed_given)
            s.seed = seed;
        qjp::ReportBundle bundle = qjp::run_scenario(s, 1, false);
        write_bundle(bundle, resolve_out(out_dir), s.prefix);
        print_checks(bundle);
        return bundle.ok ? 0 : 1;
    } catch (const qjp::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const qjp::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
