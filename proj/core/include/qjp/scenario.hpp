#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qjp/operator_core.hpp"
#include "qjp/random.hpp"

namespace qjp {

struct MeterSpec {
    int n_points = 1024;
    double dx = 40.0 / 1024;
    double h = 1.0;
};

// Declarative description of one run; populated by parse_scenario.
struct Scenario {
    std::string kind; // um | cm | qjp | geometry | gaussian | acceptance
    std::uint64_t seed = kDefaultSeed;
    std::string prefix = "scenario";

    Matrix op_a;       // primary observable
    Matrix op_b;       // conditioning / second observable
    Vector state;      // initial target state
    Vector post_state; // gaussian kind: post-selection vector
    double select_b = 1.0;

    MeterSpec meter;
    std::vector<double> g_values;
    std::vector<Complex> alphas;
    std::vector<std::string> families;
    double a1 = -1.0, a2 = 1.0; // gaussian kind spectrum
};

struct CheckResult {
    std::string name;
    double value;
    double tolerance;
    bool passed;
};

struct ReportBundle {
    std::vector<std::pair<std::string, std::string>> tables; // file name -> CSV text
    std::string summary_json;
    std::string plot_script; // empty unless requested
    std::vector<CheckResult> checks;
    bool ok = true;
};

Scenario parse_scenario(const std::string& text);

ReportBundle run_scenario(const Scenario& s, int jobs = 1, bool plot = false);

} // namespace qjp
