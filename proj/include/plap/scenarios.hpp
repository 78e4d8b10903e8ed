#pragma once

#include <string>
#include <utility>
#include <vector>

#include "plap/grid.hpp"
#include "plap/principles.hpp"

namespace plap {

// Row and column classes of the status table for the four principles.
enum class Regime { le0, mid, gt }; // lambda <= 0, 0 < lambda <= lambda1, lambda > lambda1
enum class PClass { lt2, gt2 };     // 1 < p < 2, p > 2

const char* to_string(Regime r);
const char* to_string(PClass c);

// One demonstrated table cell: '+' means a run complied with the principle
// where compliance is asserted, '-' means a concrete counterexample run.
struct Evidence {
    Regime regime;
    PClass pclass;
    Principle principle;
    char symbol;
};

struct ScenarioOverrides {
    int n = -1;              // mesh override; -1 keeps the scenario default
    int mT = -1;             // time-step override
    unsigned long seed = 0;  // rng override for randomized sweeps; 0 keeps default
    std::string out_dir;     // artifact directory; empty writes nothing
};

struct ScenarioResult {
    std::string name;
    std::string claim; // the mathematical statement the run exercises
    bool pass = false;
    std::vector<PrincipleReport> reports;
    std::vector<Evidence> evidence;
    std::vector<std::pair<std::string, std::string>> facts; // ordered key/value log
    std::vector<std::string> artifacts;                     // CSV paths written
};

std::vector<std::string> scenario_names();

// Runs one named experiment. Unknown names and too-coarse overrides throw;
// with out_dir set, CSV artifacts and a <name>.result key=value file land
// there, bit-identical across runs with equal overrides.
ScenarioResult run_scenario(const std::string& name, const ScenarioOverrides& ov = {});

std::string serialize_result(const ScenarioResult& r);
ScenarioResult parse_result_text(const std::string& text);

struct StatusTable {
    std::string text; // human-readable matrix, empirical against published
    std::string csv;  // regime,p,principle,empirical,paper
    bool matches;     // every tested cell agrees with the published symbol
};

// Folds the evidence of many runs into the principle-status matrix. A cell
// with a counterexample run shows '-', one with only compliant runs '+';
// untested cells show '?' where the published table leaves the question open
// and 'n/a' otherwise.
StatusTable status_report(const std::vector<ScenarioResult>& results);

} // namespace plap
