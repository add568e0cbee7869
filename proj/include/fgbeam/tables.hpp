#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fgbeam/config.hpp"

namespace fgbeam {

/// One comparison against a published value. Gated checks decide the exit
/// status; ungated ones are reported only.
struct CheckLine {
    std::string label;
    double computed = 0.0;
    double reference = 0.0;
    bool gated = false;
    bool pass = true;
    std::string tolerance;
};

struct TableRun {
    int id = 0;
    std::string csv;
    std::vector<CheckLine> checks;
    double seconds = 0.0;

    bool pass() const;
};

struct TableOptions {
    bool with_q4 = false; // also solve the plane-stress reference columns
};

/// Reproduces one published benchmark table (1..9).
TableRun run_table(int id, const TableOptions& opts = {});

struct ConvergeRun {
    std::string csv;
    // first mesh after which the midspan value changes by < 5e-3 mm
    std::vector<std::pair<ElementKind, std::optional<int>>> converged_at;
};

ConvergeRun run_converge(const ScenarioConfig& base, const std::vector<int>& meshes,
                         const std::vector<ElementKind>& kinds);

/// Through-thickness stress profiles at the requested stations for each
/// formulation, optionally overlaid with the plane-stress reference.
std::string run_profile(const ScenarioConfig& base, const std::vector<ElementKind>& kinds,
                        bool with_q4);

/// Midspan axis deflection of one scenario (convenience for sweeps).
double solve_midspan(const ScenarioConfig& cfg);

} // namespace fgbeam
