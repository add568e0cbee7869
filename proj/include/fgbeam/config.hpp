#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fgbeam/q4.hpp"
#include "fgbeam/recovery.hpp"
#include "fgbeam/solver.hpp"

namespace fgbeam {

/// One analysis scenario: material, geometry, model, load and output
/// choices. Defaults reproduce the benchmark setup (Al/Al2O3, 50x200x2000,
/// q = 5000 N/mm).
struct ScenarioConfig {
    MaterialLaw law = default_law(GradingType::TypeA, 5.0);
    SectionGeometry geometry{};
    SectionOptions section{};

    BoundaryKind bc = BoundaryKind::SimplySupported;
    BoundaryOptions bc_opts{};
    ElementKind kind = ElementKind::MixedCF;
    int n_elements = 16;

    double q = 5000.0;
    std::vector<NodalLoad> nodal;

    std::vector<double> stations = {400.0, 800.0, 1200.0, 1500.0, 1600.0};
    int y_points = 201;
    std::optional<StandardizeMode> standardize;
    bool fd_derivatives = false;

    int q4_mx = 400;
    int q4_my = 100;
    Q4Model::Path q4_path = Q4Model::Path::Direct;
    Q4Model::Support q4_support = Q4Model::Support::FullEdge;

    static MaterialLaw default_law(GradingType kind, double p);

    BeamModel beam_model() const;
    Q4Model q4_model() const;
};

/// Parses the flat key-value format with [block] headers; '#' comments.
ScenarioConfig parse_scenario(const std::string& text);
ScenarioConfig load_scenario_file(const std::string& path);

ElementKind parse_element_kind(const std::string& s);
BoundaryKind parse_boundary_kind(const std::string& s);
const char* element_kind_name(ElementKind k);

} // namespace fgbeam
