#pragma once

#include <optional>
#include <vector>

#include "fgbeam/banded.hpp"
#include "fgbeam/element.hpp"

namespace fgbeam {

enum class BoundaryKind { SimplySupported, ClampedClamped, Custom };

struct BoundaryOptions {
    // SimplySupported default pins {u(0), w(0), phi(0), w(L), phi(L)};
    // with ss_fix_phi = false the phi constraints are released.
    bool ss_fix_phi = true;
    // ClampedClamped default fixes {u, w, w_x, theta, phi} at both ends,
    // leaving the Hermite derivative DOFs u_x, theta_x, phi_x free;
    // cc_clamp_derivatives = true clamps those as well.
    bool cc_clamp_derivatives = false;
};

/// Piecewise-uniform transverse load; elements must not straddle a segment
/// boundary with a different intensity.
struct LoadSegment {
    double x_begin;
    double x_end;
    double q; // [N/mm]
};

struct NodalLoad {
    int node;
    double P; // transverse point load, acts on both the w and phi DOFs
};

struct LoadCase {
    std::vector<LoadSegment> segments;
    std::vector<NodalLoad> nodal;

    static LoadCase uniform(double q, double L) { return {{{0.0, L, q}}, {}}; }

    double intensity_over(double x_begin, double x_end) const;
    double total_transverse(double L) const;
};

struct BeamModel {
    SectionGeometry geometry;
    MaterialLaw law;
    int n_elements = 2;
    ElementKind kind = ElementKind::MixedCF;
    BoundaryKind bc = BoundaryKind::SimplySupported;
    BoundaryOptions bc_opts;
    std::vector<int> custom_fixed; // used when bc == Custom
    LoadCase load;

    int n_nodes() const { return n_elements + 1; }
    int n_dofs() const { return kDofPerNode * n_nodes(); }
    double element_length() const { return geometry.L / n_elements; }

    void validate() const;
};

struct Assembled {
    BandedSymmetric K;
    Eigen::VectorXd F;
    std::vector<ElementMatrices> elements;
};

struct Solution {
    Eigen::VectorXd dofs;                // full-length nodal DOF vector
    std::vector<Eigen::VectorXd> betas;  // per-element force parameters
    std::vector<int> fixed;              // constrained global DOFs
    Eigen::VectorXd reactions;           // at the constrained DOFs, same order
    double residual = 0.0;               // backward error of the reduced solve

    double dof(int node, int local) const { return dofs(kDofPerNode * node + local); }
    double w_at_node(int node) const { return dof(node, 2); }
};

std::vector<int> fixed_dof_set(const BeamModel& model);

Assembled assemble(const SectionModel& section, const BeamModel& model);

Solution solve(const SectionModel& section, const BeamModel& model);

/// w at the center node; requires an even element count.
double midspan_deflection(const BeamModel& model, const Solution& sol);

} // namespace fgbeam
