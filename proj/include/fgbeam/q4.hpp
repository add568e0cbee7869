#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "fgbeam/material.hpp"
#include "fgbeam/recovery_types.hpp"
#include "fgbeam/solver.hpp"

namespace fgbeam {

/// Plane-stress continuum reference model: bilinear quadrilaterals on a
/// structured mx x my grid over [0, L] x [-h/2, h/2], thickness b, grading
/// evaluated at each Gauss point. Serves as the benchmark for the beam
/// formulations.
struct Q4Model {
    int mx = 400;
    int my = 100;
    SectionGeometry geometry;
    MaterialLaw law;
    BoundaryKind bc = BoundaryKind::SimplySupported;
    double q = 5000.0; // top-edge load resultant per unit length [N/mm]
    enum class Path { Direct, ConjugateGradient } path = Path::Direct;
    // FullEdge constrains every node of the end edges (the default);
    // AxisPoint pins only the mid-height node of each end edge.
    enum class Support { FullEdge, AxisPoint, BottomCorner } support = Support::FullEdge;

    int n_nodes() const { return (mx + 1) * (my + 1); }
    int node(int i, int j) const { return i * (my + 1) + j; }
    double x_of(int i) const { return geometry.L * i / mx; }
    double y_of(int j) const { return -0.5 * geometry.h + geometry.h * j / my; }
};

struct Q4Solution {
    Eigen::VectorXd u;          // 2 DOFs per node (ux, uy), fixed DOFs zero
    std::vector<int> fixed;
    double residual = 0.0;      // normwise backward error of the reduced solve

    // Nodal-averaged stresses extrapolated from the Gauss points.
    Eigen::VectorXd sig_x, sig_y, tau_xy;

    double ux(const Q4Model& m, int i, int j) const { return u(2 * m.node(i, j)); }
    double uy(const Q4Model& m, int i, int j) const { return u(2 * m.node(i, j) + 1); }
};

Q4Solution q4_solve(const Q4Model& model);

/// Vertical displacement at a grid point nearest to (x, y).
double q4_displacement(const Q4Model& model, const Q4Solution& sol, double x, double y);

/// Stress sample at an arbitrary interior station by bilinear interpolation
/// of the nodal-averaged fields.
StressSample q4_stress(const Q4Model& model, const Q4Solution& sol, double x, double y);

/// Sum of vertical reactions at the supports (global equilibrium check).
double q4_reaction_sum(const Q4Model& model, const Q4Solution& sol);

} // namespace fgbeam
