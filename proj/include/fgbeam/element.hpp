#pragma once

#include <Eigen/Dense>

#include "fgbeam/section.hpp"

namespace fgbeam {

/// Element formulations:
///   MixedCF  - two-field element, quadratic force modes except an affine
///              bending-moment mode plus the closed-form particular part,
///              so M_w'' + q = 0 holds exactly (14 force parameters).
///   MixedC   - two-field element with all-quadratic force modes (15).
///   DisplacementDTS - displacement element on the conventional stiffness.
enum class ElementKind { MixedCF, MixedC, DisplacementDTS };

int n_force_params(ElementKind kind);

/// Per-node DOF order: (u, u_x, w, w_x, theta, theta_x, phi, phi_x),
/// node a block then node b block; 16 DOFs per element.
inline constexpr int kDofPerNode = 8;
inline constexpr int kDofPerElement = 16;

using Mat16 = Eigen::Matrix<double, 16, 16>;
using Vec16 = Eigen::Matrix<double, 16, 1>;
using Vec5 = Eigen::Matrix<double, 5, 1>;
using Nt516 = Eigen::Matrix<double, 5, 16>;

/// Cubic Hermite values and derivatives at local coordinate x in [0, Le].
struct HermiteBasis {
    std::array<double, 4> H;
    std::array<double, 4> dH;
    std::array<double, 4> ddH;
};
HermiteBasis hermite_basis(double x, double Le);

/// Generalized-strain interpolation: rows map the element DOF vector to
/// (eps0, kappa_w, kappa_theta, phi, gamma0).
Nt516 strain_interp(double x, double Le);

/// Internal-force interpolation P(x) (5 x n_beta) and the particular part
/// F_Mw(x) carrying the -q x^2 / 2 bending term, plus x-derivatives.
struct ForceModes {
    Eigen::MatrixXd P;
    Eigen::MatrixXd P_x;
    Eigen::MatrixXd P_xx;
    Vec5 F;
    Vec5 F_x;
    Vec5 F_xx;
};
ForceModes force_modes(double x, double Le, double q, ElementKind kind);

struct ElementMatrices {
    ElementKind kind = ElementKind::MixedCF;
    double Le = 0.0;
    double q = 0.0;
    Mat16 Ke = Mat16::Zero();
    Vec16 Fext_bar = Vec16::Zero(); // consistent load incl. mixed correction
    Eigen::MatrixXd HPN;            // n_beta x 16
    Eigen::MatrixXd HPP;            // n_beta x n_beta
    Eigen::VectorXd GPF;            // n_beta
    Vec16 GFN = Vec16::Zero();
    double GFF = 0.0;
};

/// Builds all element matrices for a uniform load q over the element.
ElementMatrices build_element(const SectionModel& section, double Le, double q, ElementKind kind);

/// Internal-force parameters from the solved element DOF vector.
Eigen::VectorXd recover_beta(const ElementMatrices& em, const Vec16& phi);

/// Consistent nodal load of a uniform transverse load (w / w_x entries only).
Vec16 consistent_load(double Le, double q);

} // namespace fgbeam
