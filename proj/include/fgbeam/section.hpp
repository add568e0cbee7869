#pragma once

#include <Eigen/Dense>

#include "fgbeam/material.hpp"
#include "fgbeam/quadrature.hpp"

namespace fgbeam {

using Mat2 = Eigen::Matrix2d;
using Mat4 = Eigen::Matrix4d;
using Mat5 = Eigen::Matrix<double, 5, 5>;
using Vec2 = Eigen::Vector2d;
using Mat24 = Eigen::Matrix<double, 2, 4>;
using Mat42 = Eigen::Matrix<double, 4, 2>;
using RowVec2 = Eigen::RowVector2d;
using RowVec4 = Eigen::RowVector4d;

struct SectionOptions {
    int n_sub = 64;       // thickness panels per material layer
    int gauss_order = 10; // Gauss points per panel
    // Keep the extra 1/2 on the condensed shear stiffness instead of reading
    // the shear complementary-energy weight literally. Off by default; the
    // default reproduces the homogeneous benchmark deflections.
    bool variational_half_factor = false;
    // Sign of the cross compliance s12 coupling the two normal stresses.
    // The plane-stress compliance has s12 = -nu/E; that is the default.
    bool positive_s12 = false;
};

/// All through-thickness condensations for one rectangular cross-section:
/// the conventional stiffness (Dn, D55), its flexibility, the
/// equilibrium-derived shear/normal stress profiles, and the modified 5x5
/// stiffness Dt obtained by energy equivalence with those profiles.
///
/// Built once, then immutable; all queries are const and thread-safe.
class SectionModel {
  public:
    SectionModel(const SectionGeometry& geometry, const MaterialLaw& law,
                 const SectionOptions& opts = {});

    const SectionGeometry& geometry() const { return geom_; }
    const MaterialLaw& law() const { return law_; }
    const SectionOptions& options() const { return opts_; }

    // Conventional constitution: sigma_n = Dn * eps_n, Q = D55 * gamma0.
    const Mat4& Dn() const { return Dn_; }
    double D55() const { return D55_; }
    const Mat4& Fn() const { return Fn_; }

    /// Equilibrium shear-stress profile row (S_w, S_theta) at depth y;
    /// tau(x, y) = S(y) . (M_w', M_theta').
    RowVec2 shear_profile(double y) const;

    /// Raw cumulative integrals (S_1..S_4)(y) before flexibility weighting.
    RowVec4 shear_profile_raw(double y) const;

    /// Equilibrium transverse-normal profile row (T_w, T_theta) at depth y;
    /// sigma_y(x, y) = T(y) . (M_w'', M_theta'').
    RowVec2 normal_profile(double y) const;

    // Shear resultants of the equilibrium profiles.
    const Vec2& fs() const { return fs_; }
    const Mat2& fss() const { return fss_; }

    // Energy matrices of the equilibrium-derived normal stresses.
    const Mat4& Hxx() const { return Hxx_; }
    const Mat24& Hyy_bar() const { return Hyy_bar_; }
    const Mat4& Hxsx() const { return Hxsx_; }
    const Mat2& Hysy_bar() const { return Hysy_bar_; }
    const Mat42& Hxsy_bar() const { return Hxsy_bar_; }
    const Mat4& Hex() const { return Hex_; }
    const Mat24& Hey_bar() const { return Hey_bar_; }

    /// Modified section stiffness on (eps0, kappa_w, kappa_theta, phi, gamma0).
    const Mat5& Dt() const { return Dt_; }
    const Mat5& Dt_inverse() const { return Dt_inv_; }

    /// Composite Gauss integral over a thickness sub-interval, split at the
    /// material layer junctions.
    double integrate(const ScalarFn& integrand, double y_lo, double y_hi) const;

    /// Same, over the whole depth and scaled by the width (an area integral).
    double integrate_area(const ScalarFn& integrand) const;

  private:
    void build_conventional();
    void build_profiles();
    void build_resultants();
    void build_energy_matrices();
    void build_modified_stiffness();

    SectionGeometry geom_;
    MaterialLaw law_;
    SectionOptions opts_;
    std::vector<double> breaks_;

    Mat4 Dn_ = Mat4::Zero();
    double D55_ = 0.0;
    Mat4 Fn_ = Mat4::Zero();

    std::array<PrefixTable, 4> s_tables_; // S_1..S_4
    PrefixTable s_w_table_;               // flexibility-weighted S_w
    PrefixTable s_theta_table_;           // flexibility-weighted S_theta
    PrefixTable t_w_table_;               // T_w
    PrefixTable t_theta_table_;           // T_theta

    Vec2 fs_ = Vec2::Zero();
    Mat2 fss_ = Mat2::Zero();

    Mat4 Hxx_ = Mat4::Zero();
    Mat24 Hyy_bar_ = Mat24::Zero();
    Mat4 Hxsx_ = Mat4::Zero();
    Mat2 Hysy_bar_ = Mat2::Zero();
    Mat42 Hxsy_bar_ = Mat42::Zero();
    Mat4 Hex_ = Mat4::Zero();
    Mat24 Hey_bar_ = Mat24::Zero();

    Mat5 Dt_ = Mat5::Zero();
    Mat5 Dt_inv_ = Mat5::Zero();
};

/// Inverts a symmetric positive-definite matrix with a condition guard.
/// Throws NumericError when the pivot ratio exceeds the guard.
Eigen::MatrixXd guarded_inverse(const Eigen::MatrixXd& m, const char* what,
                                double cond_guard = 1e14);

/// Rank-revealing pseudo-inverse. The energy blocks condensed into Dt become
/// exactly rank-deficient for symmetric layups (the two equilibrium profiles
/// are then proportional), so their condensation must project out the null
/// direction instead of amplifying quadrature noise.
Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& m, double rel_tol = 1e-12);

} // namespace fgbeam
