#pragma once

#include <vector>

#include "fgbeam/recovery_types.hpp"
#include "fgbeam/section.hpp"
#include "fgbeam/solver.hpp"

namespace fgbeam {

struct RecoveryOptions {
    // Transverse-normal stress from finite-difference moment curvatures
    // (element-midpoint stencil) instead of the analytic field derivatives.
    bool fd_derivatives = false;
    // Keep the axial-force and stretching contributions in the shear
    // reconstruction. They are dropped by default; diagnostic only.
    bool include_axial_terms = false;
};

/// Pointwise stress reconstruction over a solved beam model. For the mixed
/// formulations every stress comes from the recovered internal-force fields
/// (equilibrium route); the displacement formulation falls back to the
/// constitutive route and is flagged accordingly.
class StressRecovery {
  public:
    StressRecovery(const SectionModel& section, const BeamModel& model, const Solution& sol,
                   RecoveryOptions opts = {});

    bool equilibrium_route() const { return model_->kind != ElementKind::DisplacementDTS; }

    /// Internal forces (N, M_w, M_theta, R, Q) at a global station; values at
    /// interior element boundaries average the two adjacent fields.
    Vec5 internal_forces(double x) const;

    /// (M_w', M_theta') and (M_w'', M_theta'').
    Vec2 moment_derivative(double x) const;
    Vec2 moment_second_derivative(double x) const;

    double axial_stress(double x, double y) const;
    double shear_stress(double x, double y) const;
    double transverse_stress(double x, double y) const;

    StressSample sample(double x, double y) const;
    std::vector<StressSample> profile(double x, int n_y = 201) const;

    /// Finite-difference second derivative of a moment component
    /// (0 = M_w, 1 = M_theta) sampled at interior element midpoints.
    struct FdSamples {
        std::vector<double> x;
        std::vector<double> value;
    };
    FdSamples fd_moment_second_derivative(int component) const;

  private:
    struct Station {
        int elem;
        double local;
    };
    std::vector<Station> stations_at(double x) const;
    Vec5 forces_local(int elem, double local) const;
    Vec5 forces_deriv_local(int elem, double local, int order) const;
    double fd_interp(int component, double x) const;

    const SectionModel* section_;
    const BeamModel* model_;
    const Solution* sol_;
    RecoveryOptions opts_;
    double Le_;
    FdSamples fd_cache_[2]; // precomputed when the fd route is selected

};

enum class StandardizeMode { ByMaxAbs, ByAnalytical };

/// Pointwise division of a profile: by its own max magnitude, or by the
/// analytical surface value q/b.
std::vector<double> standardize(const std::vector<double>& values, StandardizeMode mode,
                                double analytical_value = 0.0);

} // namespace fgbeam
