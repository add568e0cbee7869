#include "fgbeam/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fgbeam/errors.hpp"

namespace fgbeam {

PrincipalPair principal_stresses(double sigma_x, double sigma_y, double tau_xy) {
    const double mean = 0.5 * (sigma_x + sigma_y);
    const double dev = 0.5 * (sigma_x - sigma_y);
    const double r = std::sqrt(dev * dev + tau_xy * tau_xy);
    return {mean + r, mean - r};
}

std::vector<double> standardize(const std::vector<double>& values, StandardizeMode mode,
                                double analytical_value) {
    double denom = 0.0;
    if (mode == StandardizeMode::ByMaxAbs) {
        for (double v : values) denom = std::max(denom, std::abs(v));
    } else {
        denom = analytical_value;
    }
    if (denom == 0.0) throw std::domain_error("standardize: zero reference value");
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i] / denom;
    return out;
}

StressRecovery::StressRecovery(const SectionModel& section, const BeamModel& model,
                               const Solution& sol, RecoveryOptions opts)
    : section_(&section), model_(&model), sol_(&sol), opts_(opts),
      Le_(model.element_length()) {
    if (opts_.fd_derivatives) {
        fd_cache_[0] = fd_moment_second_derivative(0);
        fd_cache_[1] = fd_moment_second_derivative(1);
    }
}

std::vector<StressRecovery::Station> StressRecovery::stations_at(double x) const {
    const double L = model_->geometry.L;
    const double tol = 1e-9 * L;
    if (x < -tol || x > L + tol)
        throw std::domain_error("recovery: station outside the beam");
    x = std::clamp(x, 0.0, L);

    const int n = model_->n_elements;
    int e = std::min(static_cast<int>(x / Le_), n - 1);
    const double local = x - e * Le_;

    // Interior element boundary: report the mean of both limits.
    const double knot = std::round(x / Le_) * Le_;
    if (std::abs(x - knot) < tol) {
        const int k = static_cast<int>(std::round(x / Le_));
        if (k > 0 && k < n) return {{k - 1, Le_}, {k, 0.0}};
    }
    return {{e, local}};
}

Vec5 StressRecovery::forces_local(int elem, double local) const {
    if (model_->kind == ElementKind::DisplacementDTS) {
        const Nt516 Nt = strain_interp(local, Le_);
        const Vec16 phi = sol_->dofs.segment<16>(kDofPerNode * elem);
        const Vec5 eps = Nt * phi;
        Vec5 out;
        out.head<4>() = section_->Dn() * eps.head<4>();
        out(4) = section_->D55() * eps(4);
        return out;
    }
    const double xa = elem * Le_;
    const double q = model_->load.intensity_over(xa, xa + Le_);
    const ForceModes fm = force_modes(local, Le_, q, model_->kind);
    return Vec5(fm.P * sol_->betas[elem] + fm.F);
}

Vec5 StressRecovery::forces_deriv_local(int elem, double local, int order) const {
    const double xa = elem * Le_;
    const double q = model_->load.intensity_over(xa, xa + Le_);
    const ForceModes fm = force_modes(local, Le_, q, model_->kind);
    if (order == 1) return Vec5(fm.P_x * sol_->betas[elem] + fm.F_x);
    return Vec5(fm.P_xx * sol_->betas[elem] + fm.F_xx);
}

Vec5 StressRecovery::internal_forces(double x) const {
    Vec5 acc = Vec5::Zero();
    const auto sts = stations_at(x);
    for (const auto& st : sts) acc += forces_local(st.elem, st.local);
    return acc / static_cast<double>(sts.size());
}

Vec2 StressRecovery::moment_derivative(double x) const {
    Vec2 acc = Vec2::Zero();
    const auto sts = stations_at(x);
    for (const auto& st : sts) {
        const Vec5 d = forces_deriv_local(st.elem, st.local, 1);
        acc += Vec2(d(1), d(2));
    }
    return acc / static_cast<double>(sts.size());
}

Vec2 StressRecovery::moment_second_derivative(double x) const {
    if (opts_.fd_derivatives) return Vec2(fd_interp(0, x), fd_interp(1, x));
    Vec2 acc = Vec2::Zero();
    const auto sts = stations_at(x);
    for (const auto& st : sts) {
        const Vec5 d = forces_deriv_local(st.elem, st.local, 2);
        acc += Vec2(d(1), d(2));
    }
    return acc / static_cast<double>(sts.size());
}

double StressRecovery::axial_stress(double x, double y) const {
    const auto ws = warping_shapes(y, model_->geometry.h);
    const double nu = model_->law.nu;
    const double E = modulus(model_->law, y).E;
    Eigen::RowVector4d Tx(1.0, y, ws.f, nu * ws.g_prime);
    Tx *= E / (1.0 - nu * nu);
    if (model_->kind == ElementKind::DisplacementDTS) {
        // Constitutive route: T_x acting on the interpolated strains.
        const auto sts = stations_at(x);
        double acc = 0.0;
        for (const auto& st : sts) {
            const Nt516 Nt = strain_interp(st.local, Le_);
            const Vec16 phi = sol_->dofs.segment<16>(kDofPerNode * st.elem);
            acc += Tx.dot((Nt * phi).head<4>());
        }
        return acc / static_cast<double>(sts.size());
    }
    return Tx.dot(section_->Fn() * internal_forces(x).head<4>());
}

double StressRecovery::shear_stress(double x, double y) const {
    const auto ws = warping_shapes(y, model_->geometry.h);
    if (model_->kind == ElementKind::DisplacementDTS) {
        const auto sts = stations_at(x);
        double acc = 0.0;
        for (const auto& st : sts) {
            const Nt516 Nt = strain_interp(st.local, Le_);
            const Vec16 phi = sol_->dofs.segment<16>(kDofPerNode * st.elem);
            acc += modulus(model_->law, y).G * ws.g * (Nt * phi)(4);
        }
        return acc / static_cast<double>(sts.size());
    }
    if (opts_.include_axial_terms) {
        const auto sts = stations_at(x);
        Eigen::Vector4d dn = Eigen::Vector4d::Zero();
        for (const auto& st : sts) dn += forces_deriv_local(st.elem, st.local, 1).head<4>();
        dn /= static_cast<double>(sts.size());
        return section_->shear_profile_raw(y).dot(section_->Fn() * dn);
    }
    return section_->shear_profile(y).dot(moment_derivative(x));
}

double StressRecovery::transverse_stress(double x, double y) const {
    if (model_->kind == ElementKind::DisplacementDTS) {
        const auto ws = warping_shapes(y, model_->geometry.h);
        const double nu = model_->law.nu;
        const double E = modulus(model_->law, y).E;
        Eigen::RowVector4d Ty(nu, nu * y, nu * ws.f, ws.g_prime);
        Ty *= E / (1.0 - nu * nu);
        const auto sts = stations_at(x);
        double acc = 0.0;
        for (const auto& st : sts) {
            const Nt516 Nt = strain_interp(st.local, Le_);
            const Vec16 phi = sol_->dofs.segment<16>(kDofPerNode * st.elem);
            acc += Ty.dot((Nt * phi).head<4>());
        }
        return acc / static_cast<double>(sts.size());
    }
    return section_->normal_profile(y).dot(moment_second_derivative(x));
}

StressSample StressRecovery::sample(double x, double y) const {
    StressSample s;
    s.x = x;
    s.y = y;
    s.sigma_x = axial_stress(x, y);
    s.tau_xy = shear_stress(x, y);
    s.sigma_y = transverse_stress(x, y);
    const auto pr = principal_stresses(s.sigma_x, s.sigma_y, s.tau_xy);
    s.sigma_max = pr.sigma_max;
    s.sigma_min = pr.sigma_min;
    return s;
}

std::vector<StressSample> StressRecovery::profile(double x, int n_y) const {
    if (n_y < 2) throw std::invalid_argument("profile: need at least two sampling depths");
    std::vector<StressSample> out;
    out.reserve(n_y);
    const double h = model_->geometry.h;
    for (int k = 0; k < n_y; ++k)
        out.push_back(sample(x, -0.5 * h + h * k / (n_y - 1)));
    return out;
}

StressRecovery::FdSamples StressRecovery::fd_moment_second_derivative(int component) const {
    if (component < 0 || component > 1)
        throw std::invalid_argument("fd_moment_second_derivative: component is 0 or 1");
    if (model_->kind == ElementKind::DisplacementDTS)
        throw UnsupportedConfigError("fd_moment_second_derivative: mixed formulations only");
    const int n = model_->n_elements;
    if (n < 3)
        throw std::domain_error("fd_moment_second_derivative: need at least three elements");

    std::vector<double> mid(n);
    for (int e = 0; e < n; ++e) mid[e] = forces_local(e, 0.5 * Le_)(1 + component);

    FdSamples out;
    out.x.reserve(n - 2);
    out.value.reserve(n - 2);
    for (int e = 1; e + 1 < n; ++e) {
        out.x.push_back((e + 0.5) * Le_);
        out.value.push_back((mid[e + 1] - 2.0 * mid[e] + mid[e - 1]) / (Le_ * Le_));
    }
    return out;
}

double StressRecovery::fd_interp(int component, double x) const {
    const auto& s = fd_cache_[component];
    if (x <= s.x.front()) return s.value.front();
    if (x >= s.x.back()) return s.value.back();
    const auto it = std::upper_bound(s.x.begin(), s.x.end(), x);
    const std::size_t k = static_cast<std::size_t>(std::distance(s.x.begin(), it)) - 1;
    const double t = (x - s.x[k]) / (s.x[k + 1] - s.x[k]);
    return (1.0 - t) * s.value[k] + t * s.value[k + 1];
}

} // namespace fgbeam
