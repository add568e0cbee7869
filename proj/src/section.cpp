#include "fgbeam/section.hpp"

#include <cmath>
#include <sstream>

#include "fgbeam/errors.hpp"

namespace fgbeam {

namespace {

// Matrix-valued composite Gauss over tabulated panel edges.
template <typename M, typename F>
M integrate_matrix(const F& fn, const std::vector<double>& edges, int order) {
    const GaussRule rule = gauss_rule(order);
    M acc = M::Zero();
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        const double mid = 0.5 * (edges[k] + edges[k + 1]);
        const double half = 0.5 * (edges[k + 1] - edges[k]);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            acc += (half * rule.weights[i]) * fn(mid + half * rule.nodes[i]);
    }
    return acc;
}

} // namespace

Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& m, double rel_tol) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double cutoff = rel_tol * sv(0);
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff) inv(i) = 1.0 / sv(i);
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

Eigen::MatrixXd guarded_inverse(const Eigen::MatrixXd& m, const char* what, double cond_guard) {
    // Symmetric diagonal scaling keeps the inversion accurate across the
    // large unit spread between the stiffness channels.
    const Eigen::Index n = m.rows();
    Eigen::VectorXd s(n);
    for (Eigen::Index i = 0; i < n; ++i)
        s(i) = m(i, i) > 0.0 ? 1.0 / std::sqrt(m(i, i)) : 1.0;
    const Eigen::MatrixXd scaled = s.asDiagonal() * m * s.asDiagonal();

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(scaled, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double smin = sv(sv.size() - 1);
    const double smax = sv(0);
    if (!(smin > 0.0) || smax / smin > cond_guard) {
        std::ostringstream oss;
        oss << what << ": matrix is singular or ill-conditioned, cond = "
            << (smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity());
        throw NumericError(oss.str());
    }
    Eigen::MatrixXd inv_scaled = svd.solve(Eigen::MatrixXd::Identity(n, n));
    // one Newton step sharpens the inverse to working precision
    inv_scaled += inv_scaled * (Eigen::MatrixXd::Identity(n, n) - scaled * inv_scaled);
    return s.asDiagonal() * inv_scaled * s.asDiagonal();
}

SectionModel::SectionModel(const SectionGeometry& geometry, const MaterialLaw& law,
                           const SectionOptions& opts)
    : geom_(geometry), law_(law), opts_(opts) {
    geom_.validate();
    law_.validate();
    const double half_h = 0.5 * geom_.h;
    const double tol = 1e-9 * geom_.h;
    if (std::abs(law_.h0 + half_h) > tol || std::abs(law_.top_boundary() - half_h) > tol)
        throw std::invalid_argument(
            "section: material layer boundaries must span exactly [-h/2, h/2]");
    breaks_ = law_.layer_breaks();

    build_conventional();
    build_profiles();
    build_resultants();
    build_energy_matrices();
    build_modified_stiffness();
}

double SectionModel::integrate(const ScalarFn& integrand, double y_lo, double y_hi) const {
    return integrate_thickness(integrand, y_lo, y_hi, breaks_,
                               {opts_.n_sub, opts_.gauss_order});
}

double SectionModel::integrate_area(const ScalarFn& integrand) const {
    return geom_.b * integrate(integrand, -0.5 * geom_.h, 0.5 * geom_.h);
}

void SectionModel::build_conventional() {
    const double h = geom_.h;
    const double nu = law_.nu;
    const auto edges = make_panel_edges(-0.5 * h, 0.5 * h, breaks_, opts_.n_sub);

    // Moments of E against the axial strain carriers (1, y, f, g').
    const Mat4 raw = integrate_matrix<Mat4>(
        [&](double y) -> Mat4 {
            const auto ws = warping_shapes(y, h);
            const double E = modulus(law_, y).E;
            Eigen::Vector4d u(1.0, y, ws.f, ws.g_prime);
            return Mat4(E * (u * u.transpose()));
        },
        edges, opts_.gauss_order);

    Mat4 D;
    D(0, 0) = raw(0, 0);
    D(0, 1) = raw(0, 1);
    D(0, 2) = raw(0, 2);
    D(0, 3) = nu * raw(0, 3);
    D(1, 1) = raw(1, 1);
    D(1, 2) = raw(1, 2);
    D(1, 3) = nu * raw(1, 3);
    D(2, 2) = raw(2, 2);
    D(2, 3) = nu * raw(2, 3);
    D(3, 3) = raw(3, 3);
    D = D.selfadjointView<Eigen::Upper>();

    Dn_ = geom_.b / (1.0 - nu * nu) * D;
    D55_ = integrate_area([&](double y) {
        const auto ws = warping_shapes(y, h);
        return modulus(law_, y).G * ws.g * ws.g;
    });
    Fn_ = guarded_inverse(Dn_, "section flexibility");
}

void SectionModel::build_profiles() {
    const double h = geom_.h;
    const double half_h = 0.5 * h;
    const double nu = law_.nu;
    const double plane_factor = 1.0 / (1.0 - nu * nu);
    auto edges = make_panel_edges(-half_h, half_h, breaks_, opts_.n_sub);

    // Cumulative integrals of the axial-stress carriers from the lower
    // surface; the leading minus makes tau = S . (M_w', M_theta') directly.
    const MaterialLaw law = law_;
    for (int i = 0; i < 4; ++i) {
        ScalarFn fn = [law, h, nu, plane_factor, i](double y) {
            const auto ws = warping_shapes(y, h);
            const double E = modulus(law, y).E;
            const double carrier = (i == 0) ? 1.0 : (i == 1) ? y : (i == 2) ? ws.f
                                                                            : nu * ws.g_prime;
            return -carrier * E * plane_factor;
        };
        s_tables_[i] = PrefixTable(fn, edges, opts_.gauss_order);
    }

    // Flexibility-weighted combinations as single cumulative tables; each
    // profile query then costs one partial-panel rule instead of four.
    const Mat4 Fn = Fn_;
    auto make_s_combined = [&](int col) {
        ScalarFn fn = [law, h, nu, plane_factor, Fn, col](double y) {
            const auto ws = warping_shapes(y, h);
            const double E = modulus(law, y).E;
            const Eigen::RowVector4d carriers(1.0, y, ws.f, nu * ws.g_prime);
            return -(carriers * Fn.col(col)).value() * E * plane_factor;
        };
        return PrefixTable(fn, edges, opts_.gauss_order);
    };
    s_w_table_ = make_s_combined(1);
    s_theta_table_ = make_s_combined(2);

    // T profiles integrate the flexibility-weighted shear profiles once more.
    const PrefixTable sw = s_w_table_;
    const PrefixTable st = s_theta_table_;
    auto make_t = [&](const PrefixTable& table) {
        ScalarFn fn = [table](double y) { return -table(y); };
        return PrefixTable(fn, edges, opts_.gauss_order);
    };
    t_w_table_ = make_t(sw);
    t_theta_table_ = make_t(st);
}

RowVec4 SectionModel::shear_profile_raw(double y) const {
    return RowVec4(s_tables_[0](y), s_tables_[1](y), s_tables_[2](y), s_tables_[3](y));
}

RowVec2 SectionModel::shear_profile(double y) const {
    return RowVec2(s_w_table_(y), s_theta_table_(y));
}

RowVec2 SectionModel::normal_profile(double y) const {
    return RowVec2(t_w_table_(y), t_theta_table_(y));
}

void SectionModel::build_resultants() {
    const double h = geom_.h;
    const auto edges = make_panel_edges(-0.5 * h, 0.5 * h, breaks_, opts_.n_sub);

    const Vec2 fs_raw = integrate_matrix<Vec2>(
        [&](double y) -> Vec2 {
            return Vec2(warping_shapes(y, h).g * shear_profile(y).transpose());
        },
        edges, opts_.gauss_order);
    fs_ = geom_.b * fs_raw;

    const Mat2 fss_raw = integrate_matrix<Mat2>(
        [&](double y) -> Mat2 {
            const RowVec2 s = shear_profile(y);
            return Mat2((s.transpose() * s) / modulus(law_, y).G);
        },
        edges, opts_.gauss_order);
    fss_ = geom_.b * fss_raw;
}

void SectionModel::build_energy_matrices() {
    const double h = geom_.h;
    const double nu = law_.nu;
    const double plane_factor = 1.0 / (1.0 - nu * nu);
    const double s12_sign = opts_.positive_s12 ? 1.0 : -1.0;
    const auto edges = make_panel_edges(-0.5 * h, 0.5 * h, breaks_, opts_.n_sub);

    auto carriers = [&](double y) {
        const auto ws = warping_shapes(y, h);
        Eigen::Vector4d u(1.0, y, ws.f, nu * ws.g_prime); // T_x = E/(1-nu^2) u^T
        Eigen::Vector4d v(1.0, y, ws.f, 0.0);             // B_x
        return std::pair{u, v};
    };

    Hxx_ = geom_.b * integrate_matrix<Mat4>(
                         [&](double y) -> Mat4 {
                             const auto [u, v] = carriers(y);
                             const double E = modulus(law_, y).E;
                             return Mat4(E * plane_factor * (u * v.transpose()));
                         },
                         edges, opts_.gauss_order);

    Hyy_bar_ = geom_.b * integrate_matrix<Mat24>(
                             [&](double y) -> Mat24 {
                                 const auto ws = warping_shapes(y, h);
                                 Eigen::RowVector4d by(0.0, 0.0, 0.0, ws.g_prime);
                                 return Mat24(normal_profile(y).transpose() * by);
                             },
                             edges, opts_.gauss_order);

    Hxsx_ = geom_.b * integrate_matrix<Mat4>(
                          [&](double y) -> Mat4 {
                              const auto [u, v] = carriers(y);
                              const double E = modulus(law_, y).E;
                              return Mat4(E * plane_factor * plane_factor * (u * u.transpose()));
                          },
                          edges, opts_.gauss_order);

    Hysy_bar_ = geom_.b * integrate_matrix<Mat2>(
                              [&](double y) -> Mat2 {
                                  const RowVec2 t = normal_profile(y);
                                  return Mat2((t.transpose() * t) / modulus(law_, y).E);
                              },
                              edges, opts_.gauss_order);

    Hxsy_bar_ = geom_.b * integrate_matrix<Mat42>(
                              [&](double y) -> Mat42 {
                                  const auto [u, v] = carriers(y);
                                  const RowVec2 t = normal_profile(y);
                                  return Mat42(s12_sign * nu * plane_factor * (u * t));
                              },
                              edges, opts_.gauss_order);

    Hex_ = Hxx_ + Hxx_.transpose() - Hxsx_;
    Hey_bar_ = Hyy_bar_ - Hxsy_bar_.transpose();
}

void SectionModel::build_modified_stiffness() {
    const Mat2 Hysy_inv = pseudo_inverse(Hysy_bar_);
    const Mat2 fss_inv = pseudo_inverse(fss_);

    Dt_.setZero();
    Dt_.topLeftCorner<4, 4>() =
        Hex_ + Hey_bar_.transpose() * Hysy_inv * Hey_bar_;
    const double shear_scale = opts_.variational_half_factor ? 0.5 : 1.0;
    Dt_(4, 4) = shear_scale * (fs_.transpose() * fss_inv * fs_).value();

    Dt_inv_ = guarded_inverse(Dt_, "modified section stiffness");
}

} // namespace fgbeam
