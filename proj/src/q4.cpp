#include "fgbeam/q4.hpp"

#include <cmath>

#include "fgbeam/errors.hpp"

namespace fgbeam {

namespace {

using Mat8 = Eigen::Matrix<double, 8, 8>;
using Mat38 = Eigen::Matrix<double, 3, 8>;
using Mat3 = Eigen::Matrix3d;

constexpr double kGp = 0.5773502691896257645091488; // 1/sqrt(3)
constexpr double kXi[4] = {-1.0, 1.0, 1.0, -1.0};
constexpr double kEta[4] = {-1.0, -1.0, 1.0, 1.0};

Mat3 plane_stress(double E, double nu) {
    Mat3 D;
    const double c = E / (1.0 - nu * nu);
    D << c, c * nu, 0.0, c * nu, c, 0.0, 0.0, 0.0, 0.5 * c * (1.0 - nu);
    return D;
}

Mat38 strain_matrix(double xi, double eta, double inv_a, double inv_c) {
    Mat38 B = Mat38::Zero();
    for (int k = 0; k < 4; ++k) {
        const double dN_dx = 0.25 * kXi[k] * (1.0 + kEta[k] * eta) * inv_a;
        const double dN_dy = 0.25 * kEta[k] * (1.0 + kXi[k] * xi) * inv_c;
        B(0, 2 * k) = dN_dx;
        B(1, 2 * k + 1) = dN_dy;
        B(2, 2 * k) = dN_dy;
        B(2, 2 * k + 1) = dN_dx;
    }
    return B;
}

std::vector<int> q4_fixed_dofs(const Q4Model& m) {
    std::vector<int> fixed;
    auto fix = [&](int node, int comp) { fixed.push_back(2 * node + comp); };
    switch (m.bc) {
        case BoundaryKind::SimplySupported:
            if (m.support == Q4Model::Support::FullEdge) {
                for (int j = 0; j <= m.my; ++j) {
                    fix(m.node(0, j), 1);
                    fix(m.node(m.mx, j), 1);
                }
            } else if (m.support == Q4Model::Support::AxisPoint) {
                fix(m.node(0, m.my / 2), 1);
                fix(m.node(m.mx, m.my / 2), 1);
            } else {
                fix(m.node(0, 0), 1);
                fix(m.node(m.mx, 0), 1);
            }
            fix(m.node(0, m.my / 2), 0); // pin axial motion at mid-height
            break;
        case BoundaryKind::ClampedClamped:
            for (int j = 0; j <= m.my; ++j)
                for (int c : {0, 1}) {
                    fix(m.node(0, j), c);
                    fix(m.node(m.mx, j), c);
                }
            break;
        case BoundaryKind::Custom:
            throw UnsupportedConfigError("q4: custom boundary sets are not supported");
    }
    return fixed;
}

struct ElementOperator {
    // One stiffness per element row j (material varies only through y).
    std::vector<Mat8> Ke_per_row;
    std::vector<std::array<Mat38, 4>> B_per_row;   // strain matrices at GPs
    std::vector<std::array<Mat3, 4>> D_per_row;    // constitution at GPs
};

ElementOperator build_row_operators(const Q4Model& m) {
    const double dx = m.geometry.L / m.mx;
    const double dy = m.geometry.h / m.my;
    const double a = 0.5 * dx, c = 0.5 * dy;
    const double detJ = a * c;

    ElementOperator op;
    op.Ke_per_row.resize(m.my);
    op.B_per_row.resize(m.my);
    op.D_per_row.resize(m.my);
    for (int j = 0; j < m.my; ++j) {
        const double y_mid = -0.5 * m.geometry.h + (j + 0.5) * dy;
        Mat8 Ke = Mat8::Zero();
        for (int g = 0; g < 4; ++g) {
            const double xi = kXi[g] * kGp;
            const double eta = kEta[g] * kGp;
            const double yg = y_mid + eta * c;
            const Mat3 D = plane_stress(modulus(m.law, yg).E, m.law.nu);
            const Mat38 B = strain_matrix(xi, eta, 1.0 / a, 1.0 / c);
            Ke += m.geometry.b * detJ * (B.transpose() * D * B);
            op.B_per_row[j][g] = B;
            op.D_per_row[j][g] = D;
        }
        op.Ke_per_row[j] = Ke;
    }
    return op;
}

Eigen::VectorXd external_load(const Q4Model& m) {
    Eigen::VectorXd F = Eigen::VectorXd::Zero(2 * m.n_nodes());
    const double le = m.geometry.L / m.mx;
    for (int i = 0; i < m.mx; ++i) {
        F(2 * m.node(i, m.my) + 1) += 0.5 * m.q * le;
        F(2 * m.node(i + 1, m.my) + 1) += 0.5 * m.q * le;
    }
    return F;
}

void element_dofs(const Q4Model& m, int i, int j, int dofs[8]) {
    const int n[4] = {m.node(i, j), m.node(i + 1, j), m.node(i + 1, j + 1), m.node(i, j + 1)};
    for (int k = 0; k < 4; ++k) {
        dofs[2 * k] = 2 * n[k];
        dofs[2 * k + 1] = 2 * n[k] + 1;
    }
}

} // namespace

Q4Solution q4_solve(const Q4Model& m) {
    if (m.mx < 2 || m.my < 2) throw std::invalid_argument("q4: mesh must be at least 2x2");
    m.geometry.validate();
    m.law.validate();

    const int n_dofs = 2 * m.n_nodes();
    const ElementOperator op = build_row_operators(m);
    const Eigen::VectorXd F = external_load(m);

    const std::vector<int> fixed = q4_fixed_dofs(m);
    std::vector<int> map(n_dofs, -1);
    {
        std::vector<bool> is_fixed(n_dofs, false);
        for (int d : fixed) is_fixed[d] = true;
        int k = 0;
        for (int d = 0; d < n_dofs; ++d)
            if (!is_fixed[d]) map[d] = k++;
    }
    const int nf = static_cast<int>(n_dofs - fixed.size());

    // Jacobi scaling of the reduced system keeps the residual metric clean
    // across the modulus and mesh-anisotropy spread.
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(nf);
    int dofs[8];
    for (int i = 0; i < m.mx; ++i)
        for (int j = 0; j < m.my; ++j) {
            element_dofs(m, i, j, dofs);
            const Mat8& Ke = op.Ke_per_row[j];
            for (int r = 0; r < 8; ++r)
                if (map[dofs[r]] >= 0) diag(map[dofs[r]]) += Ke(r, r);
        }
    Eigen::VectorXd scale(nf);
    for (int d = 0; d < nf; ++d) scale(d) = diag(d) > 0.0 ? 1.0 / std::sqrt(diag(d)) : 1.0;

    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(m.mx) * m.my * 64);
    Eigen::VectorXd Fr = Eigen::VectorXd::Zero(nf);
    for (int d = 0; d < n_dofs; ++d)
        if (map[d] >= 0) Fr(map[d]) = F(d) * scale(map[d]);

    for (int i = 0; i < m.mx; ++i)
        for (int j = 0; j < m.my; ++j) {
            element_dofs(m, i, j, dofs);
            const Mat8& Ke = op.Ke_per_row[j];
            for (int r = 0; r < 8; ++r) {
                if (map[dofs[r]] < 0) continue;
                for (int s = 0; s < 8; ++s)
                    if (map[dofs[s]] >= 0)
                        trip.emplace_back(map[dofs[r]], map[dofs[s]],
                                          Ke(r, s) * scale(map[dofs[r]]) * scale(map[dofs[s]]));
            }
        }

    Eigen::SparseMatrix<double> K(nf, nf);
    K.setFromTriplets(trip.begin(), trip.end());
    trip.clear();
    trip.shrink_to_fit();

    Eigen::VectorXd ur;
    if (m.path == Q4Model::Path::Direct) {
        Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(K);
        if (ldlt.info() != Eigen::Success)
            throw RigidModeError("q4: factorization failed; boundary set leaves a rigid mode", -1);
        ur = ldlt.solve(Fr);
        for (int pass = 0; pass < 2; ++pass) {
            const Eigen::VectorXd r = Fr - K * ur;
            if (r.norm() <= 1e-12 * Fr.norm()) break;
            ur += ldlt.solve(r);
        }
    } else {
        Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg;
        cg.setTolerance(1e-12);
        cg.setMaxIterations(200000);
        cg.compute(K);
        ur = cg.solve(Fr);
        if (cg.info() != Eigen::Success)
            throw NumericError("q4: conjugate-gradient path failed to converge");
    }

    double k_inf = 0.0;
    for (int col = 0; col < K.outerSize(); ++col) {
        double sum = 0.0;
        for (Eigen::SparseMatrix<double>::InnerIterator it(K, col); it; ++it)
            sum += std::abs(it.value());
        k_inf = std::max(k_inf, sum);
    }
    Q4Solution sol;
    sol.fixed = fixed;
    // normwise backward error of the reduced solve
    sol.residual = (K * ur - Fr).norm() / (k_inf * ur.norm() + Fr.norm());
    sol.u = Eigen::VectorXd::Zero(n_dofs);
    for (int d = 0; d < n_dofs; ++d)
        if (map[d] >= 0) sol.u(d) = ur(map[d]) * scale(map[d]);

    // Gauss-point stresses, extrapolated to corners and nodal-averaged.
    sol.sig_x = Eigen::VectorXd::Zero(m.n_nodes());
    sol.sig_y = Eigen::VectorXd::Zero(m.n_nodes());
    sol.tau_xy = Eigen::VectorXd::Zero(m.n_nodes());
    Eigen::VectorXd count = Eigen::VectorXd::Zero(m.n_nodes());
    Eigen::Matrix<double, 8, 1> ue;
    for (int i = 0; i < m.mx; ++i)
        for (int j = 0; j < m.my; ++j) {
            element_dofs(m, i, j, dofs);
            for (int r = 0; r < 8; ++r) ue(r) = sol.u(dofs[r]);
            Eigen::Matrix<double, 3, 4> sg;
            for (int g = 0; g < 4; ++g)
                sg.col(g) = op.D_per_row[j][g] * (op.B_per_row[j][g] * ue);
            const int nodes[4] = {m.node(i, j), m.node(i + 1, j), m.node(i + 1, j + 1),
                                  m.node(i, j + 1)};
            for (int k = 0; k < 4; ++k) {
                Eigen::Vector3d sc = Eigen::Vector3d::Zero();
                for (int g = 0; g < 4; ++g) {
                    const double w =
                        0.25 * (1.0 + 3.0 * kGp * kXi[g] * kXi[k]) * (1.0 + 3.0 * kGp * kEta[g] * kEta[k]);
                    sc += w * sg.col(g);
                }
                sol.sig_x(nodes[k]) += sc(0);
                sol.sig_y(nodes[k]) += sc(1);
                sol.tau_xy(nodes[k]) += sc(2);
                count(nodes[k]) += 1.0;
            }
        }
    sol.sig_x.array() /= count.array();
    sol.sig_y.array() /= count.array();
    sol.tau_xy.array() /= count.array();

    // Surface rows: single-sided extrapolation has no averaging partner, so
    // the parasitic part of the bilinear stress field survives there.
    // Rebuild them from the two clean interior rows instead.
    if (m.my >= 3) {
        for (Eigen::VectorXd* f : {&sol.sig_x, &sol.sig_y, &sol.tau_xy}) {
            for (int i = 0; i <= m.mx; ++i) {
                (*f)(m.node(i, 0)) = 2.0 * (*f)(m.node(i, 1)) - (*f)(m.node(i, 2));
                (*f)(m.node(i, m.my)) =
                    2.0 * (*f)(m.node(i, m.my - 1)) - (*f)(m.node(i, m.my - 2));
            }
        }
    }
    return sol;
}

double q4_displacement(const Q4Model& m, const Q4Solution& sol, double x, double y) {
    const int i = static_cast<int>(std::lround(x / m.geometry.L * m.mx));
    const int j = static_cast<int>(std::lround((y + 0.5 * m.geometry.h) / m.geometry.h * m.my));
    if (i < 0 || i > m.mx || j < 0 || j > m.my)
        throw std::domain_error("q4_displacement: station outside the domain");
    return sol.uy(m, i, j);
}

StressSample q4_stress(const Q4Model& m, const Q4Solution& sol, double x, double y) {
    const double h = m.geometry.h;
    const double tol_x = 1e-9 * m.geometry.L;
    const double tol_y = 1e-9 * h;
    if (x < -tol_x || x > m.geometry.L + tol_x || y < -0.5 * h - tol_y || y > 0.5 * h + tol_y)
        throw std::domain_error("q4_stress: station outside the domain");

    const double dx = m.geometry.L / m.mx;
    const double dy = h / m.my;
    const int i = std::min(std::max(static_cast<int>(x / dx), 0), m.mx - 1);
    const int j = std::min(std::max(static_cast<int>((y + 0.5 * h) / dy), 0), m.my - 1);
    const double s = (x - i * dx) / dx;
    const double t = (y + 0.5 * h - j * dy) / dy;

    auto lerp = [&](const Eigen::VectorXd& f) {
        const double f00 = f(m.node(i, j)), f10 = f(m.node(i + 1, j));
        const double f11 = f(m.node(i + 1, j + 1)), f01 = f(m.node(i, j + 1));
        return (1 - s) * (1 - t) * f00 + s * (1 - t) * f10 + s * t * f11 + (1 - s) * t * f01;
    };

    StressSample out;
    out.x = x;
    out.y = y;
    out.sigma_x = lerp(sol.sig_x);
    out.sigma_y = lerp(sol.sig_y);
    out.tau_xy = lerp(sol.tau_xy);
    const auto pr = principal_stresses(out.sigma_x, out.sigma_y, out.tau_xy);
    out.sigma_max = pr.sigma_max;
    out.sigma_min = pr.sigma_min;
    return out;
}

double q4_reaction_sum(const Q4Model& m, const Q4Solution& sol) {
    const ElementOperator op = build_row_operators(m);
    const Eigen::VectorXd F = external_load(m);
    Eigen::VectorXd f_int = Eigen::VectorXd::Zero(2 * m.n_nodes());
    int dofs[8];
    Eigen::Matrix<double, 8, 1> ue;
    for (int i = 0; i < m.mx; ++i)
        for (int j = 0; j < m.my; ++j) {
            element_dofs(m, i, j, dofs);
            for (int r = 0; r < 8; ++r) ue(r) = sol.u(dofs[r]);
            const Eigen::Matrix<double, 8, 1> fe = op.Ke_per_row[j] * ue;
            for (int r = 0; r < 8; ++r) f_int(dofs[r]) += fe(r);
        }
    double sum = 0.0;
    for (int d : sol.fixed)
        if (d % 2 == 1) sum += f_int(d) - F(d);
    return sum;
}

} // namespace fgbeam
