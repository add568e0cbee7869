#include "fgbeam/element.hpp"

#include <stdexcept>

#include "fgbeam/errors.hpp"

namespace fgbeam {

int n_force_params(ElementKind kind) {
    switch (kind) {
        case ElementKind::MixedCF: return 14;
        case ElementKind::MixedC: return 15;
        case ElementKind::DisplacementDTS: return 0;
    }
    throw std::logic_error("n_force_params: unreachable");
}

HermiteBasis hermite_basis(double x, double Le) {
    const double L2 = Le * Le;
    const double L3 = L2 * Le;
    const double x2 = x * x;
    const double x3 = x2 * x;
    HermiteBasis b;
    b.H = {2.0 * x3 / L3 - 3.0 * x2 / L2 + 1.0, x3 / L2 - 2.0 * x2 / Le + x,
           -2.0 * x3 / L3 + 3.0 * x2 / L2, x3 / L2 - x2 / Le};
    b.dH = {6.0 * x2 / L3 - 6.0 * x / L2, 3.0 * x2 / L2 - 4.0 * x / Le + 1.0,
            -6.0 * x2 / L3 + 6.0 * x / L2, 3.0 * x2 / L2 - 2.0 * x / Le};
    b.ddH = {12.0 * x / L3 - 6.0 / L2, 6.0 * x / L2 - 4.0 / Le, -12.0 * x / L3 + 6.0 / L2,
             6.0 * x / L2 - 2.0 / Le};
    return b;
}

Nt516 strain_interp(double x, double Le) {
    const HermiteBasis b = hermite_basis(x, Le);
    Nt516 Nt = Nt516::Zero();
    // Column offsets per field: u 0, w 2, theta 4, phi 6 (node a), +8 node b.
    for (int n = 0; n < 2; ++n) {
        const int c = 8 * n;
        const int k = 2 * n; // Hermite pair (H1,H2) or (H3,H4)
        for (int j = 0; j < 2; ++j) {
            Nt(0, c + 0 + j) = b.dH[k + j];   // eps0 = u'
            Nt(1, c + 2 + j) = -b.ddH[k + j]; // kappa_w = -w''
            Nt(2, c + 4 + j) = b.dH[k + j];   // kappa_theta = theta'
            Nt(3, c + 6 + j) = b.H[k + j];    // phi
            Nt(4, c + 4 + j) = b.H[k + j];    // gamma0 = theta + phi'
            Nt(4, c + 6 + j) = b.dH[k + j];
        }
    }
    return Nt;
}

ForceModes force_modes(double x, double /*Le*/, double q, ElementKind kind) {
    if (kind == ElementKind::DisplacementDTS)
        throw UnsupportedConfigError("force_modes: displacement elements carry no force field");
    const int nb = n_force_params(kind);
    ForceModes m;
    m.P = Eigen::MatrixXd::Zero(5, nb);
    m.P_x = Eigen::MatrixXd::Zero(5, nb);
    m.P_xx = Eigen::MatrixXd::Zero(5, nb);
    m.F.setZero();
    m.F_x.setZero();
    m.F_xx.setZero();

    auto quad = [&](int row, int col) {
        m.P(row, col) = 1.0;
        m.P(row, col + 1) = x;
        m.P(row, col + 2) = x * x;
        m.P_x(row, col + 1) = 1.0;
        m.P_x(row, col + 2) = 2.0 * x;
        m.P_xx(row, col + 2) = 2.0;
    };

    if (kind == ElementKind::MixedCF) {
        quad(0, 0); // N
        m.P(1, 3) = 1.0;
        m.P(1, 4) = x;
        m.P_x(1, 4) = 1.0; // M_w: affine modes
        quad(2, 5);        // M_theta
        quad(3, 8);        // R
        quad(4, 11);       // Q
        m.F(1) = -0.5 * q * x * x;
        m.F_x(1) = -q * x;
        m.F_xx(1) = -q;
    } else {
        for (int r = 0; r < 5; ++r) quad(r, 3 * r);
    }
    return m;
}

Vec16 consistent_load(double Le, double q) {
    Vec16 f = Vec16::Zero();
    f(2) = 0.5 * q * Le;
    f(3) = q * Le * Le / 12.0;
    f(10) = 0.5 * q * Le;
    f(11) = -q * Le * Le / 12.0;
    return f;
}

ElementMatrices build_element(const SectionModel& section, double Le, double q,
                              ElementKind kind) {
    if (!(Le > 0.0)) throw std::invalid_argument("build_element: element length must be positive");

    ElementMatrices em;
    em.kind = kind;
    em.Le = Le;
    em.q = q;

    const GaussRule rule = gauss_rule(6); // exact for these polynomial integrands

    if (kind == ElementKind::DisplacementDTS) {
        Mat5 D = Mat5::Zero();
        D.topLeftCorner<4, 4>() = section.Dn();
        D(4, 4) = section.D55();
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double x = 0.5 * Le * (1.0 + rule.nodes[i]);
            const double w = 0.5 * Le * rule.weights[i];
            const Nt516 Nt = strain_interp(x, Le);
            em.Ke += w * (Nt.transpose() * D * Nt);
        }
        em.Fext_bar = consistent_load(Le, q);
        return em;
    }

    const int nb = n_force_params(kind);
    const Mat5& Dti = section.Dt_inverse();
    em.HPN = Eigen::MatrixXd::Zero(nb, 16);
    em.HPP = Eigen::MatrixXd::Zero(nb, nb);
    em.GPF = Eigen::VectorXd::Zero(nb);

    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double x = 0.5 * Le * (1.0 + rule.nodes[i]);
        const double w = 0.5 * Le * rule.weights[i];
        const Nt516 Nt = strain_interp(x, Le);
        const ForceModes fm = force_modes(x, Le, q, kind);
        const Eigen::MatrixXd DtiP = Dti * fm.P;
        em.HPN += w * (fm.P.transpose() * Nt);
        em.HPP += w * (fm.P.transpose() * DtiP);
        em.GPF += w * (DtiP.transpose() * fm.F);
        em.GFN += w * (Nt.transpose() * fm.F);
        em.GFF += w * (fm.F.transpose() * Dti * fm.F).value();
    }

    Eigen::LDLT<Eigen::MatrixXd> hpp(em.HPP);
    if (hpp.info() != Eigen::Success || !hpp.isPositive())
        throw NumericError("build_element: force-mode flexibility block is not positive definite");
    const Eigen::MatrixXd HppInvHpn = hpp.solve(em.HPN);
    em.Ke = em.HPN.transpose() * HppInvHpn;
    em.Fext_bar = consistent_load(Le, q) + HppInvHpn.transpose() * em.GPF - em.GFN;
    return em;
}

Eigen::VectorXd recover_beta(const ElementMatrices& em, const Vec16& phi) {
    if (em.kind == ElementKind::DisplacementDTS)
        return Eigen::VectorXd::Zero(0);
    Eigen::LDLT<Eigen::MatrixXd> hpp(em.HPP);
    return hpp.solve(em.HPN * phi - em.GPF);
}

} // namespace fgbeam
