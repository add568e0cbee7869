#include "fgbeam/solver.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "fgbeam/errors.hpp"

namespace fgbeam {

double LoadCase::intensity_over(double x_begin, double x_end) const {
    std::optional<double> q;
    const double mid = 0.5 * (x_begin + x_end);
    for (const auto& seg : segments) {
        const bool covers_mid = mid >= seg.x_begin && mid <= seg.x_end;
        if (!covers_mid) continue;
        const double tol = 1e-9 * (seg.x_end - seg.x_begin);
        if (seg.x_begin > x_begin + tol || seg.x_end < x_end - tol)
            throw UnsupportedConfigError(
                "load: an element straddles a load discontinuity; mesh at the segment boundary");
        if (q && *q != seg.q)
            throw UnsupportedConfigError("load: overlapping segments with different intensity");
        q = seg.q;
    }
    return q.value_or(0.0);
}

double LoadCase::total_transverse(double L) const {
    double total = 0.0;
    for (const auto& seg : segments)
        total += seg.q * (std::min(seg.x_end, L) - std::max(seg.x_begin, 0.0));
    for (const auto& nl : nodal) total += nl.P;
    return total;
}

void BeamModel::validate() const {
    geometry.validate();
    law.validate();
    if (n_elements < 1) throw std::invalid_argument("model: need at least one element");
    for (const auto& nl : load.nodal)
        if (nl.node < 0 || nl.node >= n_nodes())
            throw std::invalid_argument("model: nodal load references a missing node");
}

std::vector<int> fixed_dof_set(const BeamModel& model) {
    const int last = model.n_nodes() - 1;
    auto dof = [&](int node, int local) { return kDofPerNode * node + local; };

    std::set<int> fixed;
    switch (model.bc) {
        case BoundaryKind::SimplySupported:
            fixed = {dof(0, 0), dof(0, 2), dof(last, 2)};
            if (model.bc_opts.ss_fix_phi) {
                fixed.insert(dof(0, 6));
                fixed.insert(dof(last, 6));
            }
            break;
        case BoundaryKind::ClampedClamped:
            for (int node : {0, last}) {
                for (int local : {0, 2, 3, 4, 6}) fixed.insert(dof(node, local));
                if (model.bc_opts.cc_clamp_derivatives)
                    for (int local : {1, 5, 7}) fixed.insert(dof(node, local));
            }
            break;
        case BoundaryKind::Custom:
            fixed.insert(model.custom_fixed.begin(), model.custom_fixed.end());
            break;
    }
    for (int d : fixed)
        if (d < 0 || d >= model.n_dofs())
            throw std::invalid_argument("boundary conditions reference a missing DOF");
    return {fixed.begin(), fixed.end()};
}

Assembled assemble(const SectionModel& section, const BeamModel& model) {
    model.validate();
    const int n = model.n_dofs();
    const double Le = model.element_length();

    Assembled out{BandedSymmetric(n, kDofPerElement - 1), Eigen::VectorXd::Zero(n), {}};
    out.elements.reserve(model.n_elements);

    // Identical elements share one set of matrices unless the load differs.
    std::optional<double> common_q;
    std::optional<ElementMatrices> cached;
    for (int e = 0; e < model.n_elements; ++e) {
        const double xa = e * Le;
        const double q = model.load.intensity_over(xa, xa + Le);
        if (!cached || common_q != q) {
            cached = build_element(section, Le, q, model.kind);
            common_q = q;
        }
        out.elements.push_back(*cached);

        const int base = kDofPerNode * e;
        const ElementMatrices& em = out.elements.back();
        for (int i = 0; i < kDofPerElement; ++i) {
            out.F(base + i) += em.Fext_bar(i);
            for (int j = 0; j <= i; ++j) out.K.add(base + i, base + j, em.Ke(i, j));
        }
    }

    for (const auto& nl : model.load.nodal) {
        out.F(kDofPerNode * nl.node + 2) += nl.P; // w
        out.F(kDofPerNode * nl.node + 6) += nl.P; // phi
    }
    return out;
}

Solution solve(const SectionModel& section, const BeamModel& model) {
    Assembled sys = assemble(section, model);
    const int n = model.n_dofs();
    const std::vector<int> fixed = fixed_dof_set(model);

    std::vector<int> map(n, -1);
    std::vector<int> free;
    free.reserve(n - fixed.size());
    {
        std::vector<bool> is_fixed(n, false);
        for (int d : fixed) is_fixed[d] = true;
        for (int i = 0; i < n; ++i)
            if (!is_fixed[i]) {
                map[i] = static_cast<int>(free.size());
                free.push_back(i);
            }
    }

    const int nf = static_cast<int>(free.size());
    // Symmetric diagonal scaling evens out the displacement/derivative DOF
    // units before factorization.
    Eigen::VectorXd scale(nf);
    for (int r = 0; r < nf; ++r) {
        const double d = sys.K.at(free[r], free[r]);
        scale(r) = d > 0.0 ? 1.0 / std::sqrt(d) : 1.0;
    }
    BandedSymmetric Kr(nf, kDofPerElement - 1);
    Eigen::VectorXd Fr(nf);
    for (int r = 0; r < nf; ++r) {
        const int i = free[r];
        Fr(r) = sys.F(i) * scale(r);
        for (int j = std::max(0, i - sys.K.half_bandwidth()); j <= i; ++j) {
            if (map[j] < 0) continue;
            Kr.add(r, map[j], sys.K.at(i, j) * scale(r) * scale(map[j]));
        }
    }

    // Keep an unfactorized copy of the band for residuals and refinement.
    BandedSymmetric Kr_copy = Kr;
    Kr.factorize();
    Eigen::VectorXd ur = Kr.solve(Fr);

    auto residual_of = [&](const Eigen::VectorXd& u) {
        Eigen::VectorXd res(nf);
        for (int r = 0; r < nf; ++r) {
            double s = 0.0;
            for (int c = std::max(0, r - Kr_copy.half_bandwidth());
                 c <= std::min(nf - 1, r + Kr_copy.half_bandwidth()); ++c)
                s += Kr_copy.at(r, c) * u(c);
            res(r) = s - Fr(r);
        }
        return res;
    };

    // Refinement passes push the residual toward the round-off floor.
    Eigen::VectorXd res = residual_of(ur);
    for (int pass = 0; pass < 4; ++pass) {
        const double before = res.norm();
        if (before <= 1e-13 * Fr.norm()) break;
        const Eigen::VectorXd ur_next = ur - Kr.solve(res);
        const Eigen::VectorXd res_next = residual_of(ur_next);
        if (res_next.norm() >= before) break;
        ur = ur_next;
        res = res_next;
    }

    // normwise backward error of the reduced, scaled solve
    double k_inf = 0.0;
    for (int r = 0; r < nf; ++r) {
        double sum = 0.0;
        for (int c = std::max(0, r - Kr_copy.half_bandwidth());
             c <= std::min(nf - 1, r + Kr_copy.half_bandwidth()); ++c)
            sum += std::abs(Kr_copy.at(r, c));
        k_inf = std::max(k_inf, sum);
    }
    Solution sol;
    sol.dofs = Eigen::VectorXd::Zero(n);
    for (int r = 0; r < nf; ++r) sol.dofs(free[r]) = ur(r) * scale(r);
    sol.fixed = fixed;
    sol.residual = res.norm() / std::max(k_inf * ur.norm() + Fr.norm(), 1e-30);

    sol.reactions.resize(static_cast<Eigen::Index>(fixed.size()));
    Eigen::VectorXd f_int = Eigen::VectorXd::Zero(n);
    for (int e = 0; e < model.n_elements; ++e) {
        const int base = kDofPerNode * e;
        const Vec16 phi = sol.dofs.segment<kDofPerElement>(base);
        f_int.segment<kDofPerElement>(base) += sys.elements[e].Ke * phi;
    }
    for (std::size_t k = 0; k < fixed.size(); ++k)
        sol.reactions(static_cast<Eigen::Index>(k)) = f_int(fixed[k]) - sys.F(fixed[k]);

    sol.betas.reserve(model.n_elements);
    for (int e = 0; e < model.n_elements; ++e) {
        const Vec16 phi = sol.dofs.segment<kDofPerElement>(kDofPerNode * e);
        sol.betas.push_back(recover_beta(sys.elements[e], phi));
    }
    return sol;
}

double midspan_deflection(const BeamModel& model, const Solution& sol) {
    if (model.n_elements % 2 != 0)
        throw UnsupportedConfigError("midspan sampling requires an even element count");
    // Vertical displacement of the beam axis: u_y(L/2, 0) = w + g(0) phi,
    // the same station the continuum reference reports.
    const int mid = model.n_elements / 2;
    return sol.dof(mid, 2) + sol.dof(mid, 6);
}

} // namespace fgbeam
