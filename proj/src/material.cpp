#include "fgbeam/material.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fgbeam {

namespace {

// 0^0 := 1 so that p = 0 degenerates to a homogeneous ceramic layer.
double power_law(double ratio, double p) {
    if (ratio < 0.0) ratio = 0.0;
    if (ratio > 1.0) ratio = 1.0;
    return std::pow(ratio, p);
}

} // namespace

void MaterialLaw::validate() const {
    if (!(p >= 0.0)) throw std::invalid_argument("material: power index p must be >= 0");
    if (!(E_m > 0.0) || !(E_c > 0.0))
        throw std::invalid_argument("material: moduli must be positive");
    if (!(nu >= 0.0 && nu < 0.5))
        throw std::invalid_argument("material: Poisson ratio must lie in [0, 0.5)");
    if (!(h0 < h1)) throw std::invalid_argument("material: need h0 < h1");
    if (kind != GradingType::TypeA) {
        if (!(h1 < h2 && h2 < h3))
            throw std::invalid_argument("material: need h0 < h1 < h2 < h3 for sandwich layups");
    }
}

double MaterialLaw::top_boundary() const {
    return kind == GradingType::TypeA ? h1 : h3;
}

std::vector<double> MaterialLaw::layer_breaks() const {
    if (kind == GradingType::TypeA) return {h0, h1};
    return {h0, h1, h2, h3};
}

double volume_fraction(const MaterialLaw& law, double y) {
    const double tol = 1e-9 * (law.top_boundary() - law.h0);
    if (y < law.h0 - tol || y > law.top_boundary() + tol)
        throw std::domain_error("volume_fraction: y = " + std::to_string(y) +
                                " outside material layer coverage");
    switch (law.kind) {
        case GradingType::TypeA:
            return power_law((y - law.h0) / (law.h1 - law.h0), law.p);
        case GradingType::TypeB:
            if (y <= law.h1) return power_law((y - law.h0) / (law.h1 - law.h0), law.p);
            if (y <= law.h2) return 1.0;
            return power_law((y - law.h3) / (law.h2 - law.h3), law.p);
        case GradingType::TypeC:
            if (y <= law.h1) return 0.0;
            if (y <= law.h2) return power_law((y - law.h1) / (law.h2 - law.h1), law.p);
            return 1.0;
    }
    throw std::logic_error("volume_fraction: unreachable");
}

Moduli modulus(const MaterialLaw& law, double y) {
    const double vc = volume_fraction(law, y);
    const double E = law.E_m + (law.E_c - law.E_m) * vc;
    return {E, E / (2.0 * (1.0 + law.nu))};
}

WarpingShapes warping_shapes(double y, double h) {
    const double h2 = h * h;
    return {y - 4.0 * y * y * y / (3.0 * h2), 1.0 - 4.0 * y * y / h2, -8.0 * y / h2};
}

void SectionGeometry::validate() const {
    if (!(b > 0.0 && h > 0.0 && L > 0.0))
        throw std::invalid_argument("geometry: b, h, L must be positive");
}

} // namespace fgbeam
