#pragma once

#include <vector>

namespace fgbeam {

enum class GradingType { TypeA, TypeB, TypeC };

/// Through-thickness power-law grading between a metal and a ceramic phase.
/// TypeA grades the full depth, TypeB has graded faces around a homogeneous
/// ceramic core, TypeC has homogeneous faces around a graded core.
struct MaterialLaw {
    GradingType kind = GradingType::TypeA;
    double p = 1.0;        // power-law index, >= 0
    double E_m = 70000.0;  // metal Young's modulus [N/mm^2]
    double E_c = 380000.0; // ceramic Young's modulus [N/mm^2]
    double nu = 0.3;       // Poisson ratio, constant through the depth
    double h0 = -100.0;    // layer boundaries [mm]; h2, h3 used by B/C only
    double h1 = 100.0;
    double h2 = 0.0;
    double h3 = 0.0;

    void validate() const;

    /// Topmost boundary covered by the law (h1 for TypeA, h3 otherwise).
    double top_boundary() const;

    /// Ordered layer junctions including both outer boundaries.
    std::vector<double> layer_breaks() const;
};

struct SectionGeometry {
    double b = 50.0;   // width [mm]
    double h = 200.0;  // depth [mm]; thickness coordinate spans [-h/2, h/2]
    double L = 2000.0; // beam length [mm]

    void validate() const;
};

/// Ceramic volume fraction at thickness coordinate y.
double volume_fraction(const MaterialLaw& law, double y);

/// Young's and shear modulus at thickness coordinate y.
struct Moduli {
    double E;
    double G;
};
Moduli modulus(const MaterialLaw& law, double y);

/// Fixed third-order warping shapes: f(y) = y - 4y^3/(3h^2), g = f', g' = f''.
/// g vanishes at y = +-h/2, which makes the surfaces traction-free in the
/// kinematics.
struct WarpingShapes {
    double f;
    double g;
    double g_prime;
};
WarpingShapes warping_shapes(double y, double h);

} // namespace fgbeam
