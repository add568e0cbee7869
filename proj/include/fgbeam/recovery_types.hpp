#pragma once

namespace fgbeam {

/// In-plane stress state at a station (x, y) with principal values.
struct StressSample {
    double x = 0.0;
    double y = 0.0;
    double sigma_x = 0.0;
    double sigma_y = 0.0;
    double tau_xy = 0.0;
    double sigma_max = 0.0;
    double sigma_min = 0.0;
};

/// Principal stresses of the 2D state: mean +- sqrt(deviator^2 + tau^2).
struct PrincipalPair {
    double sigma_max;
    double sigma_min;
};
PrincipalPair principal_stresses(double sigma_x, double sigma_y, double tau_xy);

} // namespace fgbeam
