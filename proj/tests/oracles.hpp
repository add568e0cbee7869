#pragma once

// Independent numerical oracles used by the test suites. These deliberately
// avoid the library's quadrature and linear-algebra paths.

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace oracles {

using Fn = std::function<double(double)>;

inline double simpson(const Fn& f, double a, double b) {
    return (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
}

inline double adaptive_simpson_rec(const Fn& f, double a, double b, double whole, double tol,
                                   int depth) {
    const double m = 0.5 * (a + b);
    const double left = simpson(f, a, m);
    const double right = simpson(f, m, b);
    if (depth <= 0) return left + right;
    if (std::abs(left + right - whole) < 15.0 * tol) return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson_rec(f, a, m, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, right, 0.5 * tol, depth - 1);
}

/// Adaptive Simpson quadrature, absolute tolerance.
inline double adaptive_simpson(const Fn& f, double a, double b, double tol = 1e-12,
                               int depth = 40) {
    if (a == b) return 0.0;
    return adaptive_simpson_rec(f, a, b, simpson(f, a, b), tol, depth);
}

/// Piecewise version splitting at given interior breakpoints.
inline double adaptive_simpson_pieces(const Fn& f, double a, double b,
                                      const std::vector<double>& breaks, double rel_tol = 1e-11) {
    std::vector<double> pts = {a};
    for (double br : breaks)
        if (br > a && br < b) pts.push_back(br);
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    // scale estimate for the absolute tolerance
    double scale = 0.0;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k)
        scale += std::abs(simpson(f, pts[k], pts[k + 1]));
    const double tol = rel_tol * std::max(scale, 1e-30);
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k)
        sum += adaptive_simpson(f, pts[k], pts[k + 1], tol / (pts.size() - 1));
    return sum;
}

/// Composite trapezoid with n panels.
inline double trapezoid_raw(const Fn& f, double a, double b, int n) {
    double sum = 0.5 * (f(a) + f(b));
    for (int i = 1; i < n; ++i) sum += f(a + (b - a) * i / n);
    return sum * (b - a) / n;
}

/// Richardson-extrapolated trapezoid built on a 200-panel base (the plain
/// rule stalls at ~1e-5 relative on these integrands; two extrapolation
/// levels recover ~1e-12).
inline double trapezoid(const Fn& f, double a, double b, int n = 200) {
    const double t1 = trapezoid_raw(f, a, b, n);
    const double t2 = trapezoid_raw(f, a, b, 2 * n);
    const double t3 = trapezoid_raw(f, a, b, 4 * n);
    const double r1 = (4.0 * t2 - t1) / 3.0;
    const double r2 = (4.0 * t3 - t2) / 3.0;
    return (16.0 * r2 - r1) / 15.0;
}

/// Closed-form 4x4 inverse by cofactor expansion.
inline Eigen::Matrix4d cofactor_inverse(const Eigen::Matrix4d& m) {
    Eigen::Matrix4d adj;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Eigen::Matrix3d minor;
            int rr = 0;
            for (int r = 0; r < 4; ++r) {
                if (r == i) continue;
                int cc = 0;
                for (int c = 0; c < 4; ++c) {
                    if (c == j) continue;
                    minor(rr, cc++) = m(r, c);
                }
                ++rr;
            }
            adj(j, i) = ((i + j) % 2 == 0 ? 1.0 : -1.0) * minor.determinant();
        }
    const double det = m(0, 0) * adj(0, 0) + m(0, 1) * adj(1, 0) + m(0, 2) * adj(2, 0) +
                       m(0, 3) * adj(3, 0);
    if (det == 0.0) throw std::runtime_error("cofactor_inverse: singular matrix");
    return adj / det;
}

/// Relative L2 distance between two sampled profiles.
inline double rel_l2(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("rel_l2: size mismatch");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += (a[i] - b[i]) * (a[i] - b[i]);
        den += b[i] * b[i];
    }
    return std::sqrt(num / den);
}

} // namespace oracles
