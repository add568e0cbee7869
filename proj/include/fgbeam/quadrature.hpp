#pragma once

#include <functional>
#include <span>
#include <vector>

namespace fgbeam {

/// Gauss-Legendre abscissae/weights on [-1, 1] for orders 1..10.
struct GaussRule {
    std::span<const double> nodes;
    std::span<const double> weights;
};
GaussRule gauss_rule(int order);

using ScalarFn = std::function<double(double)>;

struct QuadratureOptions {
    int n_sub = 64;       // panels per smooth piece
    int gauss_order = 10; // points per panel
};

/// Composite Gauss over [y_lo, y_hi], split at the given interior breakpoints
/// so that material-layer kinks never fall inside a panel.
double integrate_thickness(const ScalarFn& integrand, double y_lo, double y_hi,
                           std::span<const double> breaks, const QuadratureOptions& opts = {});

/// Cumulative integral F(y) = int_{a}^{y} f dxi, tabulated at panel edges.
/// Evaluation looks up the covering panel and adds a partial-panel Gauss,
/// so repeated queries stay O(log n_panels).
class PrefixTable {
  public:
    PrefixTable() = default;
    PrefixTable(const ScalarFn& integrand, std::vector<double> panel_edges, int gauss_order);

    double operator()(double y) const;

    const std::vector<double>& edges() const { return edges_; }

  private:
    ScalarFn fn_;
    std::vector<double> edges_;
    std::vector<double> prefix_;
    int order_ = 10;
};

/// Panel-edge grid for [y_lo, y_hi]: each smooth piece between breakpoints is
/// divided into n_sub equal panels.
std::vector<double> make_panel_edges(double y_lo, double y_hi, std::span<const double> breaks,
                                     int n_sub);

} // namespace fgbeam
