#include "fgbeam/banded.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fgbeam/errors.hpp"

namespace fgbeam {

BandedSymmetric::BandedSymmetric(int n, int half_bandwidth) : n_(n), hb_(half_bandwidth) {
    if (n < 1 || half_bandwidth < 0)
        throw std::invalid_argument("BandedSymmetric: invalid dimensions");
    band_.resize(n);
    for (int i = 0; i < n; ++i) band_[i].assign(std::min(i, hb_) + 1, 0.0);
}

double& BandedSymmetric::at(int i, int j) {
    if (j > i) std::swap(i, j);
    if (i - j > hb_) throw std::out_of_range("BandedSymmetric: entry outside band");
    return band_[i][i - j];
}

double BandedSymmetric::at(int i, int j) const {
    if (j > i) std::swap(i, j);
    if (i - j > hb_) return 0.0;
    return band_[i][i - j];
}

void BandedSymmetric::factorize() {
    double scale = 0.0;
    for (int i = 0; i < n_; ++i) scale = std::max(scale, std::abs(band_[i][0]));
    const double pivot_tol = 1e-12 * std::max(scale, 1.0);

    diag_.assign(n_, 0.0);
    // band_[i][i-j] is overwritten with L(i, j); diag_ holds D.
    for (int i = 0; i < n_; ++i) {
        const int j0 = std::max(0, i - hb_);
        for (int j = j0; j < i; ++j) {
            double sum = at(i, j);
            const int k0 = std::max(j0, j - hb_);
            for (int k = k0; k < j; ++k) sum -= band_[i][i - k] * band_[j][j - k] * diag_[k];
            band_[i][i - j] = sum / diag_[j];
        }
        double d = band_[i][0];
        for (int k = j0; k < i; ++k) d -= band_[i][i - k] * band_[i][i - k] * diag_[k];
        if (std::abs(d) < pivot_tol) {
            std::ostringstream oss;
            oss << "factorize: zero pivot at equation " << i
                << "; the system retains an unconstrained (rigid) mode through this DOF";
            throw RigidModeError(oss.str(), i);
        }
        diag_[i] = d;
        band_[i][0] = d;
    }
    factorized_ = true;
}

Eigen::VectorXd BandedSymmetric::solve(const Eigen::VectorXd& rhs) const {
    if (!factorized_) throw std::logic_error("BandedSymmetric::solve before factorize");
    if (rhs.size() != n_) throw std::invalid_argument("BandedSymmetric::solve: size mismatch");
    Eigen::VectorXd x = rhs;
    for (int i = 0; i < n_; ++i) {
        const int j0 = std::max(0, i - hb_);
        double sum = x(i);
        for (int j = j0; j < i; ++j) sum -= band_[i][i - j] * x(j);
        x(i) = sum;
    }
    for (int i = 0; i < n_; ++i) x(i) /= diag_[i];
    for (int i = n_ - 1; i >= 0; --i) {
        const int jmax = std::min(n_ - 1, i + hb_);
        double sum = x(i);
        for (int j = i + 1; j <= jmax; ++j) sum -= band_[j][j - i] * x(j);
        x(i) = sum;
    }
    return x;
}

Eigen::MatrixXd BandedSymmetric::to_dense() const {
    if (factorized_) throw std::logic_error("BandedSymmetric::to_dense after factorize");
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n_, n_);
    for (int i = 0; i < n_; ++i)
        for (int j = std::max(0, i - hb_); j <= i; ++j) m(i, j) = m(j, i) = at(i, j);
    return m;
}

} // namespace fgbeam
