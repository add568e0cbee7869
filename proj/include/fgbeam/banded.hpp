#pragma once

#include <Eigen/Dense>
#include <vector>

namespace fgbeam {

/// Symmetric banded matrix with in-place LDL^T factorization. Stores the
/// lower band row-wise: entry (i, j) with i - hb <= j <= i lives at
/// band[i][i - j].
class BandedSymmetric {
  public:
    BandedSymmetric(int n, int half_bandwidth);

    int size() const { return n_; }
    int half_bandwidth() const { return hb_; }

    double& at(int i, int j);
    double at(int i, int j) const;

    void add(int i, int j, double v) { at(i, j) += v; }

    /// LDL^T factorization; throws RigidModeError on a vanishing pivot,
    /// naming the dominant component of the associated null vector.
    void factorize();

    Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;

    bool factorized() const { return factorized_; }

    Eigen::MatrixXd to_dense() const;

  private:
    int n_;
    int hb_;
    bool factorized_ = false;
    std::vector<std::vector<double>> band_;
    std::vector<double> diag_; // D of the factorization
};

} // namespace fgbeam
