#pragma once

// Per-column Gram matrices and double-sided centering.
//
//   RBF:    K[i][j] = exp(-(z_i - z_j)^2 / n), n = length of the vector
//   linear: K[i][j] = z_i * z_j
//
// The RBF scale is fixed at 1/n; there is no bandwidth parameter. For a 0/1
// indicator this makes K = 1 - (1 - e^{-1/n}) (b_i - b_j)^2, so the centred
// RBF Gram of an indicator is a rank-one matrix, exactly like the linear one.

#include <string>
#include <string_view>

#include <Eigen/Core>

namespace sensfeat {

enum class KernelKind { kRbf, kLinear };

std::string_view to_string(KernelKind kind);
KernelKind parse_kernel(std::string_view text);

class GramMatrix {
 public:
  explicit GramMatrix(Eigen::MatrixXd values) : values_(std::move(values)) {}

  const Eigen::MatrixXd& matrix() const { return values_; }
  Eigen::Index size() const { return values_.rows(); }

 private:
  Eigen::MatrixXd values_;
};

// Requires at least two finite entries; throws DataError otherwise.
GramMatrix gram(const Eigen::Ref<const Eigen::VectorXd>& values, KernelKind kind);

// H K H with H = I - ee^T/n, evaluated as K minus row and column means plus
// the grand mean. Every row and column of the result sums to zero.
GramMatrix center(const GramMatrix& k);

}  // namespace sensfeat
