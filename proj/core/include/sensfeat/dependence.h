#pragma once

// Kernel dependence between two equal-length vectors.
//
//   HSIC(x, y)  = tr(K_x H K_y H) / (n - 1)^2
//   R           = HKH (HKH + n*eps*I)^{-1}
//   NOCCO(x, y) = tr(R_x R_y)
//
// R is obtained from a Cholesky solve of (HKH + n*eps*I) Z = HKH; both
// factors are polynomials in HKH so Z = R exactly. Each eigenvalue l >= 0 of
// HKH maps to l / (l + n*eps), so R has its spectrum in [0, 1).

#include <Eigen/Core>

#include "sensfeat/kernels.h"

namespace sensfeat {

struct DependenceConfig {
  KernelKind kernel = KernelKind::kRbf;
  double epsilon = 1e-6;

  void validate() const;  // epsilon must be finite and > 0
};

class RegularizedOperator {
 public:
  explicit RegularizedOperator(Eigen::MatrixXd values) : values_(std::move(values)) {}

  const Eigen::MatrixXd& matrix() const { return values_; }
  Eigen::Index size() const { return values_.rows(); }
  double trace() const { return values_.trace(); }

 private:
  Eigen::MatrixXd values_;
};

double hsic(const Eigen::Ref<const Eigen::VectorXd>& x,
            const Eigen::Ref<const Eigen::VectorXd>& y, KernelKind kernel);

// Throws NumericalError when HKH + n*eps*I is not positive definite, which
// only happens for a broken (indefinite) kernel matrix.
RegularizedOperator regularized_operator(const GramMatrix& k, double epsilon);
RegularizedOperator regularized_operator(const Eigen::Ref<const Eigen::VectorXd>& values,
                                         const DependenceConfig& config);

// tr(R_x R_y) as the Frobenius inner product of two symmetric matrices.
double nocco(const RegularizedOperator& rx, const RegularizedOperator& ry);
double nocco(const Eigen::Ref<const Eigen::VectorXd>& x,
             const Eigen::Ref<const Eigen::VectorXd>& y, const DependenceConfig& config);

}  // namespace sensfeat
