#include "sensfeat/dependence.h"

#include <algorithm>
#include <cmath>

#include <Eigen/Cholesky>

#include "sensfeat/error.h"

namespace sensfeat {
namespace {

void require_same_length(Eigen::Index a, Eigen::Index b) {
  if (a != b) {
    throw DataError("dependence inputs differ in length (" + std::to_string(a) + " vs " +
                    std::to_string(b) + ")");
  }
  if (a < 2) throw DataError("dependence inputs need at least 2 samples");
}

}  // namespace

void DependenceConfig::validate() const {
  if (!(epsilon > 0) || !std::isfinite(epsilon)) {
    throw ConfigError("regularization epsilon must be a positive finite number");
  }
}

double hsic(const Eigen::Ref<const Eigen::VectorXd>& x,
            const Eigen::Ref<const Eigen::VectorXd>& y, KernelKind kernel) {
  require_same_length(x.size(), y.size());
  const GramMatrix kx_centered = center(gram(x, kernel));
  const GramMatrix ky = gram(y, kernel);
  // tr(K_x H K_y H) = tr((H K_x H) K_y) = <H K_x H, K_y>_F for symmetric K_y.
  const double trace = kx_centered.matrix().cwiseProduct(ky.matrix()).sum();
  const double denom = static_cast<double>(x.size() - 1);
  return trace / (denom * denom);
}

RegularizedOperator regularized_operator(const GramMatrix& k, double epsilon) {
  DependenceConfig{KernelKind::kRbf, epsilon}.validate();
  const Eigen::Index n = k.size();
  const Eigen::MatrixXd centered = center(k).matrix();

  Eigen::MatrixXd shifted = centered;
  shifted.diagonal().array() += static_cast<double>(n) * epsilon;
  const Eigen::LLT<Eigen::MatrixXd> llt(shifted);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("HKH + n*eps*I is not positive definite; the kernel matrix is not PSD");
  }
  Eigen::MatrixXd r = llt.solve(centered);
  // Symmetric in exact arithmetic; remove the rounding asymmetry.
  r = 0.5 * (r + r.transpose()).eval();
  if (!r.allFinite()) throw NumericalError("regularized operator has non-finite entries");
  return RegularizedOperator(std::move(r));
}

RegularizedOperator regularized_operator(const Eigen::Ref<const Eigen::VectorXd>& values,
                                         const DependenceConfig& config) {
  return regularized_operator(gram(values, config.kernel), config.epsilon);
}

double nocco(const RegularizedOperator& rx, const RegularizedOperator& ry) {
  require_same_length(rx.size(), ry.size());
  // Trace of a product of two PSD matrices; clamp rounding below zero.
  return std::max(0.0, rx.matrix().cwiseProduct(ry.matrix()).sum());
}

double nocco(const Eigen::Ref<const Eigen::VectorXd>& x,
             const Eigen::Ref<const Eigen::VectorXd>& y, const DependenceConfig& config) {
  require_same_length(x.size(), y.size());
  return nocco(regularized_operator(x, config), regularized_operator(y, config));
}

}  // namespace sensfeat
