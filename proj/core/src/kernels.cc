#include "sensfeat/kernels.h"

#include <cmath>

#include "sensfeat/error.h"

namespace sensfeat {

std::string_view to_string(KernelKind kind) {
  return kind == KernelKind::kRbf ? "rbf" : "linear";
}

KernelKind parse_kernel(std::string_view text) {
  if (text == "rbf") return KernelKind::kRbf;
  if (text == "linear") return KernelKind::kLinear;
  throw ConfigError("unknown kernel '" + std::string(text) + "' (expected rbf or linear)");
}

GramMatrix gram(const Eigen::Ref<const Eigen::VectorXd>& values, KernelKind kind) {
  const Eigen::Index n = values.size();
  if (n < 2) throw DataError("kernel input needs at least 2 samples");
  if (!values.allFinite()) throw DataError("kernel input contains non-finite values");

  Eigen::MatrixXd k(n, n);
  if (kind == KernelKind::kLinear) {
    k.noalias() = values * values.transpose();
    return GramMatrix(std::move(k));
  }
  const double scale = 1.0 / static_cast<double>(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    k(j, j) = 1.0;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      const double d = values[i] - values[j];
      const double e = std::exp(-scale * d * d);
      k(i, j) = e;
      k(j, i) = e;
    }
  }
  return GramMatrix(std::move(k));
}

GramMatrix center(const GramMatrix& k) {
  const Eigen::MatrixXd& m = k.matrix();
  if (m.rows() != m.cols()) throw DataError("center: Gram matrix is not square");
  const Eigen::VectorXd row_means = m.rowwise().mean();
  const Eigen::RowVectorXd col_means = m.colwise().mean();
  const double grand = row_means.mean();

  Eigen::MatrixXd c = m;
  c.colwise() -= row_means;
  c.rowwise() -= col_means;
  c.array() += grand;
  return GramMatrix(std::move(c));
}

}  // namespace sensfeat
