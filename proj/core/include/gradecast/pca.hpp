#ifndef GRADECAST_PCA_HPP
#define GRADECAST_PCA_HPP

#include <vector>

#include "gradecast/matrix.hpp"

namespace gradecast {

/// Principal component basis fitted on mean-centered data.
///
/// components is k x d with orthonormal rows, ordered by explained variance
/// (non-increasing). Sign convention: the largest-magnitude entry of each
/// component is positive, which makes the decomposition deterministic.
struct PcaModel {
  std::vector<double> mean;
  Matrix components;
  std::vector<double> explained_variance;

  std::size_t dimension() const { return mean.size(); }
  std::size_t n_components() const { return components.rows(); }
};

/// Fit a k-component PCA via eigendecomposition of the sample covariance
/// matrix (divisor n-1). Requires data.rows() >= 2 and 1 <= k <= data.cols().
PcaModel pca_fit(const Matrix& data, std::size_t k);

/// Project rows onto the fitted components: (data - mean) * components^T.
Matrix pca_transform(const PcaModel& model, const Matrix& data);

}  // namespace gradecast

#endif
