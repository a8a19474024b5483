#include "gradecast/pca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "gradecast/errors.hpp"

namespace gradecast {

namespace {

struct EigenResult {
  std::vector<double> values;  // unsorted
  Matrix vectors;              // columns are eigenvectors
};

// Cyclic Jacobi eigendecomposition for a symmetric matrix. Deterministic:
// fixed sweep order, fixed convergence threshold.
EigenResult jacobi_eigen(Matrix a) {
  const std::size_t d = a.rows();
  Matrix v = Matrix::identity(d);

  double scale = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) scale += a(i, j) * a(i, j);
  scale = std::sqrt(scale);
  const double tol = 1e-15 * std::max(1.0, scale);

  const int max_sweeps = 100;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < d; ++p)
      for (std::size_t q = p + 1; q < d; ++q) off += a(p, q) * a(p, q);
    if (std::sqrt(2.0 * off) <= tol) break;

    for (std::size_t p = 0; p < d; ++p) {
      for (std::size_t q = p + 1; q < d; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= tol / (d * d + 1.0)) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (std::size_t i = 0; i < d; ++i) {
          const double aip = a(i, p);
          const double aiq = a(i, q);
          a(i, p) = c * aip - s * aiq;
          a(i, q) = s * aip + c * aiq;
        }
        for (std::size_t j = 0; j < d; ++j) {
          const double apj = a(p, j);
          const double aqj = a(q, j);
          a(p, j) = c * apj - s * aqj;
          a(q, j) = s * apj + c * aqj;
        }
        for (std::size_t i = 0; i < d; ++i) {
          const double vip = v(i, p);
          const double viq = v(i, q);
          v(i, p) = c * vip - s * viq;
          v(i, q) = s * vip + c * viq;
        }
      }
    }
  }

  EigenResult result;
  result.values.resize(d);
  for (std::size_t i = 0; i < d; ++i) result.values[i] = a(i, i);
  result.vectors = std::move(v);
  return result;
}

}  // namespace

PcaModel pca_fit(const Matrix& data, std::size_t k) {
  if (data.rows() < 2) {
    throw shape_error("pca_fit: need at least 2 rows, got " + std::to_string(data.rows()));
  }
  if (k < 1 || k > data.cols()) {
    throw config_error("pca_fit: k=" + std::to_string(k) + " out of range [1, " +
                       std::to_string(data.cols()) + "]");
  }
  const std::size_t n = data.rows();
  const std::size_t d = data.cols();

  PcaModel model;
  model.mean = column_means(data);

  Matrix centered(n, d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) centered(i, j) = data(i, j) - model.mean[j];

  Matrix cov(d, d);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = a; b < d; ++b) {
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) acc += centered(i, a) * centered(i, b);
      acc /= static_cast<double>(n - 1);
      cov(a, b) = acc;
      cov(b, a) = acc;
    }
  }

  EigenResult eig = jacobi_eigen(cov);

  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return eig.values[a] > eig.values[b]; });

  model.components = Matrix(k, d);
  model.explained_variance.resize(k);
  for (std::size_t c = 0; c < k; ++c) {
    const std::size_t src = order[c];
    model.explained_variance[c] = std::max(0.0, eig.values[src]);
    for (std::size_t j = 0; j < d; ++j) model.components(c, j) = eig.vectors(j, src);

    // Sign convention: largest-magnitude entry positive.
    std::size_t arg = 0;
    double best = -1.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double mag = std::abs(model.components(c, j));
      if (mag > best) {
        best = mag;
        arg = j;
      }
    }
    if (model.components(c, arg) < 0.0) {
      for (std::size_t j = 0; j < d; ++j) model.components(c, j) = -model.components(c, j);
    }
  }
  return model;
}

Matrix pca_transform(const PcaModel& model, const Matrix& data) {
  const std::size_t d = model.dimension();
  if (data.cols() != d) {
    throw shape_error("pca_transform: data has " + std::to_string(data.cols()) +
                      " columns, model expects " + std::to_string(d));
  }
  const std::size_t k = model.n_components();
  Matrix out(data.rows(), k);
  for (std::size_t i = 0; i < data.rows(); ++i) {
    for (std::size_t c = 0; c < k; ++c) {
      double acc = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        acc += (data(i, j) - model.mean[j]) * model.components(c, j);
      }
      out(i, c) = acc;
    }
  }
  return out;
}

}  // namespace gradecast
