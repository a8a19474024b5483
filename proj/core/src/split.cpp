#include "gradecast/split.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gradecast/errors.hpp"
#include "gradecast/rng.hpp"

namespace gradecast {

namespace {

FeatureMatrix take_rows(const FeatureMatrix& data, const std::vector<std::size_t>& rows) {
  FeatureMatrix out;
  out.feature_names = data.feature_names;
  out.values = Matrix(rows.size(), data.n_features());
  out.labels.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < data.n_features(); ++j) {
      out.values(i, j) = data.values(rows[i], j);
    }
    out.labels.push_back(data.labels[rows[i]]);
  }
  return out;
}

/// Largest-remainder apportionment of `total` seats over quotas; remainder
/// ties go to the earlier index.
std::array<std::size_t, 3> largest_remainder(const std::array<double, 3>& quotas,
                                             std::size_t total) {
  std::array<std::size_t, 3> seats{};
  std::array<double, 3> remainders{};
  std::size_t assigned = 0;
  for (int c = 0; c < 3; ++c) {
    seats[c] = static_cast<std::size_t>(std::floor(quotas[c]));
    remainders[c] = quotas[c] - std::floor(quotas[c]);
    assigned += seats[c];
  }
  std::array<int, 3> order = {0, 1, 2};
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return remainders[a] > remainders[b]; });
  for (int i = 0; assigned < total && i < 3; ++i) {
    seats[order[i]]++;
    assigned++;
  }
  return seats;
}

}  // namespace

std::pair<FeatureMatrix, FeatureMatrix> stratified_split(const FeatureMatrix& data,
                                                         const SplitConfig& cfg) {
  if (data.n_rows() == 0) {
    throw config_error("stratified_split: empty dataset");
  }
  if (!(cfg.train_fraction > 0.0 && cfg.train_fraction < 1.0)) {
    throw config_error("stratified_split: train_fraction must be in (0, 1)");
  }

  const double test_fraction = 1.0 - cfg.train_fraction;
  const std::size_t n = data.n_rows();
  const std::size_t test_total = static_cast<std::size_t>(
      std::min<double>(static_cast<double>(n), std::round(static_cast<double>(n) * test_fraction)));

  RngStream rng(cfg.seed);
  std::vector<std::size_t> test_rows;

  if (cfg.stratified) {
    std::array<std::vector<std::size_t>, 3> by_class;
    for (std::size_t i = 0; i < n; ++i) {
      by_class[static_cast<int>(data.labels[i])].push_back(i);
    }
    std::array<double, 3> quotas{};
    for (int c = 0; c < 3; ++c) {
      quotas[c] = static_cast<double>(by_class[c].size()) * test_fraction;
    }
    const std::array<std::size_t, 3> test_counts = largest_remainder(quotas, test_total);

    for (int c = 0; c < 3; ++c) {
      auto& members = by_class[c];
      RngStream class_rng = rng.split(static_cast<std::uint64_t>(c));
      class_rng.shuffle(members);
      for (std::size_t i = 0; i < test_counts[c] && i < members.size(); ++i) {
        test_rows.push_back(members[i]);
      }
    }
  } else {
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    rng.shuffle(all);
    test_rows.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(test_total));
  }

  std::sort(test_rows.begin(), test_rows.end());
  std::vector<bool> in_test(n, false);
  for (std::size_t r : test_rows) in_test[r] = true;
  std::vector<std::size_t> train_rows;
  train_rows.reserve(n - test_rows.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (!in_test[i]) train_rows.push_back(i);
  }

  return {take_rows(data, train_rows), take_rows(data, test_rows)};
}

}  // namespace gradecast
