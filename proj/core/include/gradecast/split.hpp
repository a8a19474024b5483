#ifndef GRADECAST_SPLIT_HPP
#define GRADECAST_SPLIT_HPP

#include <cstdint>
#include <utility>

#include "gradecast/gradebook.hpp"

namespace gradecast {

struct SplitConfig {
  double train_fraction = 0.8;
  std::uint64_t seed = 0;
  bool stratified = true;
};

/// Seed-deterministic train/test partition.
///
/// Stratified mode sizes the test set by largest-remainder apportionment of
/// (1 - train_fraction) across classes, so per-class proportions are
/// preserved within one sample. Membership within each class comes from a
/// seeded shuffle; rows keep their original relative order inside each part.
/// Non-stratified mode shuffles all rows and cuts once.
std::pair<FeatureMatrix, FeatureMatrix> stratified_split(const FeatureMatrix& data,
                                                         const SplitConfig& cfg);

}  // namespace gradecast

#endif
