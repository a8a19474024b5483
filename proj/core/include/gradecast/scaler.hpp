#ifndef GRADECAST_SCALER_HPP
#define GRADECAST_SCALER_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "gradecast/gradebook.hpp"

namespace gradecast {

/// Per-feature standardization parameters: x_scaled = (x - mu) / sigma.
/// sigma is the population standard deviation (divisor n) of the training
/// rows. Fitted on the training split only.
struct ScalerParams {
  std::vector<double> mu;
  std::vector<double> sigma;
  std::size_t n_fit = 0;

  std::string to_json() const;
  static ScalerParams from_json(const std::string& text);
};

ScalerParams fit_scaler(const FeatureMatrix& train);

/// Apply z-score scaling. Columns with sigma == 0 map to all zeros so that
/// constant assessments never produce NaNs. Throws shape_error when the
/// column count disagrees with the params.
FeatureMatrix apply_scaler(const FeatureMatrix& data, const ScalerParams& params);

}  // namespace gradecast

#endif
