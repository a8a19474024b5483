#include "gradecast/scaler.hpp"

#include <cmath>

#include <json.hpp>

#include "gradecast/errors.hpp"

namespace gradecast {

ScalerParams fit_scaler(const FeatureMatrix& train) {
  if (train.n_rows() == 0) {
    throw shape_error("fit_scaler: no training rows");
  }
  const std::size_t n = train.n_rows();
  const std::size_t d = train.n_features();

  ScalerParams params;
  params.n_fit = n;
  params.mu = column_means(train.values);
  params.sigma.assign(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const double delta = train.values(i, j) - params.mu[j];
      params.sigma[j] += delta * delta;
    }
  }
  for (std::size_t j = 0; j < d; ++j) {
    params.sigma[j] = std::sqrt(params.sigma[j] / static_cast<double>(n));
  }
  return params;
}

FeatureMatrix apply_scaler(const FeatureMatrix& data, const ScalerParams& params) {
  if (data.n_features() != params.mu.size()) {
    throw shape_error("apply_scaler: data has " + std::to_string(data.n_features()) +
                      " features, scaler was fitted on " + std::to_string(params.mu.size()));
  }
  FeatureMatrix out = data;
  for (std::size_t j = 0; j < params.mu.size(); ++j) {
    const double sigma = params.sigma[j];
    for (std::size_t i = 0; i < out.n_rows(); ++i) {
      out.values(i, j) = sigma == 0.0 ? 0.0 : (out.values(i, j) - params.mu[j]) / sigma;
    }
  }
  return out;
}

std::string ScalerParams::to_json() const {
  nlohmann::json doc;
  doc["mu"] = mu;
  doc["sigma"] = sigma;
  doc["n_fit"] = n_fit;
  return doc.dump(2) + "\n";
}

ScalerParams ScalerParams::from_json(const std::string& text) {
  nlohmann::json doc = nlohmann::json::parse(text);
  ScalerParams params;
  params.mu = doc.at("mu").get<std::vector<double>>();
  params.sigma = doc.at("sigma").get<std::vector<double>>();
  params.n_fit = doc.at("n_fit").get<std::size_t>();
  if (params.mu.size() != params.sigma.size()) {
    throw shape_error("scaler params: mu and sigma lengths differ");
  }
  return params;
}

}  // namespace gradecast
