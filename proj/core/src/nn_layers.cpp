#include <algorithm>
#include <cmath>
#include <string>

#include "gradecast/errors.hpp"
#include "gradecast/nn.hpp"
#include "nn_internal.hpp"

namespace gradecast {

Matrix conv1d_forward(std::span<const double> input, const Matrix& kernels,
                      std::span<const double> bias) {
  const std::size_t length = input.size();
  const std::size_t kernel_size = kernels.cols();
  const std::size_t filters = kernels.rows();
  if (kernel_size == 0 || length < kernel_size) {
    throw shape_error("conv1d: input length " + std::to_string(length) +
                      " shorter than kernel " + std::to_string(kernel_size));
  }
  if (bias.size() != filters) {
    throw shape_error("conv1d: bias length does not match filter count");
  }
  const std::size_t out_len = length - kernel_size + 1;
  Matrix out(filters, out_len);
  for (std::size_t f = 0; f < filters; ++f) {
    for (std::size_t t = 0; t < out_len; ++t) {
      double acc = bias[f];
      for (std::size_t k = 0; k < kernel_size; ++k) {
        acc += kernels(f, k) * input[t + k];
      }
      out(f, t) = acc > 0.0 ? acc : 0.0;
    }
  }
  return out;
}

PoolResult maxpool1d(const Matrix& input, int pool_size) {
  if (pool_size < 1) {
    throw config_error("maxpool1d: pool_size must be >= 1");
  }
  const std::size_t pool = static_cast<std::size_t>(pool_size);
  if (input.cols() < pool) {
    throw shape_error("maxpool1d: map length " + std::to_string(input.cols()) +
                      " shorter than pool size " + std::to_string(pool));
  }
  const std::size_t windows = input.cols() / pool;  // trailing remainder dropped
  PoolResult result;
  result.pooled = Matrix(input.rows(), windows);
  result.argmax.resize(input.rows() * windows);
  for (std::size_t f = 0; f < input.rows(); ++f) {
    for (std::size_t w = 0; w < windows; ++w) {
      std::size_t best = w * pool;
      for (std::size_t k = 1; k < pool; ++k) {
        if (input(f, w * pool + k) > input(f, best)) best = w * pool + k;
      }
      result.pooled(f, w) = input(f, best);
      result.argmax[f * windows + w] = best;
    }
  }
  return result;
}

std::vector<double> softmax(std::span<const double> logits) {
  const double peak = *std::max_element(logits.begin(), logits.end());
  std::vector<double> out(logits.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp(logits[i] - peak);
    sum += out[i];
  }
  for (double& v : out) v /= sum;
  return out;
}

std::vector<double> dense_forward(std::span<const double> input, const Matrix& weights,
                                  std::span<const double> bias, Activation activation) {
  if (weights.cols() != input.size() || weights.rows() != bias.size()) {
    throw shape_error("dense: weights " + std::to_string(weights.rows()) + "x" +
                      std::to_string(weights.cols()) + " vs input " +
                      std::to_string(input.size()) + ", bias " + std::to_string(bias.size()));
  }
  std::vector<double> out(weights.rows());
  for (std::size_t r = 0; r < weights.rows(); ++r) {
    double acc = bias[r];
    for (std::size_t c = 0; c < weights.cols(); ++c) {
      acc += weights(r, c) * input[c];
    }
    out[r] = acc;
  }
  switch (activation) {
    case Activation::none:
      return out;
    case Activation::relu:
      for (double& v : out) v = v > 0.0 ? v : 0.0;
      return out;
    case Activation::softmax:
      return softmax(out);
  }
  return out;
}

double cross_entropy(std::span<const double> predicted, int target_class) {
  if (target_class < 0 || static_cast<std::size_t>(target_class) >= predicted.size()) {
    throw config_error("cross_entropy: target class " + std::to_string(target_class) +
                       " out of range");
  }
  double sum = 0.0;
  for (double p : predicted) sum += p;
  if (std::abs(sum - 1.0) > 1e-6) {
    throw config_error("cross_entropy: probabilities sum to " + std::to_string(sum));
  }
  const double p = std::max(predicted[target_class], 1e-12);
  return -std::log(p);
}

AdamState AdamState::for_params(const ParamList& params, double learning_rate) {
  AdamState state;
  state.learning_rate = learning_rate;
  for (const ParamBuffer& p : params) {
    state.first_moment.emplace_back(p.values.data().size(), 0.0);
    state.second_moment.emplace_back(p.values.data().size(), 0.0);
  }
  return state;
}

AdamUpdate adam_step(AdamState state, ParamList params, const ParamList& grads) {
  if (params.size() != grads.size() || params.size() != state.first_moment.size()) {
    throw shape_error("adam_step: parameter, gradient and state lists differ in length");
  }
  state.step_count += 1;
  const double t = static_cast<double>(state.step_count);
  const double bc1 = 1.0 - std::pow(state.beta1, t);
  const double bc2 = 1.0 - std::pow(state.beta2, t);
  for (std::size_t b = 0; b < params.size(); ++b) {
    auto& theta = params[b].values.data();
    const auto& g = grads[b].values.data();
    if (theta.size() != g.size()) {
      throw shape_error("adam_step: gradient buffer '" + grads[b].name + "' shape mismatch");
    }
    auto& m = state.first_moment[b];
    auto& v = state.second_moment[b];
    for (std::size_t i = 0; i < theta.size(); ++i) {
      m[i] = state.beta1 * m[i] + (1.0 - state.beta1) * g[i];
      v[i] = state.beta2 * v[i] + (1.0 - state.beta2) * g[i] * g[i];
      const double m_hat = m[i] / bc1;
      const double v_hat = v[i] / bc2;
      theta[i] -= state.learning_rate * m_hat / (std::sqrt(v_hat) + state.epsilon);
    }
  }
  return AdamUpdate{std::move(params), std::move(state)};
}

namespace detail {

Matrix glorot_uniform(std::size_t rows, std::size_t cols, std::size_t fan_in,
                      std::size_t fan_out, RngStream& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  Matrix m(rows, cols);
  for (double& v : m.data()) {
    v = (2.0 * rng.next_double() - 1.0) * limit;
  }
  return m;
}

ParamList zeros_like(const ParamList& params) {
  ParamList out;
  out.reserve(params.size());
  for (const ParamBuffer& p : params) {
    out.push_back(ParamBuffer{p.name, Matrix(p.values.rows(), p.values.cols())});
  }
  return out;
}

int argmax_worse_ties(std::span<const double> probs) {
  int best = static_cast<int>(probs.size()) - 1;
  for (int i = best - 1; i >= 0; --i) {
    if (probs[i] > probs[best]) best = i;
  }
  return best;
}

}  // namespace detail

}  // namespace gradecast
