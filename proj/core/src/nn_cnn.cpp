#include <cmath>
#include <string>

#include "gradecast/errors.hpp"
#include "gradecast/nn.hpp"
#include "nn_internal.hpp"

namespace gradecast::detail {

namespace {

struct CnnShape {
  std::size_t length;    // input sequence length
  std::size_t filters;
  std::size_t kernel;
  std::size_t conv_len;  // length - kernel + 1
  std::size_t pool;
  std::size_t windows;   // conv_len / pool
  std::size_t flat;      // filters * windows
  std::size_t dense;
  std::size_t classes;
};

CnnShape shape_of(const CnnSpec& spec, std::size_t input_width) {
  CnnShape s;
  s.length = input_width;
  s.filters = static_cast<std::size_t>(spec.conv_filters);
  s.kernel = static_cast<std::size_t>(spec.kernel_size);
  s.conv_len = s.length - s.kernel + 1;
  s.pool = static_cast<std::size_t>(spec.pool_size);
  s.windows = s.conv_len / s.pool;
  s.flat = s.filters * s.windows;
  s.dense = static_cast<std::size_t>(spec.dense_units);
  s.classes = static_cast<std::size_t>(spec.output_classes);
  return s;
}

struct CnnCache {
  Matrix pre_conv;                // filters x conv_len, before ReLU
  PoolResult pool;                // over the ReLU'd map
  std::vector<double> flat;       // filter-major: index f * windows + w
  std::vector<double> pre_dense;  // before ReLU
  std::vector<double> act_dense;
  std::vector<double> probs;
};

CnnCache forward_one(const CnnShape& s, const ParamList& p, std::span<const double> row) {
  CnnCache cache;
  const Matrix& conv_w = p[kConvW].values;
  const Matrix& conv_b = p[kConvB].values;

  cache.pre_conv = Matrix(s.filters, s.conv_len);
  Matrix act(s.filters, s.conv_len);
  for (std::size_t f = 0; f < s.filters; ++f) {
    for (std::size_t t = 0; t < s.conv_len; ++t) {
      double acc = conv_b(0, f);
      for (std::size_t k = 0; k < s.kernel; ++k) acc += conv_w(f, k) * row[t + k];
      cache.pre_conv(f, t) = acc;
      act(f, t) = acc > 0.0 ? acc : 0.0;
    }
  }

  cache.pool = maxpool1d(act, static_cast<int>(s.pool));
  cache.flat.resize(s.flat);
  for (std::size_t f = 0; f < s.filters; ++f) {
    for (std::size_t w = 0; w < s.windows; ++w) {
      cache.flat[f * s.windows + w] = cache.pool.pooled(f, w);
    }
  }

  const Matrix& dense_w = p[kDenseW].values;
  const Matrix& dense_b = p[kDenseB].values;
  cache.pre_dense.resize(s.dense);
  cache.act_dense.resize(s.dense);
  for (std::size_t r = 0; r < s.dense; ++r) {
    double acc = dense_b(0, r);
    for (std::size_t c = 0; c < s.flat; ++c) acc += dense_w(r, c) * cache.flat[c];
    cache.pre_dense[r] = acc;
    cache.act_dense[r] = acc > 0.0 ? acc : 0.0;
  }

  std::vector<double> logits(s.classes);
  const Matrix& out_w = p[kOutW].values;
  const Matrix& out_b = p[kOutB].values;
  for (std::size_t r = 0; r < s.classes; ++r) {
    double acc = out_b(0, r);
    for (std::size_t c = 0; c < s.dense; ++c) acc += out_w(r, c) * cache.act_dense[c];
    logits[r] = acc;
  }
  cache.probs = softmax(logits);
  return cache;
}

}  // namespace

void cnn_validate(const CnnSpec& spec, std::size_t input_width) {
  if (spec.conv_filters < 1 || spec.kernel_size < 1 || spec.pool_size < 1 ||
      spec.dense_units < 1 || spec.batch_size < 1 || spec.epochs < 0) {
    throw config_error("cnn: filter/kernel/pool/dense/batch counts must be >= 1");
  }
  if (spec.output_classes != kNumClasses) {
    throw config_error("cnn: output_classes must be 3");
  }
  if (input_width < static_cast<std::size_t>(spec.kernel_size)) {
    throw shape_error("cnn: " + std::to_string(input_width) + " features is narrower than kernel_size " +
                      std::to_string(spec.kernel_size));
  }
  const std::size_t conv_len = input_width - static_cast<std::size_t>(spec.kernel_size) + 1;
  if (conv_len < static_cast<std::size_t>(spec.pool_size)) {
    throw shape_error("cnn: conv output " + std::to_string(conv_len) +
                      " is narrower than pool_size " + std::to_string(spec.pool_size));
  }
}

ParamList cnn_init_params(const CnnSpec& spec, std::size_t input_width, RngStream& rng) {
  const CnnShape s = shape_of(spec, input_width);
  ParamList params;
  params.push_back({"conv.w", glorot_uniform(s.filters, s.kernel, s.kernel,
                                             s.filters * s.kernel, rng)});
  params.push_back({"conv.b", Matrix(1, s.filters)});
  params.push_back({"dense.w", glorot_uniform(s.dense, s.flat, s.flat, s.dense, rng)});
  params.push_back({"dense.b", Matrix(1, s.dense)});
  params.push_back({"out.w", glorot_uniform(s.classes, s.dense, s.dense, s.classes, rng)});
  params.push_back({"out.b", Matrix(1, s.classes)});
  return params;
}

std::vector<double> cnn_forward_probs(const CnnSpec& spec, const ParamList& params,
                                      std::span<const double> row) {
  return forward_one(shape_of(spec, row.size()), params, row).probs;
}

double cnn_batch_loss(const CnnSpec& spec, const ParamList& params, const Matrix& inputs,
                      const std::vector<int>& targets) {
  const CnnShape s = shape_of(spec, inputs.cols());
  double loss = 0.0;
  for (std::size_t i = 0; i < inputs.rows(); ++i) {
    CnnCache cache = forward_one(s, params, inputs.row(i));
    loss += cross_entropy(cache.probs, targets[i]);
  }
  return loss / static_cast<double>(inputs.rows());
}

ParamList cnn_backprop(const CnnSpec& spec, const ParamList& params, const Matrix& inputs,
                       const std::vector<int>& targets, double* loss_out) {
  const CnnShape s = shape_of(spec, inputs.cols());
  const std::size_t batch = inputs.rows();
  ParamList grads = zeros_like(params);
  Matrix& d_conv_w = grads[kConvW].values;
  Matrix& d_conv_b = grads[kConvB].values;
  Matrix& d_dense_w = grads[kDenseW].values;
  Matrix& d_dense_b = grads[kDenseB].values;
  Matrix& d_out_w = grads[kOutW].values;
  Matrix& d_out_b = grads[kOutB].values;

  const Matrix& dense_w = params[kDenseW].values;
  const Matrix& out_w = params[kOutW].values;

  double loss = 0.0;
  for (std::size_t i = 0; i < batch; ++i) {
    const auto row = inputs.row(i);
    CnnCache cache = forward_one(s, params, row);
    loss += cross_entropy(cache.probs, targets[i]);

    // Softmax + cross-entropy collapses to probs - onehot.
    std::vector<double> d_logits = cache.probs;
    d_logits[targets[i]] -= 1.0;

    std::vector<double> d_act_dense(s.dense, 0.0);
    for (std::size_t r = 0; r < s.classes; ++r) {
      d_out_b(0, r) += d_logits[r];
      for (std::size_t c = 0; c < s.dense; ++c) {
        d_out_w(r, c) += d_logits[r] * cache.act_dense[c];
        d_act_dense[c] += out_w(r, c) * d_logits[r];
      }
    }

    std::vector<double> d_flat(s.flat, 0.0);
    for (std::size_t r = 0; r < s.dense; ++r) {
      if (cache.pre_dense[r] <= 0.0) continue;
      const double dz = d_act_dense[r];
      d_dense_b(0, r) += dz;
      for (std::size_t c = 0; c < s.flat; ++c) {
        d_dense_w(r, c) += dz * cache.flat[c];
        d_flat[c] += dense_w(r, c) * dz;
      }
    }

    // Pool routing: each window's gradient lands on its argmax column.
    Matrix d_pre_conv(s.filters, s.conv_len);
    for (std::size_t f = 0; f < s.filters; ++f) {
      for (std::size_t w = 0; w < s.windows; ++w) {
        const std::size_t src = cache.pool.argmax[f * s.windows + w];
        if (cache.pre_conv(f, src) > 0.0) {
          d_pre_conv(f, src) += d_flat[f * s.windows + w];
        }
      }
    }

    for (std::size_t f = 0; f < s.filters; ++f) {
      for (std::size_t t = 0; t < s.conv_len; ++t) {
        const double dz = d_pre_conv(f, t);
        if (dz == 0.0) continue;
        d_conv_b(0, f) += dz;
        for (std::size_t k = 0; k < s.kernel; ++k) {
          d_conv_w(f, k) += dz * row[t + k];
        }
      }
    }
  }

  const double inv = 1.0 / static_cast<double>(batch);
  for (ParamBuffer& g : grads) {
    for (double& v : g.values.data()) {
      v *= inv;
      if (!std::isfinite(v)) {
        throw numeric_error("cnn backprop: non-finite gradient in " + g.name);
      }
    }
  }
  if (loss_out != nullptr) *loss_out = loss * inv;
  return grads;
}

}  // namespace gradecast::detail
