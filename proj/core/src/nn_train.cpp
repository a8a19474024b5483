#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "gradecast/errors.hpp"
#include "gradecast/nn.hpp"
#include "gradecast/rng.hpp"
#include "nn_internal.hpp"

namespace gradecast {

namespace {

// Substream keys off the net seed: 0 feeds initialization, 1 feeds the
// per-epoch batch shuffles.
constexpr std::uint64_t kInitStreamKey = 0;
constexpr std::uint64_t kShuffleStreamKey = 1;

std::uint64_t seed_of(const NetSpec& spec) {
  return std::visit([](const auto& s) { return s.seed; }, spec);
}

std::vector<int> targets_of(const std::vector<LabelClass>& labels) {
  std::vector<int> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) out[i] = static_cast<int>(labels[i]);
  return out;
}

}  // namespace

TrainedNet init_net(const NetSpec& spec, std::size_t input_width) {
  TrainedNet net;
  net.architecture = spec;
  net.input_width = input_width;
  RngStream init_rng = RngStream(seed_of(spec)).split(kInitStreamKey);
  if (const CnnSpec* cnn = std::get_if<CnnSpec>(&spec)) {
    detail::cnn_validate(*cnn, input_width);
    net.parameters = detail::cnn_init_params(*cnn, input_width, init_rng);
  } else {
    const LstmSpec& lstm = std::get<LstmSpec>(spec);
    detail::lstm_validate(lstm, input_width);
    net.parameters = detail::lstm_init_params(lstm, input_width, init_rng);
  }
  return net;
}

double batch_loss(const TrainedNet& net, const Matrix& inputs,
                  const std::vector<LabelClass>& targets) {
  if (inputs.rows() == 0 || inputs.rows() != targets.size()) {
    throw shape_error("batch_loss: inputs and targets disagree");
  }
  const std::vector<int> y = targets_of(targets);
  if (const CnnSpec* cnn = std::get_if<CnnSpec>(&net.architecture)) {
    return detail::cnn_batch_loss(*cnn, net.parameters, inputs, y);
  }
  return detail::lstm_batch_loss(std::get<LstmSpec>(net.architecture), net.parameters, inputs, y);
}

ParamList backprop(const TrainedNet& net, const Matrix& inputs,
                   const std::vector<LabelClass>& targets, double* loss_out) {
  if (inputs.rows() == 0 || inputs.rows() != targets.size()) {
    throw shape_error("backprop: batch is empty or mismatched");
  }
  if (inputs.cols() != net.input_width) {
    throw shape_error("backprop: input width " + std::to_string(inputs.cols()) +
                      " does not match the network's " + std::to_string(net.input_width));
  }
  const std::vector<int> y = targets_of(targets);
  if (const CnnSpec* cnn = std::get_if<CnnSpec>(&net.architecture)) {
    return detail::cnn_backprop(*cnn, net.parameters, inputs, y, loss_out);
  }
  return detail::lstm_backprop(std::get<LstmSpec>(net.architecture), net.parameters, inputs, y,
                               loss_out);
}

TrainedNet train(const NetSpec& spec, const FeatureMatrix& train_data) {
  if (train_data.n_rows() == 0) {
    throw shape_error("train: empty training set");
  }
  std::set<LabelClass> distinct(train_data.labels.begin(), train_data.labels.end());
  if (distinct.size() < 2) {
    throw config_error("train: need at least 2 classes in the training data");
  }

  TrainedNet net = init_net(spec, train_data.n_features());
  const auto [epochs, batch_size] = std::visit(
      [](const auto& s) { return std::pair<int, int>(s.epochs, s.batch_size); }, spec);

  AdamState state = AdamState::for_params(net.parameters);
  RngStream shuffle_rng = RngStream(seed_of(spec)).split(kShuffleStreamKey);

  const std::size_t n = train_data.n_rows();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);

  net.training_log.reserve(static_cast<std::size_t>(epochs));
  for (int epoch = 0; epoch < epochs; ++epoch) {
    shuffle_rng.shuffle(order);
    double epoch_loss_sum = 0.0;
    for (std::size_t start = 0; start < n; start += static_cast<std::size_t>(batch_size)) {
      const std::size_t end = std::min(n, start + static_cast<std::size_t>(batch_size));
      Matrix batch(end - start, train_data.n_features());
      std::vector<LabelClass> batch_labels(end - start);
      for (std::size_t i = start; i < end; ++i) {
        for (std::size_t j = 0; j < train_data.n_features(); ++j) {
          batch(i - start, j) = train_data.values(order[i], j);
        }
        batch_labels[i - start] = train_data.labels[order[i]];
      }

      double batch_mean_loss = 0.0;
      ParamList grads;
      try {
        grads = backprop(net, batch, batch_labels, &batch_mean_loss);
      } catch (const numeric_error& e) {
        throw numeric_error("epoch " + std::to_string(epoch) + ": " + e.what());
      }
      epoch_loss_sum += batch_mean_loss * static_cast<double>(end - start);

      AdamUpdate update = adam_step(std::move(state), std::move(net.parameters), grads);
      net.parameters = std::move(update.params);
      state = std::move(update.state);
    }
    const double epoch_loss = epoch_loss_sum / static_cast<double>(n);
    if (!std::isfinite(epoch_loss)) {
      throw numeric_error("epoch " + std::to_string(epoch) + ": non-finite training loss");
    }
    net.training_log.push_back(epoch_loss);
  }
  return net;
}

Predictions predict(const TrainedNet& net, const Matrix& data) {
  if (data.cols() != net.input_width) {
    throw shape_error("predict: input width " + std::to_string(data.cols()) +
                      " does not match the network's " + std::to_string(net.input_width));
  }
  Predictions preds;
  preds.probabilities = Matrix(data.rows(), kNumClasses);
  preds.classes.reserve(data.rows());
  for (std::size_t i = 0; i < data.rows(); ++i) {
    std::vector<double> probs;
    if (const CnnSpec* cnn = std::get_if<CnnSpec>(&net.architecture)) {
      probs = detail::cnn_forward_probs(*cnn, net.parameters, data.row(i));
    } else {
      probs = detail::lstm_forward_probs(std::get<LstmSpec>(net.architecture), net.parameters,
                                         data.row(i));
    }
    for (int c = 0; c < kNumClasses; ++c) preds.probabilities(i, c) = probs[c];
    preds.classes.push_back(static_cast<LabelClass>(detail::argmax_worse_ties(probs)));
  }
  return preds;
}

Predictions predict(const TrainedNet& net, const FeatureMatrix& data) {
  return predict(net, data.values);
}

}  // namespace gradecast
