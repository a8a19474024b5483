#ifndef GRADECAST_NN_HPP
#define GRADECAST_NN_HPP

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "gradecast/gradebook.hpp"
#include "gradecast/matrix.hpp"

namespace gradecast {

enum class Activation { none, relu, softmax };

/// 1D CNN classifier: conv (valid, stride 1, ReLU) -> max pool -> flatten ->
/// dense ReLU -> dense softmax over the three classes. The chronologically
/// ordered feature vector is treated as a length-n_features sequence with a
/// single channel.
struct CnnSpec {
  int conv_filters = 32;
  int kernel_size = 3;
  int pool_size = 2;
  int dense_units = 128;
  int output_classes = 3;
  int epochs = 200;
  int batch_size = 16;
  std::uint64_t seed = 0;
};

/// LSTM classifier: one assessment per timestep (input dimension 1), final
/// hidden state into a dense softmax head over the three classes.
struct LstmSpec {
  int hidden_units = 64;
  int output_classes = 3;
  int epochs = 200;
  int batch_size = 16;
  std::uint64_t seed = 0;
};

using NetSpec = std::variant<CnnSpec, LstmSpec>;

/// One named parameter (or gradient) buffer. Vectors are stored as 1 x n.
struct ParamBuffer {
  std::string name;
  Matrix values;
};

using ParamList = std::vector<ParamBuffer>;

/// Adam optimizer state with bias-corrected moment estimates.
struct AdamState {
  double learning_rate = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  long step_count = 0;
  std::vector<std::vector<double>> first_moment;
  std::vector<std::vector<double>> second_moment;

  static AdamState for_params(const ParamList& params, double learning_rate = 0.001);
};

struct AdamUpdate {
  ParamList params;
  AdamState state;
};

/// One optimizer step: m and v updates, bias correction, then
/// theta -= lr * m_hat / (sqrt(v_hat) + eps). Pure: returns the new
/// parameters and state instead of mutating the arguments.
AdamUpdate adam_step(AdamState state, ParamList params, const ParamList& grads);

/// Valid cross-correlation with stride 1 followed by ReLU. input is a
/// length-L single-channel sequence, kernels is filters x kernel_size.
/// Output is filters x (L - kernel_size + 1).
Matrix conv1d_forward(std::span<const double> input, const Matrix& kernels,
                      std::span<const double> bias);

struct PoolResult {
  Matrix pooled;
  /// Column index within the input map of each window maximum, laid out
  /// row-major like `pooled`; consumed by backprop gradient routing.
  std::vector<std::size_t> argmax;
};

/// Non-overlapping max pooling with stride == pool_size; a trailing window
/// shorter than pool_size is dropped.
PoolResult maxpool1d(const Matrix& input, int pool_size);

std::vector<double> dense_forward(std::span<const double> input, const Matrix& weights,
                                  std::span<const double> bias, Activation activation);

/// Numerically stable softmax (max subtraction).
std::vector<double> softmax(std::span<const double> logits);

/// Gate parameters of a single LSTM layer; gate order is input, forget,
/// candidate, output. w_* are hidden x input_dim, u_* are hidden x hidden,
/// b_* are 1 x hidden.
struct LstmCell {
  Matrix w_input, u_input, b_input;
  Matrix w_forget, u_forget, b_forget;
  Matrix w_cell, u_cell, b_cell;
  Matrix w_output, u_output, b_output;

  std::size_t hidden_units() const { return w_input.rows(); }
  std::size_t input_dim() const { return w_input.cols(); }
};

/// Run the LSTM recurrence over sequence (T x input_dim) with h_0 = c_0 = 0
/// and return the final hidden state h_T. Gates use sigmoid, the candidate
/// uses tanh: c_t = f*c_{t-1} + i*g, h_t = o*tanh(c_t).
std::vector<double> lstm_forward(const Matrix& sequence, const LstmCell& cell);

/// -ln(predicted[target]) with the probability clamped to >= 1e-12.
/// predicted must sum to 1 within 1e-6.
double cross_entropy(std::span<const double> predicted, int target_class);

/// A classifier after (or before) training. Parameters are the named
/// buffers listed in the architecture's fixed order; class_order is always
/// [G, F, W]. training_log holds the mean cross-entropy per epoch.
struct TrainedNet {
  NetSpec architecture;
  ParamList parameters;
  std::array<LabelClass, 3> class_order{LabelClass::G, LabelClass::F, LabelClass::W};
  std::vector<double> training_log;
  std::size_t input_width = 0;
};

/// Mean cross-entropy over the batch, forward pass only. The finite
/// difference tests lean on this being independent of the backward pass.
double batch_loss(const TrainedNet& net, const Matrix& inputs,
                  const std::vector<LabelClass>& targets);

/// Analytic gradients of the mean batch cross-entropy for every parameter,
/// shaped and named like net.parameters. Optionally reports the batch loss.
ParamList backprop(const TrainedNet& net, const Matrix& inputs,
                   const std::vector<LabelClass>& targets, double* loss_out = nullptr);

/// Build a net with Glorot-uniform weights (zero biases) drawn from the
/// spec seed, without running any training steps.
TrainedNet init_net(const NetSpec& spec, std::size_t input_width);

/// Seeded training: epochs x shuffled mini-batches of adam steps over the
/// mean batch cross-entropy. Deterministic for a fixed spec and data.
TrainedNet train(const NetSpec& spec, const FeatureMatrix& train_data);

struct Predictions {
  std::vector<LabelClass> classes;
  Matrix probabilities;  // n x 3 in [G, F, W] order
};

/// Probabilities via the forward pass; class = argmax with ties broken
/// toward the worse class so borderline students are flagged.
Predictions predict(const TrainedNet& net, const Matrix& data);
Predictions predict(const TrainedNet& net, const FeatureMatrix& data);

/// Versioned JSON model format; loading reproduces predictions bit-exactly.
std::string net_to_json(const TrainedNet& net);
TrainedNet net_from_json(const std::string& text);
void save_net(const TrainedNet& net, const std::string& path);
TrainedNet load_net(const std::string& path);

}  // namespace gradecast

#endif
