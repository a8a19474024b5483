#ifndef GRADECAST_SRC_NN_INTERNAL_HPP
#define GRADECAST_SRC_NN_INTERNAL_HPP

#include <vector>

#include "gradecast/nn.hpp"
#include "gradecast/rng.hpp"

namespace gradecast::detail {

// Fixed parameter buffer order per architecture. Serialization, adam state
// and gradient lists all share these layouts.
enum CnnParam { kConvW = 0, kConvB, kDenseW, kDenseB, kOutW, kOutB, kCnnParamCount };
enum LstmParam {
  kWInput = 0,
  kUInput,
  kBInput,
  kWForget,
  kUForget,
  kBForget,
  kWCell,
  kUCell,
  kBCell,
  kWOutput,
  kUOutput,
  kBOutput,
  kHeadW,
  kHeadB,
  kLstmParamCount
};

ParamList cnn_init_params(const CnnSpec& spec, std::size_t input_width, RngStream& rng);
ParamList lstm_init_params(const LstmSpec& spec, std::size_t input_width, RngStream& rng);

void cnn_validate(const CnnSpec& spec, std::size_t input_width);
void lstm_validate(const LstmSpec& spec, std::size_t input_width);

std::vector<double> cnn_forward_probs(const CnnSpec& spec, const ParamList& params,
                                      std::span<const double> row);
std::vector<double> lstm_forward_probs(const LstmSpec& spec, const ParamList& params,
                                       std::span<const double> row);

double cnn_batch_loss(const CnnSpec& spec, const ParamList& params, const Matrix& inputs,
                      const std::vector<int>& targets);
double lstm_batch_loss(const LstmSpec& spec, const ParamList& params, const Matrix& inputs,
                       const std::vector<int>& targets);

ParamList cnn_backprop(const CnnSpec& spec, const ParamList& params, const Matrix& inputs,
                       const std::vector<int>& targets, double* loss_out);
ParamList lstm_backprop(const LstmSpec& spec, const ParamList& params, const Matrix& inputs,
                        const std::vector<int>& targets, double* loss_out);

/// Uniform Glorot draw in +-sqrt(6 / (fan_in + fan_out)), row-major fill.
Matrix glorot_uniform(std::size_t rows, std::size_t cols, std::size_t fan_in,
                      std::size_t fan_out, RngStream& rng);

ParamList zeros_like(const ParamList& params);

/// Argmax over class probabilities with ties resolved toward the worse
/// class (higher index).
int argmax_worse_ties(std::span<const double> probs);

}  // namespace gradecast::detail

#endif
