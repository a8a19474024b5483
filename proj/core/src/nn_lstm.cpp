#include <cmath>
#include <string>

#include "gradecast/errors.hpp"
#include "gradecast/nn.hpp"
#include "nn_internal.hpp"

namespace gradecast {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

struct GateRefs {
  const Matrix &wi, &ui, &bi;
  const Matrix &wf, &uf, &bf;
  const Matrix &wg, &ug, &bg;
  const Matrix &wo, &uo, &bo;
};

struct LstmTrace {
  // One row per timestep, hidden_units columns. Gate matrices hold the
  // activated values; c/tanh_c/h are the cell and hidden trajectories.
  Matrix i, f, g, o, c, tanh_c, h;
};

void check_gate_shapes(const GateRefs& p, std::size_t input_dim) {
  const std::size_t hidden = p.wi.rows();
  const Matrix* ws[] = {&p.wi, &p.wf, &p.wg, &p.wo};
  const Matrix* us[] = {&p.ui, &p.uf, &p.ug, &p.uo};
  const Matrix* bs[] = {&p.bi, &p.bf, &p.bg, &p.bo};
  for (int k = 0; k < 4; ++k) {
    if (ws[k]->rows() != hidden || ws[k]->cols() != input_dim) {
      throw shape_error("lstm: input weight matrix must be hidden x input_dim");
    }
    if (us[k]->rows() != hidden || us[k]->cols() != hidden) {
      throw shape_error("lstm: recurrent weight matrix must be hidden x hidden");
    }
    if (bs[k]->rows() != 1 || bs[k]->cols() != hidden) {
      throw shape_error("lstm: bias must be 1 x hidden");
    }
  }
}

// Standard recurrence with h_0 = c_0 = 0:
//   i,f,o = sigmoid(Wx + Uh + b), g = tanh(Wx + Uh + b)
//   c_t = f*c_{t-1} + i*g,  h_t = o*tanh(c_t)
LstmTrace lstm_run(const GateRefs& p, const Matrix& sequence) {
  const std::size_t steps = sequence.rows();
  const std::size_t dim = sequence.cols();
  const std::size_t hidden = p.wi.rows();
  if (steps == 0) {
    throw shape_error("lstm: empty sequence");
  }
  check_gate_shapes(p, dim);

  LstmTrace trace;
  for (Matrix* m : {&trace.i, &trace.f, &trace.g, &trace.o, &trace.c, &trace.tanh_c, &trace.h}) {
    *m = Matrix(steps, hidden);
  }

  std::vector<double> h_prev(hidden, 0.0);
  std::vector<double> c_prev(hidden, 0.0);
  for (std::size_t t = 0; t < steps; ++t) {
    for (std::size_t u = 0; u < hidden; ++u) {
      double zi = p.bi(0, u), zf = p.bf(0, u), zg = p.bg(0, u), zo = p.bo(0, u);
      for (std::size_t d = 0; d < dim; ++d) {
        const double x = sequence(t, d);
        zi += p.wi(u, d) * x;
        zf += p.wf(u, d) * x;
        zg += p.wg(u, d) * x;
        zo += p.wo(u, d) * x;
      }
      for (std::size_t v = 0; v < hidden; ++v) {
        const double hp = h_prev[v];
        zi += p.ui(u, v) * hp;
        zf += p.uf(u, v) * hp;
        zg += p.ug(u, v) * hp;
        zo += p.uo(u, v) * hp;
      }
      const double gi = sigmoid(zi);
      const double gf = sigmoid(zf);
      const double gg = std::tanh(zg);
      const double go = sigmoid(zo);
      const double cell = gf * c_prev[u] + gi * gg;
      const double tc = std::tanh(cell);
      trace.i(t, u) = gi;
      trace.f(t, u) = gf;
      trace.g(t, u) = gg;
      trace.o(t, u) = go;
      trace.c(t, u) = cell;
      trace.tanh_c(t, u) = tc;
      trace.h(t, u) = go * tc;
    }
    for (std::size_t u = 0; u < hidden; ++u) {
      h_prev[u] = trace.h(t, u);
      c_prev[u] = trace.c(t, u);
    }
  }
  return trace;
}

GateRefs refs_from_cell(const LstmCell& cell) {
  return GateRefs{cell.w_input,  cell.u_input,  cell.b_input,  cell.w_forget,
                  cell.u_forget, cell.b_forget, cell.w_cell,   cell.u_cell,
                  cell.b_cell,   cell.w_output, cell.u_output, cell.b_output};
}

GateRefs refs_from_params(const ParamList& p) {
  using namespace detail;
  return GateRefs{p[kWInput].values,  p[kUInput].values,  p[kBInput].values,
                  p[kWForget].values, p[kUForget].values, p[kBForget].values,
                  p[kWCell].values,   p[kUCell].values,   p[kBCell].values,
                  p[kWOutput].values, p[kUOutput].values, p[kBOutput].values};
}

Matrix as_sequence(std::span<const double> row) {
  Matrix seq(row.size(), 1);
  for (std::size_t t = 0; t < row.size(); ++t) seq(t, 0) = row[t];
  return seq;
}

std::vector<double> head_probs(const ParamList& p, std::span<const double> h_last) {
  const Matrix& head_w = p[detail::kHeadW].values;
  const Matrix& head_b = p[detail::kHeadB].values;
  std::vector<double> logits(head_w.rows());
  for (std::size_t r = 0; r < head_w.rows(); ++r) {
    double acc = head_b(0, r);
    for (std::size_t c = 0; c < head_w.cols(); ++c) acc += head_w(r, c) * h_last[c];
    logits[r] = acc;
  }
  return softmax(logits);
}

}  // namespace

std::vector<double> lstm_forward(const Matrix& sequence, const LstmCell& cell) {
  LstmTrace trace = lstm_run(refs_from_cell(cell), sequence);
  const std::size_t last = trace.h.rows() - 1;
  std::vector<double> h_last(trace.h.cols());
  for (std::size_t u = 0; u < h_last.size(); ++u) h_last[u] = trace.h(last, u);
  return h_last;
}

namespace detail {

void lstm_validate(const LstmSpec& spec, std::size_t input_width) {
  if (spec.hidden_units < 1 || spec.batch_size < 1 || spec.epochs < 0) {
    throw config_error("lstm: hidden_units and batch_size must be >= 1");
  }
  if (spec.output_classes != kNumClasses) {
    throw config_error("lstm: output_classes must be 3");
  }
  if (input_width < 1) {
    throw shape_error("lstm: need at least one feature timestep");
  }
}

ParamList lstm_init_params(const LstmSpec& spec, std::size_t input_width, RngStream& rng) {
  (void)input_width;  // one feature per timestep, input dimension is 1
  const std::size_t hidden = static_cast<std::size_t>(spec.hidden_units);
  const std::size_t classes = static_cast<std::size_t>(spec.output_classes);
  const std::size_t dim = 1;

  ParamList params(kLstmParamCount);
  const char* gate_names[4] = {"input", "forget", "cell", "output"};
  for (int gate = 0; gate < 4; ++gate) {
    const int base = gate * 3;
    params[base + 0] = {std::string("lstm.w_") + gate_names[gate],
                        glorot_uniform(hidden, dim, dim, hidden, rng)};
    params[base + 1] = {std::string("lstm.u_") + gate_names[gate],
                        glorot_uniform(hidden, hidden, hidden, hidden, rng)};
    params[base + 2] = {std::string("lstm.b_") + gate_names[gate], Matrix(1, hidden)};
  }
  params[kHeadW] = {"out.w", glorot_uniform(classes, hidden, hidden, classes, rng)};
  params[kHeadB] = {"out.b", Matrix(1, classes)};
  return params;
}

std::vector<double> lstm_forward_probs(const LstmSpec& spec, const ParamList& params,
                                       std::span<const double> row) {
  (void)spec;
  LstmTrace trace = lstm_run(refs_from_params(params), as_sequence(row));
  const std::size_t last = trace.h.rows() - 1;
  std::vector<double> h_last(trace.h.cols());
  for (std::size_t u = 0; u < h_last.size(); ++u) h_last[u] = trace.h(last, u);
  return head_probs(params, h_last);
}

double lstm_batch_loss(const LstmSpec& spec, const ParamList& params, const Matrix& inputs,
                       const std::vector<int>& targets) {
  double loss = 0.0;
  for (std::size_t i = 0; i < inputs.rows(); ++i) {
    loss += cross_entropy(lstm_forward_probs(spec, params, inputs.row(i)), targets[i]);
  }
  return loss / static_cast<double>(inputs.rows());
}

ParamList lstm_backprop(const LstmSpec& spec, const ParamList& params, const Matrix& inputs,
                        const std::vector<int>& targets, double* loss_out) {
  const std::size_t batch = inputs.rows();
  const std::size_t hidden = static_cast<std::size_t>(spec.hidden_units);
  const std::size_t classes = static_cast<std::size_t>(spec.output_classes);
  ParamList grads = zeros_like(params);
  const GateRefs p = refs_from_params(params);
  const Matrix& head_w = params[kHeadW].values;

  double loss = 0.0;
  for (std::size_t n = 0; n < batch; ++n) {
    const Matrix seq = as_sequence(inputs.row(n));
    const std::size_t steps = seq.rows();
    LstmTrace trace = lstm_run(p, seq);

    std::vector<double> h_last(hidden);
    for (std::size_t u = 0; u < hidden; ++u) h_last[u] = trace.h(steps - 1, u);
    std::vector<double> probs = head_probs(params, h_last);
    loss += cross_entropy(probs, targets[n]);

    std::vector<double> d_logits = probs;
    d_logits[targets[n]] -= 1.0;

    std::vector<double> d_h(hidden, 0.0);
    for (std::size_t r = 0; r < classes; ++r) {
      grads[kHeadB].values(0, r) += d_logits[r];
      for (std::size_t u = 0; u < hidden; ++u) {
        grads[kHeadW].values(r, u) += d_logits[r] * h_last[u];
        d_h[u] += head_w(r, u) * d_logits[r];
      }
    }

    // Backpropagation through time.
    std::vector<double> d_c(hidden, 0.0);
    std::vector<double> d_h_prev(hidden, 0.0);
    std::vector<double> dzi(hidden), dzf(hidden), dzg(hidden), dzo(hidden);
    for (std::size_t t = steps; t-- > 0;) {
      for (std::size_t u = 0; u < hidden; ++u) {
        const double gi = trace.i(t, u);
        const double gf = trace.f(t, u);
        const double gg = trace.g(t, u);
        const double go = trace.o(t, u);
        const double tc = trace.tanh_c(t, u);
        const double c_prev = t > 0 ? trace.c(t - 1, u) : 0.0;

        const double d_o = d_h[u] * tc;
        const double d_cell = d_c[u] + d_h[u] * go * (1.0 - tc * tc);
        const double d_i = d_cell * gg;
        const double d_g = d_cell * gi;
        const double d_f = d_cell * c_prev;

        dzi[u] = d_i * gi * (1.0 - gi);
        dzf[u] = d_f * gf * (1.0 - gf);
        dzg[u] = d_g * (1.0 - gg * gg);
        dzo[u] = d_o * go * (1.0 - go);
        d_c[u] = d_cell * gf;
      }

      std::fill(d_h_prev.begin(), d_h_prev.end(), 0.0);
      for (std::size_t u = 0; u < hidden; ++u) {
        const double x = seq(t, 0);
        grads[kWInput].values(u, 0) += dzi[u] * x;
        grads[kWForget].values(u, 0) += dzf[u] * x;
        grads[kWCell].values(u, 0) += dzg[u] * x;
        grads[kWOutput].values(u, 0) += dzo[u] * x;
        grads[kBInput].values(0, u) += dzi[u];
        grads[kBForget].values(0, u) += dzf[u];
        grads[kBCell].values(0, u) += dzg[u];
        grads[kBOutput].values(0, u) += dzo[u];
        if (t > 0) {
          for (std::size_t v = 0; v < hidden; ++v) {
            const double hp = trace.h(t - 1, v);
            grads[kUInput].values(u, v) += dzi[u] * hp;
            grads[kUForget].values(u, v) += dzf[u] * hp;
            grads[kUCell].values(u, v) += dzg[u] * hp;
            grads[kUOutput].values(u, v) += dzo[u] * hp;
            d_h_prev[v] += p.ui(u, v) * dzi[u] + p.uf(u, v) * dzf[u] + p.ug(u, v) * dzg[u] +
                           p.uo(u, v) * dzo[u];
          }
        }
      }
      d_h = d_h_prev;
    }
  }

  const double inv = 1.0 / static_cast<double>(batch);
  for (ParamBuffer& g : grads) {
    for (double& v : g.values.data()) {
      v *= inv;
      if (!std::isfinite(v)) {
        throw numeric_error("lstm backprop: non-finite gradient in " + g.name);
      }
    }
  }
  if (loss_out != nullptr) *loss_out = loss * inv;
  return grads;
}

}  // namespace gradecast::detail
