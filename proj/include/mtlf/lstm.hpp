#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mtlf/types.hpp"

namespace mtlf {

/// Training protocol for the sequence-to-sequence LSTM. Defaults follow the
/// reference protocol: 250 epochs of full-sequence BPTT with Adam at 0.005,
/// dropped by a factor of 0.2 from epoch 125, gradient norm clipped at 1.
struct TrainConfig {
    int hidden_size = 20;
    int epochs = 250;
    double initial_lr = 0.005;
    int lr_drop_epoch = 125;
    double lr_drop_factor = 0.2;
    double grad_clip = 1.0;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_epsilon = 1e-8;
    uint64_t seed = 0;
};

// Gate indices into the parameter blocks.
inline constexpr int kGateInput = 0;
inline constexpr int kGateForget = 1;
inline constexpr int kGateCell = 2;  // cell candidate g
inline constexpr int kGateOutput = 3;

/// All trainable scalars of the scalar-in/scalar-out LSTM in one flat
/// buffer, so clipping, Adam and serialization treat the model as a single
/// vector. Layout, in order:
///   W    4 blocks of h   per-gate input weights (i, f, g, o)
///   R    4 blocks of h*h per-gate recurrent weights, row-major
///   b    4 blocks of h   per-gate input-side biases
///   rb   4 blocks of h   per-gate recurrent-side biases
///   W_z  h               output weights
///   b_z  1               output bias
/// Each gate carries an input-side and a recurrent-side bias (the
/// convention of the major deep-learning toolboxes), so the trainable
/// count is 4h^2 + 13h + 1.
class LstmParams {
public:
    LstmParams() = default;
    explicit LstmParams(int hidden)
        : hidden_(hidden), data_(param_count(hidden), 0.0) {}

    static std::size_t param_count(int hidden) {
        const std::size_t h = static_cast<std::size_t>(hidden);
        return 4 * h * h + 13 * h + 1;
    }

    int hidden() const { return hidden_; }
    std::size_t size() const { return data_.size(); }
    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    double* w(int gate) { return data_.data() + gate * hidden_; }
    const double* w(int gate) const { return data_.data() + gate * hidden_; }
    double* r(int gate) { return data_.data() + off_r_()+ gate * hidden_ * hidden_; }
    const double* r(int gate) const { return data_.data() + off_r_() + gate * hidden_ * hidden_; }
    double* b_in(int gate) { return data_.data() + off_b_() + gate * hidden_; }
    const double* b_in(int gate) const { return data_.data() + off_b_() + gate * hidden_; }
    double* b_rec(int gate) { return data_.data() + off_rb_() + gate * hidden_; }
    const double* b_rec(int gate) const { return data_.data() + off_rb_() + gate * hidden_; }
    double* w_z() { return data_.data() + off_wz_(); }
    const double* w_z() const { return data_.data() + off_wz_(); }
    double& b_z() { return data_[off_wz_() + hidden_]; }
    double b_z() const { return data_[off_wz_() + hidden_]; }

private:
    std::size_t off_r_() const { return 4u * hidden_; }
    std::size_t off_b_() const { return off_r_() + 4u * hidden_ * hidden_; }
    std::size_t off_rb_() const { return off_b_() + 4u * hidden_; }
    std::size_t off_wz_() const { return off_rb_() + 4u * hidden_; }

    int hidden_ = 0;
    std::vector<double> data_;
};

/// Hidden and cell state; zero at the start of every sequence.
struct LstmState {
    std::vector<double> h, c;
    explicit LstmState(int hidden) : h(hidden, 0.0), c(hidden, 0.0) {}
};

/// Affine map taking the training sequence to zero mean and unit variance
/// (sample standard deviation); forecasts are mapped back through it.
struct Standardizer {
    double mean = 0.0;
    double std = 1.0;

    double standardize(double v) const { return (v - mean) / std; }
    double destandardize(double v) const { return v * std + mean; }

    /// Throws DegenerateSequence when the sequence is constant.
    static Standardizer fit(const std::vector<double>& sequence);
};

struct StepResult {
    LstmState state;
    double output = 0.0;
};

/// One LSTM block update plus the linear output unit:
///   i,f,o = sigmoid(W z + R h + b + rb),  g = tanh(W_g z + R_g h + b_g + rb_g)
///   c' = f (.) c + i (.) g,  h' = o (.) tanh(c'),  output = W_z . h' + b_z
StepResult step(const LstmParams& params, const LstmState& state, double input);

/// Everything the backward pass needs from a forward pass over one sequence.
struct ForwardCache {
    int hidden = 0;
    int steps = 0;                     // number of prediction/target pairs
    std::vector<double> inputs;        // z_t, length steps
    std::vector<double> targets;       // z_{t+1}, length steps
    std::vector<double> outputs;       // predictions, length steps
    std::vector<double> gate_i, gate_f, gate_g, gate_o;  // steps x hidden
    std::vector<double> cell, tanh_cell, hidden_state;   // steps x hidden
    double loss = 0.0;
};

/// Runs the network over a standardized sequence predicting each next value.
/// Loss is half the mean squared one-step error. Throws SequenceTooShort for
/// sequences with fewer than two values.
double forward(const LstmParams& params, const std::vector<double>& sequence,
               ForwardCache* cache);

/// Exact gradient of the forward loss with respect to every parameter,
/// by backpropagation through time.
LstmParams backward(const LstmParams& params, const ForwardCache& cache);

/// Scales every component by threshold/norm when the global L2 norm exceeds
/// the threshold; direction is preserved.
void clip_gradients(LstmParams& grads, double threshold);

struct AdamMoments {
    std::vector<double> m, v;
    explicit AdamMoments(std::size_t n) : m(n, 0.0), v(n, 0.0) {}
};

/// One Adam update with bias correction; step_index counts from 1.
void adam_step(LstmParams& params, const LstmParams& grads, AdamMoments& moments,
               int step_index, double lr, const TrainConfig& config);

/// Glorot-uniform input/output weights, orthogonal recurrent weights,
/// zero biases except the forget gate's input-side bias, set to 1.
void init_params(LstmParams& params, uint64_t seed);

struct TrainResult {
    LstmParams params;
    Standardizer standardizer;
    std::vector<double> loss_history;  // one entry per epoch
};

/// Standardizes the sequence and runs the full training protocol; one Adam
/// step per epoch over the whole sequence. Deterministic given config.seed.
/// Throws SequenceTooShort (length < 24) or DegenerateSequence.
TrainResult train(const std::vector<double>& sequence, const TrainConfig& config);

/// Replays the standardized history to warm up the state, then forecasts
/// recursively, feeding each prediction back as the next input; outputs are
/// de-standardized.
std::vector<double> forecast(const LstmParams& params, const Standardizer& standardizer,
                             const std::vector<double>& history, int steps);

/// Versioned text artifact: hidden size, all parameters in layout order and
/// the standardizer, printed with 17 significant digits (exact round trip).
void save_lstm(const std::string& path, const LstmParams& params,
               const Standardizer& standardizer);
std::pair<LstmParams, Standardizer> load_lstm(const std::string& path);

}  // namespace mtlf
