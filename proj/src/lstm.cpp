#include "mtlf/lstm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "mtlf/data_io.hpp"
#include "mtlf/rng.hpp"

namespace mtlf {

namespace {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

inline double dot(const double* a, const double* b, int n) {
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += a[k] * b[k];
    return s;
}

inline void axpy(double alpha, const double* x, double* y, int n) {
    for (int k = 0; k < n; ++k) y[k] += alpha * x[k];
}

// One block update. Writes the gate activations and the new state into the
// caller's buffers (none may alias h_prev/c_prev) and returns the output of
// the linear unit.
double step_core(const LstmParams& p, const double* h_prev, const double* c_prev, double z,
                 double* gi, double* gf, double* gg, double* go, double* c, double* tc,
                 double* h) {
    const int n = p.hidden();
    for (int j = 0; j < n; ++j)
        gi[j] = sigmoid(p.w(kGateInput)[j] * z + p.b_in(kGateInput)[j] +
                        p.b_rec(kGateInput)[j] + dot(p.r(kGateInput) + j * n, h_prev, n));
    for (int j = 0; j < n; ++j)
        gf[j] = sigmoid(p.w(kGateForget)[j] * z + p.b_in(kGateForget)[j] +
                        p.b_rec(kGateForget)[j] + dot(p.r(kGateForget) + j * n, h_prev, n));
    for (int j = 0; j < n; ++j)
        gg[j] = std::tanh(p.w(kGateCell)[j] * z + p.b_in(kGateCell)[j] +
                          p.b_rec(kGateCell)[j] + dot(p.r(kGateCell) + j * n, h_prev, n));
    for (int j = 0; j < n; ++j)
        go[j] = sigmoid(p.w(kGateOutput)[j] * z + p.b_in(kGateOutput)[j] +
                        p.b_rec(kGateOutput)[j] + dot(p.r(kGateOutput) + j * n, h_prev, n));
    for (int j = 0; j < n; ++j) {
        c[j] = gf[j] * c_prev[j] + gi[j] * gg[j];
        tc[j] = std::tanh(c[j]);
        h[j] = go[j] * tc[j];
    }
    return dot(p.w_z(), h, n) + p.b_z();
}

// Parameter gradients for one gate at one time step, plus this gate's
// contribution to dh_{t-1} (R^T da).
inline void accumulate_gate(const LstmParams& p, LstmParams& g, int gate, const double* da,
                            double z, const double* h_prev, double* dh_prev) {
    const int n = p.hidden();
    double* dw = g.w(gate);
    double* dbi = g.b_in(gate);
    double* dbr = g.b_rec(gate);
    double* dr = g.r(gate);
    const double* r = p.r(gate);
    for (int j = 0; j < n; ++j) {
        const double a = da[j];
        if (a == 0.0) continue;
        dw[j] += a * z;
        dbi[j] += a;
        dbr[j] += a;
        axpy(a, h_prev, dr + j * n, n);
        axpy(a, r + j * n, dh_prev, n);
    }
}

void orthogonal_fill(double* r, int n, Rng& rng) {
    std::vector<double> a(static_cast<std::size_t>(n) * n);
    for (auto& v : a) v = rng.next_gaussian();
    // modified Gram-Schmidt over columns; the QR of a Gaussian matrix with
    // positive diagonal R, so the result is unique given the draws
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < j; ++i) {
            double proj = 0.0;
            for (int k = 0; k < n; ++k) proj += a[k * n + i] * a[k * n + j];
            for (int k = 0; k < n; ++k) a[k * n + j] -= proj * a[k * n + i];
        }
        double norm = 0.0;
        for (int k = 0; k < n; ++k) norm += a[k * n + j] * a[k * n + j];
        norm = std::sqrt(norm);
        if (norm < 1e-12) {
            for (int k = 0; k < n; ++k) a[k * n + j] = (k == j) ? 1.0 : 0.0;
        } else {
            for (int k = 0; k < n; ++k) a[k * n + j] /= norm;
        }
    }
    std::copy(a.begin(), a.end(), r);
}

}  // namespace

Standardizer Standardizer::fit(const std::vector<double>& sequence) {
    if (sequence.size() < 2) throw SequenceTooShort("standardizer needs at least 2 values");
    double sum = 0.0;
    for (double v : sequence) sum += v;
    const double mean = sum / static_cast<double>(sequence.size());
    double ss = 0.0;
    for (double v : sequence) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(sequence.size() - 1));
    if (sd == 0.0) throw DegenerateSequence("cannot standardize a constant sequence");
    return {mean, sd};
}

StepResult step(const LstmParams& params, const LstmState& state, double input) {
    const int n = params.hidden();
    StepResult res{LstmState(n), 0.0};
    std::vector<double> gi(n), gf(n), gg(n), go(n), tc(n);
    res.output = step_core(params, state.h.data(), state.c.data(), input, gi.data(),
                           gf.data(), gg.data(), go.data(), res.state.c.data(), tc.data(),
                           res.state.h.data());
    return res;
}

double forward(const LstmParams& params, const std::vector<double>& sequence,
               ForwardCache* cache) {
    if (sequence.size() < 2)
        throw SequenceTooShort("forward needs a sequence of at least 2 values");
    const int n = params.hidden();
    const int steps = static_cast<int>(sequence.size()) - 1;

    ForwardCache local;
    ForwardCache& c = cache ? *cache : local;
    c.hidden = n;
    c.steps = steps;
    c.inputs.resize(steps);
    c.targets.resize(steps);
    c.outputs.resize(steps);
    const std::size_t nm = static_cast<std::size_t>(steps) * n;
    c.gate_i.resize(nm);
    c.gate_f.resize(nm);
    c.gate_g.resize(nm);
    c.gate_o.resize(nm);
    c.cell.resize(nm);
    c.tanh_cell.resize(nm);
    c.hidden_state.resize(nm);

    const std::vector<double> zero(n, 0.0);
    double loss = 0.0;
    for (int t = 0; t < steps; ++t) {
        const double* hp = t ? &c.hidden_state[(t - 1) * static_cast<std::size_t>(n)] : zero.data();
        const double* cp = t ? &c.cell[(t - 1) * static_cast<std::size_t>(n)] : zero.data();
        const std::size_t row = static_cast<std::size_t>(t) * n;
        c.inputs[t] = sequence[t];
        c.targets[t] = sequence[t + 1];
        c.outputs[t] =
            step_core(params, hp, cp, c.inputs[t], &c.gate_i[row], &c.gate_f[row],
                      &c.gate_g[row], &c.gate_o[row], &c.cell[row], &c.tanh_cell[row],
                      &c.hidden_state[row]);
        const double e = c.outputs[t] - c.targets[t];
        loss += e * e;
    }
    loss = 0.5 * loss / static_cast<double>(steps);
    c.loss = loss;
    return loss;
}

LstmParams backward(const LstmParams& params, const ForwardCache& cache) {
    const int n = cache.hidden;
    const int steps = cache.steps;
    LstmParams g(n);

    std::vector<double> dh_next(n, 0.0), dc_next(n, 0.0);
    std::vector<double> dh(n), dc(n), da(n);
    const std::vector<double> zero(n, 0.0);

    for (int t = steps - 1; t >= 0; --t) {
        const std::size_t row = static_cast<std::size_t>(t) * n;
        const double* gi = &cache.gate_i[row];
        const double* gf = &cache.gate_f[row];
        const double* gg = &cache.gate_g[row];
        const double* go = &cache.gate_o[row];
        const double* tc = &cache.tanh_cell[row];
        const double* ht = &cache.hidden_state[row];
        const double* hp = t ? &cache.hidden_state[row - n] : zero.data();
        const double* cp = t ? &cache.cell[row - n] : zero.data();
        const double z = cache.inputs[t];

        const double dout = (cache.outputs[t] - cache.targets[t]) / static_cast<double>(steps);
        axpy(dout, ht, g.w_z(), n);
        g.b_z() += dout;

        for (int j = 0; j < n; ++j) dh[j] = params.w_z()[j] * dout + dh_next[j];
        for (int j = 0; j < n; ++j)
            dc[j] = dh[j] * go[j] * (1.0 - tc[j] * tc[j]) + dc_next[j];

        std::fill(dh_next.begin(), dh_next.end(), 0.0);

        for (int j = 0; j < n; ++j) da[j] = dc[j] * gg[j] * gi[j] * (1.0 - gi[j]);
        accumulate_gate(params, g, kGateInput, da.data(), z, hp, dh_next.data());

        for (int j = 0; j < n; ++j) da[j] = dc[j] * cp[j] * gf[j] * (1.0 - gf[j]);
        accumulate_gate(params, g, kGateForget, da.data(), z, hp, dh_next.data());

        for (int j = 0; j < n; ++j) da[j] = dc[j] * gi[j] * (1.0 - gg[j] * gg[j]);
        accumulate_gate(params, g, kGateCell, da.data(), z, hp, dh_next.data());

        for (int j = 0; j < n; ++j) da[j] = dh[j] * tc[j] * go[j] * (1.0 - go[j]);
        accumulate_gate(params, g, kGateOutput, da.data(), z, hp, dh_next.data());

        for (int j = 0; j < n; ++j) dc_next[j] = dc[j] * gf[j];
    }
    return g;
}

void clip_gradients(LstmParams& grads, double threshold) {
    if (!(threshold > 0.0)) throw InvalidParams("clip threshold must be > 0");
    double norm2 = 0.0;
    const double* d = grads.data();
    for (std::size_t k = 0; k < grads.size(); ++k) norm2 += d[k] * d[k];
    const double norm = std::sqrt(norm2);
    if (norm > threshold) {
        const double scale = threshold / norm;
        double* out = grads.data();
        for (std::size_t k = 0; k < grads.size(); ++k) out[k] *= scale;
    }
}

void adam_step(LstmParams& params, const LstmParams& grads, AdamMoments& moments,
               int step_index, double lr, const TrainConfig& config) {
    if (step_index < 1) throw InvalidParams("adam step index counts from 1");
    const double b1 = config.adam_beta1;
    const double b2 = config.adam_beta2;
    const double bc1 = 1.0 - std::pow(b1, step_index);
    const double bc2 = 1.0 - std::pow(b2, step_index);
    double* p = params.data();
    const double* g = grads.data();
    for (std::size_t k = 0; k < params.size(); ++k) {
        moments.m[k] = b1 * moments.m[k] + (1.0 - b1) * g[k];
        moments.v[k] = b2 * moments.v[k] + (1.0 - b2) * g[k] * g[k];
        const double mhat = moments.m[k] / bc1;
        const double vhat = moments.v[k] / bc2;
        p[k] -= lr * mhat / (std::sqrt(vhat) + config.adam_epsilon);
    }
}

void init_params(LstmParams& params, uint64_t seed) {
    const int n = params.hidden();
    std::fill(params.data(), params.data() + params.size(), 0.0);
    Rng rng(seed);
    const double limit = std::sqrt(6.0 / (1.0 + n));
    for (int gate = 0; gate < 4; ++gate)
        for (int j = 0; j < n; ++j) params.w(gate)[j] = rng.next_uniform(-limit, limit);
    for (int gate = 0; gate < 4; ++gate) orthogonal_fill(params.r(gate), n, rng);
    for (int j = 0; j < n; ++j) params.b_in(kGateForget)[j] = 1.0;
    for (int j = 0; j < n; ++j) params.w_z()[j] = rng.next_uniform(-limit, limit);
}

TrainResult train(const std::vector<double>& sequence, const TrainConfig& config) {
    if (sequence.size() < 24)
        throw SequenceTooShort("training needs at least 24 values, got " +
                               std::to_string(sequence.size()));
    const Standardizer st = Standardizer::fit(sequence);
    std::vector<double> z(sequence.size());
    for (std::size_t t = 0; t < sequence.size(); ++t) z[t] = st.standardize(sequence[t]);

    LstmParams params(config.hidden_size);
    init_params(params, config.seed);
    AdamMoments moments(params.size());
    ForwardCache cache;

    std::vector<double> losses;
    losses.reserve(config.epochs);
    for (int epoch = 1; epoch <= config.epochs; ++epoch) {
        losses.push_back(forward(params, z, &cache));
        LstmParams grads = backward(params, cache);
        clip_gradients(grads, config.grad_clip);
        const double lr = epoch < config.lr_drop_epoch
                              ? config.initial_lr
                              : config.initial_lr * config.lr_drop_factor;
        adam_step(params, grads, moments, epoch, lr, config);
    }
    return {std::move(params), st, std::move(losses)};
}

std::vector<double> forecast(const LstmParams& params, const Standardizer& standardizer,
                             const std::vector<double>& history, int steps) {
    if (steps < 1) throw InvalidParams("forecast needs steps >= 1");
    if (history.empty()) throw SequenceTooShort("forecast needs a non-empty history");
    const int n = params.hidden();
    std::vector<double> h(n, 0.0), c(n, 0.0), hn(n), cn(n);
    std::vector<double> gi(n), gf(n), gg(n), go(n), tc(n);

    double out = 0.0;
    for (double v : history) {
        out = step_core(params, h.data(), c.data(), standardizer.standardize(v), gi.data(),
                        gf.data(), gg.data(), go.data(), cn.data(), tc.data(), hn.data());
        h.swap(hn);
        c.swap(cn);
    }

    std::vector<double> result;
    result.reserve(steps);
    result.push_back(standardizer.destandardize(out));
    for (int k = 1; k < steps; ++k) {
        out = step_core(params, h.data(), c.data(), out, gi.data(), gf.data(), gg.data(),
                        go.data(), cn.data(), tc.data(), hn.data());
        h.swap(hn);
        c.swap(cn);
        result.push_back(standardizer.destandardize(out));
    }
    return result;
}

void save_lstm(const std::string& path, const LstmParams& params,
               const Standardizer& standardizer) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write file: " + path);
    out << "mtlf-lstm-v1\n";
    out << "hidden " << params.hidden() << '\n';
    out << "standardizer " << format_double(standardizer.mean) << ' '
        << format_double(standardizer.std) << '\n';
    out << "params " << params.size() << '\n';
    for (std::size_t k = 0; k < params.size(); ++k)
        out << format_double(params.data()[k]) << '\n';
    if (!out) throw IoError("write failed: " + path);
}

std::pair<LstmParams, Standardizer> load_lstm(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open file: " + path);
    std::string token;
    in >> token;
    if (token != "mtlf-lstm-v1") throw IoError("not an lstm artifact: " + path);
    int hidden = 0;
    in >> token >> hidden;
    if (token != "hidden" || hidden < 1) throw IoError("bad hidden size in " + path);
    Standardizer st;
    std::string mean_s, std_s;
    in >> token >> mean_s >> std_s;
    if (token != "standardizer") throw IoError("bad standardizer line in " + path);
    st.mean = parse_double(mean_s);
    st.std = parse_double(std_s);
    std::size_t count = 0;
    in >> token >> count;
    LstmParams params(hidden);
    if (token != "params" || count != params.size())
        throw IoError("bad parameter count in " + path);
    for (std::size_t k = 0; k < count; ++k) {
        if (!(in >> token)) throw IoError("truncated artifact: " + path);
        params.data()[k] = parse_double(token);
    }
    return {std::move(params), st};
}

}  // namespace mtlf
