#include "mtlf/ets.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace mtlf::ets {

namespace {

constexpr double kAlphaMin = 1e-4;
constexpr double kAlphaMax = 1.0 - 1e-4;
constexpr double kPhiMin = 0.8 + 1e-4;
constexpr double kPhiMax = 0.98;
constexpr double kSseFloor = 1e-100;  // keeps log(SSE) finite on exact fits

int param_count(Kind kind) {
    switch (kind) {
        case Kind::ses: return 2;          // alpha, level0
        case Kind::holt: return 4;         // alpha, beta, level0, trend0
        case Kind::damped_holt: return 5;  // + phi
    }
    return 0;
}

// Mean of the leading first differences (up to four of them); 0 for a
// constant series.
double initial_trend(const std::vector<double>& y) {
    const int diffs = std::min<int>(4, static_cast<int>(y.size()) - 1);
    double sum = 0.0;
    for (int t = 0; t < diffs; ++t) sum += y[t + 1] - y[t];
    return diffs > 0 ? sum / diffs : 0.0;
}

struct FitState {
    double level = 0.0;
    double trend = 0.0;
};

// Runs the smoothing recursion with the state pinned at the first
// observation, producing one-step forecasts for t = 1..n-1. Returns the SSE
// and leaves the final states in `state`.
double run_recursion(const std::vector<double>& y, Kind kind, double alpha, double beta,
                     double phi, FitState& state) {
    double level = y[0];
    double trend = kind == Kind::ses ? 0.0 : initial_trend(y);
    double sse = 0.0;
    for (std::size_t t = 1; t < y.size(); ++t) {
        double damped_trend;
        switch (kind) {
            case Kind::ses: damped_trend = 0.0; break;
            case Kind::holt: damped_trend = trend; break;
            case Kind::damped_holt: damped_trend = phi * trend; break;
            default: damped_trend = 0.0;
        }
        const double fc = level + damped_trend;
        const double e = y[t] - fc;
        sse += e * e;
        const double new_level = alpha * y[t] + (1.0 - alpha) * fc;
        if (kind != Kind::ses)
            trend = beta * (new_level - level) + (1.0 - beta) * damped_trend;
        level = new_level;
    }
    state.level = level;
    state.trend = trend;
    return sse;
}

struct Point {
    double alpha, beta, phi;
};

Point clamp_point(Kind kind, Point p) {
    p.alpha = std::clamp(p.alpha, kAlphaMin, kAlphaMax);
    p.beta = std::clamp(p.beta, kAlphaMin, p.alpha);
    p.phi = std::clamp(p.phi, kPhiMin, kPhiMax);
    return p;
}

double objective(const std::vector<double>& y, Kind kind, Point p) {
    p = clamp_point(kind, p);
    FitState state;
    return run_recursion(y, kind, p.alpha, p.beta, p.phi, state);
}

int free_dims(Kind kind) {
    switch (kind) {
        case Kind::ses: return 1;
        case Kind::holt: return 2;
        case Kind::damped_holt: return 3;
    }
    return 0;
}

// Standard Nelder-Mead over 1-3 dimensions; bound handling by clamping
// inside the objective. Deterministic.
Point nelder_mead(const std::function<double(Point)>& f, Point start, Kind kind) {
    const int dim = free_dims(kind);
    auto to_vec = [dim](const Point& p) {
        std::vector<double> v{p.alpha};
        if (dim > 1) v.push_back(p.beta);
        if (dim > 2) v.push_back(p.phi);
        return v;
    };
    auto to_point = [dim, &start](const std::vector<double>& v) {
        Point p = start;
        p.alpha = v[0];
        if (dim > 1) p.beta = v[1];
        if (dim > 2) p.phi = v[2];
        return p;
    };

    std::vector<std::vector<double>> simplex;
    simplex.push_back(to_vec(start));
    for (int d = 0; d < dim; ++d) {
        auto v = to_vec(start);
        v[d] += 0.025;
        simplex.push_back(v);
    }
    std::vector<double> fv(simplex.size());
    for (std::size_t i = 0; i < simplex.size(); ++i) fv[i] = f(to_point(simplex[i]));

    const int max_iter = 200;
    for (int iter = 0; iter < max_iter; ++iter) {
        // order the simplex best..worst
        std::vector<std::size_t> idx(simplex.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::stable_sort(idx.begin(), idx.end(),
                         [&fv](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        std::vector<std::vector<double>> s2;
        std::vector<double> f2;
        for (std::size_t i : idx) {
            s2.push_back(simplex[i]);
            f2.push_back(fv[i]);
        }
        simplex = std::move(s2);
        fv = std::move(f2);

        if (std::abs(fv.back() - fv.front()) < 1e-12 * (1.0 + std::abs(fv.front()))) break;

        std::vector<double> centroid(dim, 0.0);
        for (std::size_t i = 0; i + 1 < simplex.size(); ++i)
            for (int d = 0; d < dim; ++d) centroid[d] += simplex[i][d];
        for (int d = 0; d < dim; ++d) centroid[d] /= dim;

        auto blend = [&](double coef) {
            std::vector<double> v(dim);
            for (int d = 0; d < dim; ++d)
                v[d] = centroid[d] + coef * (simplex.back()[d] - centroid[d]);
            return v;
        };

        auto reflected = blend(-1.0);
        const double fr = f(to_point(reflected));
        if (fr < fv.front()) {
            auto expanded = blend(-2.0);
            const double fe = f(to_point(expanded));
            if (fe < fr) {
                simplex.back() = expanded;
                fv.back() = fe;
            } else {
                simplex.back() = reflected;
                fv.back() = fr;
            }
        } else if (fr < fv[fv.size() - 2]) {
            simplex.back() = reflected;
            fv.back() = fr;
        } else {
            auto contracted = blend(0.5);
            const double fc = f(to_point(contracted));
            if (fc < fv.back()) {
                simplex.back() = contracted;
                fv.back() = fc;
            } else {
                for (std::size_t i = 1; i < simplex.size(); ++i) {
                    for (int d = 0; d < dim; ++d)
                        simplex[i][d] =
                            simplex[0][d] + 0.5 * (simplex[i][d] - simplex[0][d]);
                    fv[i] = f(to_point(simplex[i]));
                }
            }
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < simplex.size(); ++i)
        if (fv[i] < fv[best]) best = i;
    return to_point(simplex[best]);
}

double compute_aicc(double sse, int n, int k) {
    if (n - k - 1 <= 0) return std::numeric_limits<double>::infinity();
    const double mse = std::max(sse, kSseFloor) / n;
    return n * std::log(mse) + 2.0 * k * (k + 1.0) / (n - k - 1.0) + 2.0 * k;
}

EtsModel fit_unchecked(const std::vector<double>& y, Kind kind) {
    // dense grid at step 0.05, then Nelder-Mead from the best grid point
    Point best{0.5, 0.1, 0.98};
    double best_sse = std::numeric_limits<double>::infinity();
    std::vector<double> phis{0.98};
    if (kind == Kind::damped_holt) phis = {0.85, 0.90, 0.95, 0.98};
    for (double phi : phis) {
        for (double alpha = 0.05; alpha < 0.951; alpha += 0.05) {
            if (kind == Kind::ses) {
                const double sse = objective(y, kind, {alpha, 0.0, phi});
                if (sse < best_sse) {
                    best_sse = sse;
                    best = {alpha, 0.0, phi};
                }
                continue;
            }
            for (double beta = 0.05; beta < alpha + 1e-9; beta += 0.05) {
                const double sse = objective(y, kind, {alpha, beta, phi});
                if (sse < best_sse) {
                    best_sse = sse;
                    best = {alpha, beta, phi};
                }
            }
        }
    }

    Point refined = nelder_mead([&](Point p) { return objective(y, kind, p); }, best, kind);
    refined = clamp_point(kind, refined);
    if (objective(y, kind, refined) > best_sse) refined = clamp_point(kind, best);

    EtsModel model;
    model.kind = kind;
    model.alpha = refined.alpha;
    model.beta = kind == Kind::ses ? 0.0 : refined.beta;
    model.phi = kind == Kind::damped_holt ? refined.phi : 1.0;
    model.n = static_cast<int>(y.size());

    FitState state;
    const double sse = run_recursion(y, kind, model.alpha, model.beta, model.phi, state);
    model.level = state.level;
    model.trend = kind == Kind::ses ? 0.0 : state.trend;
    model.sigma2 = y.size() > 1 ? sse / static_cast<double>(y.size() - 1) : 0.0;
    model.aicc = compute_aicc(sse, model.n, param_count(kind));
    return model;
}

}  // namespace

const char* kind_name(Kind kind) {
    switch (kind) {
        case Kind::ses: return "ses";
        case Kind::holt: return "holt";
        case Kind::damped_holt: return "damped_holt";
    }
    return "unknown";
}

EtsModel fit(const std::vector<double>& series, Kind kind) {
    if (series.size() < 4)
        throw SeriesTooShort("ets fit needs at least 4 points, got " +
                             std::to_string(series.size()));
    for (double v : series)
        if (!std::isfinite(v)) throw InvalidParams("ets fit: non-finite value");
    return fit_unchecked(series, kind);
}

EtsModel auto_fit(const std::vector<double>& series) {
    if (series.size() < 4)
        throw SeriesTooShort("ets auto_fit needs at least 4 points, got " +
                             std::to_string(series.size()));
    const int n = static_cast<int>(series.size());
    EtsModel best;
    bool have = false;
    for (Kind kind : {Kind::ses, Kind::holt, Kind::damped_holt}) {
        if (n - param_count(kind) - 1 <= 0) continue;
        EtsModel m = fit(series, kind);
        if (!have || m.aicc < best.aicc) {
            best = m;
            have = true;
        }
    }
    if (!have) throw SeriesTooShort("no admissible ets model for n = " + std::to_string(n));
    return best;
}

EtsModel fit_with_fallback(const std::vector<double>& series) {
    if (series.empty()) throw SeriesTooShort("ets: empty coding series");
    if (series.size() >= 4) return auto_fit(series);
    if (series.size() == 1) {
        EtsModel naive;
        naive.kind = Kind::ses;
        naive.alpha = 1.0;
        naive.level = series[0];
        naive.n = 1;
        naive.aicc = std::numeric_limits<double>::infinity();
        return naive;
    }
    EtsModel m = fit_unchecked(series, Kind::ses);
    m.aicc = std::numeric_limits<double>::infinity();
    return m;
}

double forecast_one(const EtsModel& model) {
    switch (model.kind) {
        case Kind::ses: return model.level;
        case Kind::holt: return model.level + model.trend;
        case Kind::damped_holt: return model.level + model.phi * model.trend;
    }
    return model.level;
}

}  // namespace mtlf::ets
