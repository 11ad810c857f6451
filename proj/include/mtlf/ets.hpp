#pragma once

#include <string>
#include <vector>

#include "mtlf/types.hpp"

namespace mtlf::ets {

/// Additive-error, non-seasonal exponential smoothing family. The coding
/// variable series are short annual series, so only simple smoothing, Holt's
/// linear trend and its damped variant are fitted.
enum class Kind { ses, holt, damped_holt };

const char* kind_name(Kind kind);

struct EtsModel {
    Kind kind = Kind::ses;
    double alpha = 0.5;  // level smoothing, in (0, 1)
    double beta = 0.0;   // trend smoothing, in (0, alpha]; unused for SES
    double phi = 1.0;    // damping, in (0.8, 0.98]; damped trend only
    double level = 0.0;  // final level state
    double trend = 0.0;  // final trend state; unused for SES
    double sigma2 = 0.0; // one-step residual variance
    double aicc = 0.0;   // selection score; +inf when n - k - 1 <= 0
    int n = 0;           // fitted length
};

/// Fits one model kind by minimizing the one-step-ahead SSE (the Gaussian
/// likelihood criterion n*log(SSE/n)) over a dense parameter grid at step
/// 0.05 refined by Nelder-Mead. States are initialized at the first
/// observation: level = y[0], trend = mean of the leading first differences.
/// Throws SeriesTooShort for fewer than 4 points.
EtsModel fit(const std::vector<double>& series, Kind kind);

/// Fits every kind admissible under n - k - 1 > 0 (k counts smoothing
/// parameters plus initial states: SES 2, Holt 4, damped 5) and returns the
/// lowest AICc, where
///   AICc = n*log(SSE/n) + 2k(k+1)/(n-k-1) + 2k
EtsModel auto_fit(const std::vector<double>& series);

/// auto_fit with the short-series policy needed when a hold-out year leaves
/// very few coding points: n >= 4 selects by AICc, 2..3 points fit SES only,
/// and a single point degenerates to the naive last-value forecast.
EtsModel fit_with_fallback(const std::vector<double>& series);

/// One-step-ahead forecast: level, level + trend, or level + phi*trend.
double forecast_one(const EtsModel& model);

}  // namespace mtlf::ets
