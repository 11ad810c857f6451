#include "mtlf/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace mtlf {

double quantile(std::vector<double> values, double p) {
    if (values.empty()) throw EmptyInput("quantile of an empty sample");
    std::sort(values.begin(), values.end());
    const double pos = p * static_cast<double>(values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= values.size()) return values.back();
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[lo + 1] - values[lo]);
}

std::array<double, 12> percentage_errors(const std::array<double, 12>& actual,
                                         const std::array<double, 12>& forecast) {
    std::array<double, 12> pe{};
    for (int j = 0; j < 12; ++j) {
        if (!(actual[j] > 0.0)) throw ZeroActual("actual demand must be > 0");
        pe[j] = 100.0 * (forecast[j] - actual[j]) / actual[j];
    }
    return pe;
}

double mape(const std::array<double, 12>& actual, const std::array<double, 12>& forecast) {
    const auto pe = percentage_errors(actual, forecast);
    double sum = 0.0;
    for (double v : pe) sum += std::abs(v);
    return sum / 12.0;
}

ErrorSummary error_summary(const std::vector<double>& actual,
                           const std::vector<double>& forecast) {
    if (actual.empty()) throw EmptyInput("error_summary of an empty sample");
    if (actual.size() != forecast.size())
        throw EmptyInput("error_summary needs equally long actual and forecast vectors");

    std::vector<double> apes;
    apes.reserve(actual.size());
    double se = 0.0;
    for (std::size_t t = 0; t < actual.size(); ++t) {
        if (!(actual[t] > 0.0)) throw ZeroActual("actual demand must be > 0");
        apes.push_back(100.0 * std::abs(forecast[t] - actual[t]) / actual[t]);
        se += (forecast[t] - actual[t]) * (forecast[t] - actual[t]);
    }

    ErrorSummary s;
    double sum = 0.0;
    for (double a : apes) sum += a;
    s.mape = sum / static_cast<double>(apes.size());
    s.median_ape = quantile(apes, 0.5);
    s.iqr_ape = quantile(apes, 0.75) - quantile(apes, 0.25);
    s.rmse = std::sqrt(se / static_cast<double>(actual.size()));
    return s;
}

double dispersion(const std::vector<double>& run_forecasts) {
    if (run_forecasts.size() < 2) throw TooFewRuns("dispersion needs at least 2 runs");
    double sum = 0.0;
    for (double v : run_forecasts) sum += v;
    const double mean = sum / static_cast<double>(run_forecasts.size());
    double ss = 0.0;
    for (double v : run_forecasts) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(run_forecasts.size() - 1));
    const double med = quantile(run_forecasts, 0.5);
    if (med == 0.0) throw ZeroMedian("dispersion undefined for zero median");
    return 100.0 * sd / med;
}

PeStats pe_stats(const std::vector<double>& pes) {
    if (pes.size() < 4) throw TooFewSamples("pe_stats needs at least 4 samples");
    const double n = static_cast<double>(pes.size());
    double sum = 0.0;
    for (double v : pes) sum += v;
    const double mean = sum / n;

    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : pes) {
        const double d = v - mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;

    PeStats s;
    s.mean = mean;
    s.median = quantile(pes, 0.5);
    s.std = std::sqrt(m2 * n / (n - 1.0));
    // degenerate (constant) samples have undefined shape statistics
    s.skewness = m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;
    s.kurtosis = m2 > 0.0 ? m4 / (m2 * m2) : 0.0;
    return s;
}

RankingHistogram rank_models(
    const std::vector<std::map<std::string, std::vector<double>>>& per_series_run_mapes) {
    if (per_series_run_mapes.empty()) throw EmptyInput("rank_models needs at least one series");

    RankingHistogram hist;
    for (const auto& [name, mapes] : per_series_run_mapes.front()) {
        (void)mapes;
        hist.variants.push_back(name);
    }
    std::sort(hist.variants.begin(), hist.variants.end());
    if (hist.variants.empty()) throw EmptyInput("rank_models needs at least one variant");

    const std::size_t runs = per_series_run_mapes.front().begin()->second.size();
    hist.positions = static_cast<int>(hist.variants.size() * runs);
    hist.series_count = static_cast<int>(per_series_run_mapes.size());
    hist.counts.assign(hist.variants.size(), std::vector<int>(hist.positions, 0));

    for (const auto& series : per_series_run_mapes) {
        if (series.size() != hist.variants.size())
            throw UnequalRunCounts("every series must rank the same variants");
        std::vector<std::pair<double, std::string>> pooled;
        for (const auto& [name, mapes] : series) {
            if (mapes.size() != runs)
                throw UnequalRunCounts("every variant must have the same run count");
            if (!std::binary_search(hist.variants.begin(), hist.variants.end(), name))
                throw UnequalRunCounts("variant sets differ between series");
            for (double m : mapes) pooled.emplace_back(m, name);
        }
        std::sort(pooled.begin(), pooled.end());
        for (std::size_t pos = 0; pos < pooled.size(); ++pos) {
            const auto it =
                std::lower_bound(hist.variants.begin(), hist.variants.end(), pooled[pos].second);
            hist.counts[it - hist.variants.begin()][pos] += 1;
        }
    }
    return hist;
}

std::vector<HistogramBin> histogram(const std::vector<double>& samples, double bin_width) {
    if (samples.empty()) throw EmptyInput("histogram of an empty sample");
    if (!(bin_width > 0.0)) throw InvalidParams("histogram bin width must be > 0");
    const double lo = std::floor(*std::min_element(samples.begin(), samples.end()));
    const double hi = std::ceil(*std::max_element(samples.begin(), samples.end()));
    const long bins = std::max(1L, static_cast<long>(std::ceil((hi - lo) / bin_width)));

    std::vector<HistogramBin> out(bins);
    for (long b = 0; b < bins; ++b) {
        out[b].left = lo + b * bin_width;
        out[b].right = lo + (b + 1) * bin_width;
    }
    for (double v : samples) {
        long b = static_cast<long>((v - lo) / bin_width);
        b = std::clamp(b, 0L, bins - 1);
        out[b].count += 1;
    }
    return out;
}

}  // namespace mtlf
