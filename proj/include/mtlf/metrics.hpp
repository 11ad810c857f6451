#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "mtlf/types.hpp"

namespace mtlf {

/// The accuracy measures reported per model: median and mean of the
/// absolute percentage errors, their interquartile range, and the RMSE in
/// MWh. Median/IQR are taken over all monthly APEs pooled.
struct ErrorSummary {
    double median_ape = 0.0;
    double mape = 0.0;
    double iqr_ape = 0.0;
    double rmse = 0.0;
};

/// Descriptive statistics of signed percentage errors. Skewness is
/// m3/m2^1.5 and kurtosis m4/m2^2 with 1/n central moments; kurtosis is
/// non-excess (a normal sample gives 3).
struct PeStats {
    double mean = 0.0;
    double median = 0.0;
    double std = 0.0;
    double skewness = 0.0;
    double kurtosis = 0.0;
};

/// Per-month forecast dispersion across runs, in percent.
struct DispersionCurve {
    std::array<double, 12> values{};
};

/// p-th quantile (p in [0,1]) with linear interpolation between order
/// statistics. Input need not be sorted.
double quantile(std::vector<double> values, double p);

/// Signed percentage errors, positive when the forecast overestimates:
///   PE_j = 100 * (forecast_j - actual_j) / actual_j
/// Throws ZeroActual unless every actual is strictly positive.
std::array<double, 12> percentage_errors(const std::array<double, 12>& actual,
                                         const std::array<double, 12>& forecast);

/// Mean absolute percentage error over one year.
double mape(const std::array<double, 12>& actual, const std::array<double, 12>& forecast);

/// Pools all months of the given actual/forecast values (equal length,
/// typically several years' worth).
ErrorSummary error_summary(const std::vector<double>& actual,
                           const std::vector<double>& forecast);

/// Dispersion of one month's forecasts across runs:
///   D = 100 * std(forecasts) / median(forecasts)
/// with the n-1 standard deviation. Throws TooFewRuns (< 2) or ZeroMedian.
double dispersion(const std::vector<double>& run_forecasts);

PeStats pe_stats(const std::vector<double>& pes);

/// Position histogram of the model ranking: for each series all
/// (variant, MAPE) entries are pooled and sorted ascending (ties broken by
/// variant name), and each variant's counts per position are aggregated
/// over series.
struct RankingHistogram {
    std::vector<std::string> variants;     // sorted names
    int positions = 0;                     // variants * runs
    int series_count = 0;
    std::vector<std::vector<int>> counts;  // [variant][position]

    double percent(std::size_t variant_index, int position) const {
        return 100.0 * counts[variant_index][position] / series_count;
    }
};

RankingHistogram rank_models(
    const std::vector<std::map<std::string, std::vector<double>>>& per_series_run_mapes);

/// Fixed-width histogram over [floor(min), ceil(max)); every sample lands in
/// exactly one bin.
struct HistogramBin {
    double left = 0.0;
    double right = 0.0;
    long count = 0;
};

std::vector<HistogramBin> histogram(const std::vector<double>& samples, double bin_width);

}  // namespace mtlf
