#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mtlf/types.hpp"

namespace mtlf {

/// Formats a double with 17 significant digits so binary64 values survive a
/// write/read round trip bit-exactly. Locale-independent.
std::string format_double(double v);

/// Parses a decimal literal; throws IoError on malformed input.
double parse_double(const std::string& token);

/// Loads series from a long-format CSV with header `series_id,year,month,value`.
/// Rows may arrive in any order. Each series must cover contiguous whole
/// calendar years with strictly positive values; violations raise the typed
/// errors MissingMonth, DuplicateRow, NonPositiveValue or PartialYear.
/// Series are returned sorted by id.
std::vector<MonthlySeries> load_csv(const std::string& path);

/// Inverse of load_csv; values printed with 17 significant digits.
void write_series_csv(const std::vector<MonthlySeries>& dataset, const std::string& path);

/// Synthetic monthly demand: linear trend plus a cosine yearly cycle plus
/// Gaussian noise,
///   E_t = base + trend*(t/12) + amplitude*cos(2*pi*t/12 + phase(seed)) + N(0, noise_std)
/// with t counted from 0. Deterministic for a fixed seed.
/// Requires years >= 3 and base > amplitude + 5*noise_std; also rejects
/// parameter sets whose realized values are not strictly positive (a steep
/// negative trend can do that even when the base margin holds).
MonthlySeries generate_synthetic(uint64_t seed, int years, double trend, double base,
                                 double amplitude, double noise_std);

/// A batch of synthetic series with per-series base/trend/amplitude/noise
/// drawn deterministically from the master seed. This is the dataset behind
/// `mtlf generate` and the desk-scale evaluation suite.
std::vector<MonthlySeries> generate_suite(uint64_t seed, int count, int years);

/// One row of the forecast table. `run` is a run index rendered as text, or
/// "ens" for an ensemble row.
struct ForecastRow {
    std::string series_id;
    std::string run;
    int year = 0;
    int month = 0;
    double forecast_mwh = 0.0;
};

/// Writes rows sorted by (series_id, run, year, month); numeric run labels
/// sort numerically and "ens" sorts after them.
void write_forecasts(std::vector<ForecastRow> rows, const std::string& path);

std::vector<ForecastRow> read_forecasts(const std::string& path);

void write_manifest(const DatasetManifest& manifest, const std::string& path);
DatasetManifest read_manifest(const std::string& path);

}  // namespace mtlf
