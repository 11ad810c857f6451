#pragma once

#include <vector>

#include "mtlf/types.hpp"

namespace mtlf {

/// The pair of statistics used to encode and decode a yearly subsequence:
/// the year's mean demand and its dispersion
///   sigma_i = sqrt( sum_j (E_ij - mean_i)^2 )
/// Note the dispersion is the root of the raw sum of squared deviations,
/// with no 1/n factor; this is what gives x-patterns unit length.
struct CodingVariables {
    double mean = 0.0;
    double dispersion = 0.0;  // strictly positive for non-degenerate years
};

/// A yearly subsequence normalized by its own coding variables:
///   x_ij = (E_ij - mean_i) / sigma_i
/// Zero-sum and unit Euclidean norm; carries only the year's shape.
struct XPattern {
    std::array<double, 12> values{};
};

/// A yearly subsequence normalized by the *previous* year's coding variables:
///   y_ij = (E_ij - mean_{i-1}) / sigma_{i-1}
/// Decodable without forecasting coding variables, but with no zero-mean or
/// unit-norm guarantee.
struct YPattern {
    std::array<double, 12> values{};
};

enum class PatternKind { x, y };

/// Pattern representation of a whole series: one pattern per represented
/// year plus the coding-variable series aligned to the source years.
/// For kind x there is one pattern per year; for kind y the first year is
/// consumed only as the predecessor, so there is one pattern fewer.
struct PatternSeries {
    PatternKind kind = PatternKind::x;
    std::vector<std::array<double, 12>> patterns;
    std::vector<CodingVariables> coding;  // one entry per source year

    /// Patterns concatenated in year order, the sequence the LSTM trains on.
    std::vector<double> stream() const;

    std::vector<double> mean_series() const;
    std::vector<double> dispersion_series() const;
};

/// Throws DegenerateYear if the year is constant (zero dispersion).
CodingVariables coding_variables(const YearlySubsequence& sub);

std::pair<XPattern, CodingVariables> encode_x(const YearlySubsequence& sub);

YPattern encode_y(const YearlySubsequence& sub, const CodingVariables& prev);

/// Inverse of encode_x given (forecast) coding variables:
///   E_ij = x_ij * sigma_i + mean_i
YearlySubsequence decode_x(const XPattern& pattern, const CodingVariables& coding);

/// Inverse of encode_y with the known previous-year coding variables.
YearlySubsequence decode_y(const YPattern& pattern, const CodingVariables& prev);

PatternSeries build_series(const MonthlySeries& series, PatternKind kind);

}  // namespace mtlf
