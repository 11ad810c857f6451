#include "mtlf/patterns.hpp"

#include <cmath>

namespace mtlf {

std::vector<double> PatternSeries::stream() const {
    std::vector<double> out;
    out.reserve(patterns.size() * 12);
    for (const auto& p : patterns)
        out.insert(out.end(), p.begin(), p.end());
    return out;
}

std::vector<double> PatternSeries::mean_series() const {
    std::vector<double> out;
    out.reserve(coding.size());
    for (const auto& c : coding) out.push_back(c.mean);
    return out;
}

std::vector<double> PatternSeries::dispersion_series() const {
    std::vector<double> out;
    out.reserve(coding.size());
    for (const auto& c : coding) out.push_back(c.dispersion);
    return out;
}

CodingVariables coding_variables(const YearlySubsequence& sub) {
    double sum = 0.0;
    for (double v : sub.values) sum += v;
    const double mean = sum / 12.0;
    double ss = 0.0;
    for (double v : sub.values) ss += (v - mean) * (v - mean);
    const double dispersion = std::sqrt(ss);
    if (dispersion == 0.0) throw DegenerateYear(sub.year_index);
    return {mean, dispersion};
}

std::pair<XPattern, CodingVariables> encode_x(const YearlySubsequence& sub) {
    const CodingVariables cv = coding_variables(sub);
    XPattern p;
    for (int j = 0; j < 12; ++j)
        p.values[j] = (sub.values[j] - cv.mean) / cv.dispersion;
    return {p, cv};
}

YPattern encode_y(const YearlySubsequence& sub, const CodingVariables& prev) {
    if (prev.dispersion <= 0.0) throw DegenerateYear(sub.year_index - 1);
    YPattern p;
    for (int j = 0; j < 12; ++j)
        p.values[j] = (sub.values[j] - prev.mean) / prev.dispersion;
    return p;
}

YearlySubsequence decode_x(const XPattern& pattern, const CodingVariables& coding) {
    YearlySubsequence sub;
    for (int j = 0; j < 12; ++j)
        sub.values[j] = pattern.values[j] * coding.dispersion + coding.mean;
    return sub;
}

YearlySubsequence decode_y(const YPattern& pattern, const CodingVariables& prev) {
    YearlySubsequence sub;
    for (int j = 0; j < 12; ++j)
        sub.values[j] = pattern.values[j] * prev.dispersion + prev.mean;
    return sub;
}

PatternSeries build_series(const MonthlySeries& series, PatternKind kind) {
    series.validate();
    PatternSeries out;
    out.kind = kind;
    const int years = series.year_count();
    out.coding.reserve(years);
    for (int i = 1; i <= years; ++i)
        out.coding.push_back(coding_variables(series.year(i)));

    if (kind == PatternKind::x) {
        out.patterns.reserve(years);
        for (int i = 1; i <= years; ++i) {
            const YearlySubsequence sub = series.year(i);
            XPattern p;
            for (int j = 0; j < 12; ++j)
                p.values[j] = (sub.values[j] - out.coding[i - 1].mean) /
                              out.coding[i - 1].dispersion;
            out.patterns.push_back(p.values);
        }
    } else {
        out.patterns.reserve(years - 1);
        for (int i = 2; i <= years; ++i) {
            const YPattern p = encode_y(series.year(i), out.coding[i - 2]);
            out.patterns.push_back(p.values);
        }
    }
    return out;
}

}  // namespace mtlf
