#include "mtlf/types.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace mtlf {

namespace {

std::string row_msg(const char* what, const std::string& id, int year, int month) {
    std::ostringstream os;
    os << what << ": series " << id << ", year " << year << ", month " << month;
    return os.str();
}

}  // namespace

MissingMonth::MissingMonth(const std::string& id, int y, int m)
    : Error(row_msg("missing month", id, y, m)), series_id(id), year(y), month(m) {}

DuplicateRow::DuplicateRow(const std::string& id, int y, int m)
    : Error(row_msg("duplicate row", id, y, m)) {}

NonPositiveValue::NonPositiveValue(const std::string& id, int y, int m, double v)
    : Error(row_msg("non-positive or non-finite value", id, y, m) +
            " (value " + std::to_string(v) + ")") {}

PartialYear::PartialYear(const std::string& id, int y)
    : Error("partial year: series " + id + " does not cover all of year " +
            std::to_string(y)) {}

DegenerateYear::DegenerateYear(int index)
    : Error("degenerate (constant) year at index " + std::to_string(index)),
      year_index(index) {}

UnknownSeries::UnknownSeries(const std::string& id)
    : Error("unknown series id: " + id) {}

YearlySubsequence MonthlySeries::year(int index) const {
    YearlySubsequence sub;
    sub.year_index = index;
    const std::size_t base = static_cast<std::size_t>(index - 1) * 12;
    for (int j = 0; j < 12; ++j) sub.values[j] = values[base + j];
    return sub;
}

MonthlySeries MonthlySeries::first_years(int n) const {
    MonthlySeries out;
    out.series_id = series_id;
    out.start_year = start_year;
    out.values.assign(values.begin(), values.begin() + static_cast<std::size_t>(n) * 12);
    return out;
}

void MonthlySeries::validate() const {
    if (values.empty() || values.size() % 12 != 0)
        throw PartialYear(series_id, start_year + static_cast<int>(values.size() / 12));
    for (std::size_t t = 0; t < values.size(); ++t) {
        if (!std::isfinite(values[t]) || values[t] <= 0.0)
            throw NonPositiveValue(series_id, start_year + static_cast<int>(t / 12),
                                   static_cast<int>(t % 12) + 1, values[t]);
    }
}

void DatasetManifest::validate() const {
    std::set<std::string> seen;
    for (const auto& e : entries) {
        if (!seen.insert(e.series_id).second)
            throw DuplicateRow(e.series_id, 0, 0);
    }
}

}  // namespace mtlf
