#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace mtlf {

/// Base class for all typed errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// data ingestion
class MissingMonth : public Error {
public:
    MissingMonth(const std::string& series_id, int year, int month);
    std::string series_id;
    int year, month;
};

class DuplicateRow : public Error {
public:
    DuplicateRow(const std::string& series_id, int year, int month);
};

class NonPositiveValue : public Error {
public:
    NonPositiveValue(const std::string& series_id, int year, int month, double value);
};

class PartialYear : public Error {
public:
    PartialYear(const std::string& series_id, int year);
};

class InvalidParams : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

// patterns
class DegenerateYear : public Error {
public:
    explicit DegenerateYear(int year_index);
    int year_index;
};

// lstm
class SequenceTooShort : public Error {
public:
    using Error::Error;
};

class DegenerateSequence : public Error {
public:
    using Error::Error;
};

// ets
class SeriesTooShort : public Error {
public:
    using Error::Error;
};

// metrics
class ZeroActual : public Error {
public:
    using Error::Error;
};
class EmptyInput : public Error {
public:
    using Error::Error;
};
class TooFewRuns : public Error {
public:
    using Error::Error;
};
class ZeroMedian : public Error {
public:
    using Error::Error;
};
class UnequalRunCounts : public Error {
public:
    using Error::Error;
};
class TooFewSamples : public Error {
public:
    using Error::Error;
};

// pipeline / cli
class MixedSeries : public Error {
public:
    using Error::Error;
};
class EmptyDataset : public Error {
public:
    using Error::Error;
};
class UnknownSeries : public Error {
public:
    explicit UnknownSeries(const std::string& series_id);
};
class KeyMismatch : public Error {
public:
    using Error::Error;
};

/// One calendar year of monthly demand (January through December).
struct YearlySubsequence {
    int year_index = 1;  // 1-based position within the source series
    std::array<double, 12> values{};
};

/// A monthly electricity demand series spanning whole calendar years.
/// values[0] is January of start_year; every value is in MWh.
struct MonthlySeries {
    std::string series_id;
    int start_year = 0;
    std::vector<double> values;

    int year_count() const { return static_cast<int>(values.size() / 12); }

    /// Yearly subsequence by 1-based index.
    YearlySubsequence year(int index) const;

    /// Copy of the first n years; the leakage-safe way to build training
    /// inputs that cannot see the hold-out year.
    MonthlySeries first_years(int n) const;

    /// Throws a typed error if the invariants do not hold: length a positive
    /// multiple of 12, all values finite and > 0.
    void validate() const;
};

struct ManifestEntry {
    std::string series_id;
    std::string path;
    int years = 0;
};

/// Index of dataset files; series identifiers must be unique.
struct DatasetManifest {
    std::vector<ManifestEntry> entries;

    void validate() const;  // throws DuplicateRow on repeated ids
};

}  // namespace mtlf
