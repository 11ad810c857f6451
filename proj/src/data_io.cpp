#include "mtlf/data_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <tuple>

#include "mtlf/rng.hpp"

namespace mtlf {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& token) {
    double value = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc{} || res.ptr != last)
        throw IoError("malformed number: '" + token + "'");
    return value;
}

namespace {

long parse_int(const std::string& token) {
    long value = 0;
    auto res = std::from_chars(token.data(), token.data() + token.size(), value);
    if (res.ec != std::errc{} || res.ptr != token.data() + token.size())
        throw IoError("malformed integer: '" + token + "'");
    return value;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open file: " + path);
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // binary: no newline translation
    if (!out) throw IoError("cannot write file: " + path);
    return out;
}

void expect_header(std::ifstream& in, const std::string& expected, const std::string& path) {
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty file: " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != expected)
        throw IoError("unexpected header in " + path + ": got '" + line +
                      "', expected '" + expected + "'");
}

}  // namespace

std::vector<MonthlySeries> load_csv(const std::string& path) {
    std::ifstream in = open_input(path);
    expect_header(in, "series_id,year,month,value", path);

    // (year, month) -> value per series
    std::map<std::string, std::map<std::pair<int, int>, double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 4) throw IoError("bad row in " + path + ": '" + line + "'");
        const std::string& id = fields[0];
        const int year = static_cast<int>(parse_int(fields[1]));
        const int month = static_cast<int>(parse_int(fields[2]));
        if (month < 1 || month > 12) throw IoError("month out of range in row: '" + line + "'");
        const double value = parse_double(fields[3]);
        if (!rows[id].emplace(std::make_pair(year, month), value).second)
            throw DuplicateRow(id, year, month);
    }

    std::vector<MonthlySeries> out;
    for (const auto& [id, cells] : rows) {
        const int first_year = cells.begin()->first.first;
        const int last_year = cells.rbegin()->first.first;
        if (cells.begin()->first.second != 1) throw PartialYear(id, first_year);
        if (cells.rbegin()->first.second != 12) throw PartialYear(id, last_year);

        MonthlySeries series;
        series.series_id = id;
        series.start_year = first_year;
        series.values.reserve(static_cast<std::size_t>(last_year - first_year + 1) * 12);
        for (int y = first_year; y <= last_year; ++y) {
            for (int m = 1; m <= 12; ++m) {
                auto it = cells.find({y, m});
                if (it == cells.end()) throw MissingMonth(id, y, m);
                if (!std::isfinite(it->second) || it->second <= 0.0)
                    throw NonPositiveValue(id, y, m, it->second);
                series.values.push_back(it->second);
            }
        }
        out.push_back(std::move(series));
    }
    return out;
}

void write_series_csv(const std::vector<MonthlySeries>& dataset, const std::string& path) {
    std::vector<const MonthlySeries*> sorted;
    for (const auto& s : dataset) sorted.push_back(&s);
    std::sort(sorted.begin(), sorted.end(),
              [](const MonthlySeries* a, const MonthlySeries* b) {
                  return a->series_id < b->series_id;
              });

    std::ofstream out = open_output(path);
    out << "series_id,year,month,value\n";
    for (const MonthlySeries* s : sorted) {
        for (std::size_t t = 0; t < s->values.size(); ++t) {
            out << s->series_id << ',' << (s->start_year + static_cast<int>(t / 12)) << ','
                << (t % 12 + 1) << ',' << format_double(s->values[t]) << '\n';
        }
    }
    if (!out) throw IoError("write failed: " + path);
}

MonthlySeries generate_synthetic(uint64_t seed, int years, double trend, double base,
                                 double amplitude, double noise_std) {
    if (years < 3) throw InvalidParams("generate_synthetic: years must be >= 3");
    if (amplitude < 0.0 || noise_std < 0.0)
        throw InvalidParams("generate_synthetic: amplitude and noise_std must be >= 0");
    if (!(base > amplitude + 5.0 * noise_std))
        throw InvalidParams("generate_synthetic: need base > amplitude + 5*noise_std");

    Rng rng(seed);
    const double phase = rng.next_uniform(0.0, 2.0 * std::numbers::pi);

    MonthlySeries series;
    series.series_id = "synthetic";
    series.start_year = 2000;
    series.values.resize(static_cast<std::size_t>(years) * 12);
    for (std::size_t t = 0; t < series.values.size(); ++t) {
        const double td = static_cast<double>(t);
        double v = base + trend * (td / 12.0) +
                   amplitude * std::cos(2.0 * std::numbers::pi * td / 12.0 + phase);
        if (noise_std > 0.0) v += noise_std * rng.next_gaussian();
        if (!(v > 0.0))
            throw InvalidParams("generate_synthetic: parameters produced a non-positive value");
        series.values[t] = v;
    }
    return series;
}

std::vector<MonthlySeries> generate_suite(uint64_t seed, int count, int years) {
    if (count < 1) throw InvalidParams("generate_suite: count must be >= 1");
    std::vector<MonthlySeries> out;
    out.reserve(count);
    for (int k = 0; k < count; ++k) {
        Rng prng(mix64(seed ^ mix64(static_cast<uint64_t>(k) + 1)));
        const double base = prng.next_uniform(500.0, 5000.0);
        const double amplitude = base * prng.next_uniform(0.10, 0.30);
        const double trend = base * prng.next_uniform(-0.02, 0.05);
        const double noise_std = base * prng.next_uniform(0.005, 0.03);
        MonthlySeries s =
            generate_synthetic(prng.next_u64(), years, trend, base, amplitude, noise_std);
        std::ostringstream id;
        id << "syn" << (k + 1 < 10 ? "0" : "") << (k + 1);
        s.series_id = id.str();
        out.push_back(std::move(s));
    }
    return out;
}

namespace {

// "ens" rows order after numeric run labels; other non-numeric labels sort
// lexicographically after "ens".
std::tuple<int, long, std::string> run_sort_key(const std::string& run) {
    long value = 0;
    auto res = std::from_chars(run.data(), run.data() + run.size(), value);
    if (res.ec == std::errc{} && res.ptr == run.data() + run.size())
        return {0, value, run};
    if (run == "ens") return {1, 0, run};
    return {2, 0, run};
}

}  // namespace

void write_forecasts(std::vector<ForecastRow> rows, const std::string& path) {
    std::sort(rows.begin(), rows.end(), [](const ForecastRow& a, const ForecastRow& b) {
        return std::make_tuple(a.series_id, run_sort_key(a.run), a.year, a.month) <
               std::make_tuple(b.series_id, run_sort_key(b.run), b.year, b.month);
    });
    std::ofstream out = open_output(path);
    out << "series_id,run,year,month,forecast_mwh\n";
    for (const auto& r : rows) {
        out << r.series_id << ',' << r.run << ',' << r.year << ',' << r.month << ','
            << format_double(r.forecast_mwh) << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

std::vector<ForecastRow> read_forecasts(const std::string& path) {
    std::ifstream in = open_input(path);
    expect_header(in, "series_id,run,year,month,forecast_mwh", path);
    std::vector<ForecastRow> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 5) throw IoError("bad row in " + path + ": '" + line + "'");
        ForecastRow r;
        r.series_id = fields[0];
        r.run = fields[1];
        r.year = static_cast<int>(parse_int(fields[2]));
        r.month = static_cast<int>(parse_int(fields[3]));
        r.forecast_mwh = parse_double(fields[4]);
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_manifest(const DatasetManifest& manifest, const std::string& path) {
    manifest.validate();
    std::ofstream out = open_output(path);
    out << "series_id,path,years\n";
    for (const auto& e : manifest.entries)
        out << e.series_id << ',' << e.path << ',' << e.years << '\n';
    if (!out) throw IoError("write failed: " + path);
}

DatasetManifest read_manifest(const std::string& path) {
    std::ifstream in = open_input(path);
    expect_header(in, "series_id,path,years", path);
    DatasetManifest manifest;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 3) throw IoError("bad row in " + path + ": '" + line + "'");
        manifest.entries.push_back(
            {fields[0], fields[1], static_cast<int>(parse_int(fields[2]))});
    }
    manifest.validate();
    return manifest;
}

}  // namespace mtlf
