#include "rvcal/data.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "rvcal/error.hpp"

namespace rvcal {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Splits one CSV record; supports double-quoted fields with "" escapes.
std::vector<std::string> split_record(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.emplace_back(trim(cur));
  return fields;
}

bool is_missing(std::string_view cell) {
  if (cell.empty()) return true;
  std::string lower(cell);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  return lower == "na" || lower == "nan" || lower == "null";
}

std::optional<double> parse_number(std::string_view cell) {
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) return std::nullopt;
  return v;
}

std::string format17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::optional<DatasetSpec> preset_dataset(std::string_view name) {
  if (name == "house") {
    return DatasetSpec{"house",
                       "median_house_value",
                       {"median_income", "housing_median_age", "total_rooms", "total_bedrooms", "population",
                        "households", "latitude", "longitude"},
                       20640,
                       MissingPolicy::Drop};
  }
  if (name == "solar") {
    return DatasetSpec{"solar",
                       "Radiation",
                       {"Temperature", "Pressure", "Humidity", "WindDirection(Degrees)", "Speed"},
                       32686,
                       MissingPolicy::Drop};
  }
  if (name == "bike") {
    return DatasetSpec{"bike",
                       "cnt",
                       {"season", "yr", "mnth", "hr", "holiday", "weekday", "workingday", "weathersit", "temp",
                        "atemp", "hum", "windspeed"},
                       17379,
                       MissingPolicy::Drop};
  }
  return std::nullopt;
}

Dataset parse_csv(std::istream& in, const DatasetSpec& spec) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!trim(line).empty()) {
      header = split_record(line);
      break;
    }
  }
  if (header.empty()) throw Error(Errc::EmptyDataset, "no header row");

  auto column = [&](const std::string& name) -> std::size_t {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw Error(Errc::MissingColumn, "column '" + name + "' not in header");
    return static_cast<std::size_t>(it - header.begin());
  };

  Dataset data;
  data.name = spec.name;
  data.target_name = spec.target;
  const std::size_t target_col = column(spec.target);
  std::vector<std::size_t> feature_cols;
  if (spec.features.empty()) {
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (c != target_col) {
        feature_cols.push_back(c);
        data.feature_names.push_back(header[c]);
      }
    }
  } else {
    for (const auto& f : spec.features) {
      if (f == spec.target) throw Error(Errc::InvalidSpec, "column '" + f + "' is both feature and target");
      feature_cols.push_back(column(f));
      data.feature_names.push_back(f);
    }
  }
  if (feature_cols.empty()) throw Error(Errc::InvalidSpec, "dataset has no feature columns");

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto fields = split_record(line);

    bool missing = false;
    auto read = [&](std::size_t col) -> double {
      const std::string_view cell = col < fields.size() ? std::string_view(fields[col]) : std::string_view();
      if (is_missing(cell)) {
        missing = true;
        return 0.0;
      }
      const auto v = parse_number(cell);
      if (!v) {
        throw Error(Errc::UnparsableValue, "line " + std::to_string(line_no) + ", column '" + header[col] +
                                               "': '" + std::string(cell) + "'");
      }
      if (!std::isfinite(*v)) missing = true;
      return *v;
    };

    LabeledSample s;
    s.features.reserve(feature_cols.size());
    for (std::size_t c : feature_cols) s.features.push_back(read(c));
    s.target = read(target_col);
    if (missing) {
      if (spec.missing == MissingPolicy::Error) {
        throw Error(Errc::UnparsableValue, "line " + std::to_string(line_no) + " has a missing value");
      }
      ++data.dropped_rows;
      continue;
    }
    data.samples.push_back(std::move(s));
  }

  if (data.samples.empty()) throw Error(Errc::EmptyDataset, "no usable rows");
  const std::size_t rows = data.rows_read();
  if (spec.expected_rows && *spec.expected_rows != rows) {
    throw Error(Errc::RowCountMismatch,
                "expected " + std::to_string(*spec.expected_rows) + " rows, read " + std::to_string(rows));
  }
  return data;
}

Dataset load_csv(const std::filesystem::path& path, const DatasetSpec& spec) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::EmptyDataset, "cannot open '" + path.string() + "'");
  return parse_csv(in, spec);
}

void write_csv(std::ostream& out, const Dataset& data) {
  for (const auto& f : data.feature_names) out << f << ',';
  out << data.target_name << '\n';
  for (const auto& s : data.samples) {
    for (double v : s.features) out << format17(v) << ',';
    out << format17(s.target) << '\n';
  }
}

}  // namespace rvcal
