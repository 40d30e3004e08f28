#include "clusterkit/csv.hpp"

#include <cassert>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

namespace clusterkit {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
    s.remove_suffix(1);
  }
  return s;
}

// Strict cell parse: the whole trimmed cell must be one finite number.
std::optional<double> parse_cell(std::string_view cell) {
  cell = trim(cell);
  if (cell.empty()) return std::nullopt;
  double value = 0.0;
  const auto* begin = cell.data();
  const auto* end = cell.data() + cell.size();
  const auto result = std::from_chars(begin, end, value);
  if (result.ec != std::errc{} || result.ptr != end) return std::nullopt;
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

[[noreturn]] void parse_error(const std::string& path, std::size_t line_no,
                              const std::string& what) {
  throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " +
                           what);
}

void format_value(std::string& out, double value) {
  char buf[64];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", value);
  assert(len > 0 && static_cast<std::size_t>(len) < sizeof buf);
  out.append(buf, static_cast<std::size_t>(len));
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error(path + ": cannot open file for writing");
  }
  out << contents;
  out.flush();
  if (!out.good()) {
    throw std::runtime_error(path + ": write failed");
  }
}

}  // namespace

Dataset load_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error(path + ": cannot open file");
  }

  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  bool first_content_row = true;
  std::size_t arity = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;

    const auto fields = split_fields(line);
    std::vector<double> row;
    row.reserve(fields.size());
    bool numeric = true;
    std::size_t bad_field = 0;
    for (std::size_t f = 0; f < fields.size(); ++f) {
      const auto value = parse_cell(fields[f]);
      if (!value) {
        numeric = false;
        bad_field = f;
        break;
      }
      row.push_back(*value);
    }

    if (first_content_row) {
      first_content_row = false;
      if (!numeric) continue;  // header row
      arity = fields.size();
    } else if (!numeric) {
      parse_error(path, line_no,
                  "invalid number '" +
                      std::string(trim(fields[bad_field])) + "'");
    }

    if (arity == 0) {  // first data row after a header
      arity = fields.size();
    } else if (fields.size() != arity) {
      parse_error(path, line_no,
                  "expected " + std::to_string(arity) + " fields, got " +
                      std::to_string(fields.size()));
    }
    rows.push_back(std::move(row));
  }

  if (rows.empty()) {
    throw std::runtime_error(path + ": empty dataset");
  }
  return Dataset::from_rows(rows);
}

void save_dataset_csv(const std::string& path, const Dataset& data) {
  std::string out;
  for (Eigen::Index i = 0; i < data.size(); ++i) {
    for (Eigen::Index j = 0; j < data.dim(); ++j) {
      if (j > 0) out.push_back(',');
      format_value(out, data.points()(i, j));
    }
    out.push_back('\n');
  }
  write_file(path, out);
}

void save_assignments_csv(const std::string& path,
                          const std::vector<int>& labels,
                          const Matrix* responsibilities) {
  if (responsibilities &&
      responsibilities->rows() != static_cast<Eigen::Index>(labels.size())) {
    throw std::invalid_argument(
        "save_assignments_csv: responsibilities row count mismatch");
  }
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out += std::to_string(i + 1);
    out.push_back(',');
    if (labels[i] < 0) {
      out += "noise";
    } else {
      out += std::to_string(labels[i] + 1);
    }
    if (responsibilities) {
      for (Eigen::Index c = 0; c < responsibilities->cols(); ++c) {
        out.push_back(',');
        format_value(out,
                     (*responsibilities)(static_cast<Eigen::Index>(i), c));
      }
    }
    out.push_back('\n');
  }
  write_file(path, out);
}

}  // namespace clusterkit
