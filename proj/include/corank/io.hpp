#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "corank/local_quality.hpp"
#include "corank/types.hpp"

namespace corank {

/// Shortest decimal that round-trips the exact double.
inline std::string format_number(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

inline std::string format_number(std::uint64_t value) {
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

inline std::string format_number(std::uint32_t value) {
  return format_number(static_cast<std::uint64_t>(value));
}

inline std::string format_number(std::int32_t value) {
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

namespace detail {

inline bool is_separator(char c) {
  return c == ',' || c == ' ' || c == '\t' || c == '\r';
}

/// Splits a line on commas and whitespace and parses every field as double.
/// Returns false for blank/comment lines.
inline bool parse_number_line(std::string_view line, std::size_t line_number,
                              std::vector<double>& fields) {
  fields.clear();
  std::size_t pos = 0;
  while (pos < line.size() && is_separator(line[pos])) {
    ++pos;
  }
  if (pos == line.size() || line[pos] == '#') {
    return false;
  }
  while (pos < line.size()) {
    std::size_t end = pos;
    while (end < line.size() && !is_separator(line[end])) {
      ++end;
    }
    double value = 0.0;
    const auto result =
        std::from_chars(line.data() + pos, line.data() + end, value);
    if (result.ec != std::errc{} || result.ptr != line.data() + end) {
      throw input_error("non-numeric field '" +
                        std::string(line.substr(pos, end - pos)) +
                        "' at line " + std::to_string(line_number));
    }
    if (!std::isfinite(value)) {
      throw input_error("non-finite value at line " +
                        std::to_string(line_number));
    }
    fields.push_back(value);
    pos = end;
    while (pos < line.size() && is_separator(line[pos])) {
      ++pos;
    }
  }
  return true;
}

struct NumericTable {
  Matrix<double> values;
  std::vector<std::size_t> line_numbers;  // source line of each row
};

inline NumericTable read_numeric_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw input_error("cannot open '" + path.string() + "' for reading");
  }
  std::vector<std::vector<double>> rows;
  std::vector<std::size_t> line_numbers;
  std::string line;
  std::vector<double> fields;
  std::size_t line_number = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!parse_number_line(line, line_number, fields)) {
      continue;
    }
    if (rows.empty()) {
      width = fields.size();
    } else if (fields.size() != width) {
      throw input_error("ragged row at line " + std::to_string(line_number) +
                        ": expected " + std::to_string(width) +
                        " fields, got " + std::to_string(fields.size()));
    }
    rows.push_back(fields);
    line_numbers.push_back(line_number);
  }
  NumericTable table{Matrix<double>(rows.size(), width), line_numbers};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::copy(rows[i].begin(), rows[i].end(), table.values.row(i));
  }
  return table;
}

inline std::ofstream open_for_writing(const std::filesystem::path& path,
                                      std::ios::openmode mode = {}) {
  std::ofstream out(path, mode);
  if (!out) {
    throw input_error("cannot open '" + path.string() + "' for writing");
  }
  return out;
}

}  // namespace detail

/// Text point cloud: one point per line, fields split on commas or
/// whitespace, '#' lines ignored.
inline PointSet read_points(const std::filesystem::path& path) {
  detail::NumericTable table = detail::read_numeric_table(path);
  PointSet points{std::move(table.values)};
  if (points.size() < 2) {
    throw input_error("'" + path.string() + "' holds " +
                      std::to_string(points.size()) +
                      " points; need at least 2");
  }
  points.validate();
  return points;
}

/// Square distance matrix in the same text format. Entries must be
/// nonnegative, the diagonal zero and the matrix symmetric, both within
/// 1e-9; small asymmetries are averaged away after validation.
inline DistanceMatrix read_distance_matrix(const std::filesystem::path& path) {
  constexpr double tolerance = 1e-9;
  detail::NumericTable table = detail::read_numeric_table(path);
  Matrix<double>& m = table.values;
  if (m.rows() != m.cols()) {
    throw input_error("'" + path.string() + "' is not square: " +
                      std::to_string(m.rows()) + " rows x " +
                      std::to_string(m.cols()) + " columns");
  }
  if (m.rows() < 2) {
    throw input_error("'" + path.string() + "' needs at least 2 rows");
  }
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (m(i, j) < 0.0) {
        throw input_error("negative distance at row " + std::to_string(i + 1) +
                          ", column " + std::to_string(j + 1));
      }
    }
    if (std::abs(m(i, i)) > tolerance) {
      throw input_error("nonzero diagonal entry at row " +
                        std::to_string(i + 1));
    }
    m(i, i) = 0.0;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(m(i, j) - m(j, i)) > tolerance) {
        throw input_error("asymmetric entries at (" + std::to_string(i + 1) +
                          ", " + std::to_string(j + 1) + "): " +
                          format_number(m(i, j)) + " vs " +
                          format_number(m(j, i)));
      }
      const double v = 0.5 * (m(i, j) + m(j, i));
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  return DistanceMatrix{std::move(m)};
}

inline void write_points(const PointSet& points,
                         const std::filesystem::path& path) {
  auto out = detail::open_for_writing(path);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t c = 0; c < points.dim(); ++c) {
      if (c > 0) {
        out << ',';
      }
      out << format_number(points.coords(i, c));
    }
    out << '\n';
  }
}

template <typename T>
void write_matrix_csv(const Matrix<T>& matrix, std::ostream& out) {
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    for (std::size_t j = 0; j < matrix.cols(); ++j) {
      if (j > 0) {
        out << ',';
      }
      out << format_number(matrix(i, j));
    }
    out << '\n';
  }
}

template <typename T>
void write_matrix_csv(const Matrix<T>& matrix,
                      const std::filesystem::path& path) {
  auto out = detail::open_for_writing(path);
  write_matrix_csv(matrix, out);
}

/// Binary PGM (P5, maxval 255): zero maps to white, the matrix maximum to
/// black. An all-zero matrix comes out all white.
template <typename T>
void write_pgm(const Matrix<T>& matrix, const std::filesystem::path& path) {
  double peak = 0.0;
  for (const T& v : matrix.data()) {
    peak = std::max(peak, static_cast<double>(v));
  }
  auto out = detail::open_for_writing(path, std::ios::binary);
  out << "P5\n" << matrix.cols() << ' ' << matrix.rows() << "\n255\n";
  std::vector<unsigned char> row(matrix.cols());
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    for (std::size_t j = 0; j < matrix.cols(); ++j) {
      const double v = static_cast<double>(matrix(i, j));
      const long pixel =
          peak > 0.0 ? std::lround(255.0 * (1.0 - v / peak)) : 255;
      row[j] = static_cast<unsigned char>(std::clamp(pixel, 0L, 255L));
    }
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size()));
  }
}

/// Scatter plot of 2-D points as filled circles (radius 3) in a 1000x1000
/// viewBox; coordinates are min-max normalized per axis and the y axis
/// points up.
inline void write_svg_scatter(const PointSet& points,
                              const std::vector<Rgb>& colors,
                              const std::filesystem::path& path) {
  if (points.dim() != 2) {
    throw input_error("svg scatter needs 2-D points, got " +
                      std::to_string(points.dim()) + "-D");
  }
  if (colors.size() != points.size()) {
    throw input_error("svg scatter: " + std::to_string(points.size()) +
                      " points but " + std::to_string(colors.size()) +
                      " colors");
  }
  double lo[2];
  double hi[2];
  for (int axis = 0; axis < 2; ++axis) {
    lo[axis] = points.coords(0, static_cast<std::size_t>(axis));
    hi[axis] = lo[axis];
    for (std::size_t i = 1; i < points.size(); ++i) {
      const double v = points.coords(i, static_cast<std::size_t>(axis));
      lo[axis] = std::min(lo[axis], v);
      hi[axis] = std::max(hi[axis], v);
    }
  }
  const auto scaled = [&](std::size_t i, int axis) {
    const double span = hi[axis] - lo[axis];
    if (span <= 0.0) {
      return 500.0;
    }
    const double unit =
        (points.coords(i, static_cast<std::size_t>(axis)) - lo[axis]) / span;
    return 1000.0 * unit;
  };

  auto out = detail::open_for_writing(path);
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<svg xmlns=\"http://www.w3.org/2000/svg\" "
         "viewBox=\"0 0 1000 1000\">\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double cx = scaled(i, 0);
    const double cy = 1000.0 - scaled(i, 1);
    const Rgb& c = colors[i];
    out << "<circle cx=\"" << format_number(cx) << "\" cy=\""
        << format_number(cy) << "\" r=\"3\" fill=\"rgb("
        << format_number(static_cast<std::uint32_t>(c.r)) << ','
        << format_number(static_cast<std::uint32_t>(c.g)) << ','
        << format_number(static_cast<std::uint32_t>(c.b)) << ")\"/>\n";
  }
  out << "</svg>\n";
}

}  // namespace corank
