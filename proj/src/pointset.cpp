#include "paretotopo/pointset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>

#include "csv_util.hpp"

namespace paretotopo {

const char* errc_name(Errc code) noexcept {
  switch (code) {
  case Errc::invalid_argument: return "invalid_argument";
  case Errc::io: return "io";
  case Errc::parse: return "parse";
  case Errc::row_mismatch: return "row_mismatch";
  case Errc::guard_exceeded: return "guard_exceeded";
  case Errc::numerical: return "numerical";
  case Errc::insufficient_sample: return "insufficient_sample";
  }
  return "unknown";
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols)
    throw Error(Errc::invalid_argument, "matrix data size does not match its shape");
}

Matrix Matrix::select_rows(std::span<const Index> rows) const {
  Matrix out(rows.size(), cols_);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    auto src = row(static_cast<std::size_t>(rows[r]));
    std::copy(src.begin(), src.end(), out.row(r).begin());
  }
  return out;
}

Matrix Matrix::select_cols(std::span<const int> cols) const {
  Matrix out(rows_, cols.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t c = 0; c < cols.size(); ++c)
      out(i, c) = (*this)(i, static_cast<std::size_t>(cols[c]));
  return out;
}

namespace {

void check_finite(const Matrix& m, const char* what) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (double v : m.row(i))
      if (!std::isfinite(v))
        throw Error(Errc::invalid_argument,
                    std::string(what) + " row " + std::to_string(i) + " contains a non-finite value");
}

} // namespace

PointCloud PointCloud::make(Matrix points, std::optional<Matrix> objectives) {
  if (points.rows() == 0 || points.cols() == 0)
    throw Error(Errc::invalid_argument, "point cloud needs at least one point and one coordinate");
  check_finite(points, "decision");
  if (objectives) {
    if (objectives->rows() != points.rows())
      throw Error(Errc::row_mismatch, "row-count mismatch: " + std::to_string(points.rows()) +
                                          " decision rows vs " + std::to_string(objectives->rows()) +
                                          " objective rows");
    if (objectives->cols() == 0)
      throw Error(Errc::invalid_argument, "objective matrix needs at least one column");
    check_finite(*objectives, "objective");
  }
  return PointCloud(std::move(points), std::move(objectives));
}

const Matrix& PointCloud::objectives() const {
  if (!objectives_) throw Error(Errc::invalid_argument, "point cloud has no objectives");
  return *objectives_;
}

PointCloud PointCloud::subset(std::span<const Index> rows) const {
  std::optional<Matrix> f;
  if (objectives_) f = objectives_->select_rows(rows);
  return PointCloud::make(points_.select_rows(rows), std::move(f));
}

double DistanceMatrix::max() const {
  return d_.empty() ? 0.0 : *std::max_element(d_.begin(), d_.end());
}

DistanceMatrix DistanceMatrix::subset(std::span<const Index> rows) const {
  DistanceMatrix out(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = i + 1; j < rows.size(); ++j)
      out.set(i, j, (*this)(static_cast<std::size_t>(rows[i]), static_cast<std::size_t>(rows[j])));
  return out;
}

Matrix read_matrix_csv(const std::filesystem::path& path, char column_prefix) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, path.string() + ": cannot open file");

  const std::string file = path.string();
  std::string line;
  std::size_t line_no = 0;
  std::size_t cols = 0;
  bool have_header = false;
  std::vector<double> data;
  std::size_t rows = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (csv::trim(line).empty()) continue;
    auto cells = csv::split(line);
    if (!have_header) {
      for (std::size_t c = 0; c < cells.size(); ++c) {
        const std::string expected = column_prefix + std::to_string(c + 1);
        if (csv::trim(cells[c]) != expected)
          throw Error(Errc::parse, file + ":" + std::to_string(line_no) + ": header column " +
                                       std::to_string(c + 1) + " is '" + std::string(csv::trim(cells[c])) +
                                       "', expected '" + expected + "'");
      }
      cols = cells.size();
      have_header = true;
      continue;
    }
    if (cells.size() != cols)
      throw Error(Errc::parse, file + ":" + std::to_string(line_no) + ": expected " + std::to_string(cols) +
                                   " cells, found " + std::to_string(cells.size()));
    for (std::size_t c = 0; c < cells.size(); ++c) {
      auto v = csv::parse_double(cells[c]);
      if (!v)
        throw Error(Errc::parse, file + ":" + std::to_string(line_no) + ": non-numeric cell '" +
                                     std::string(csv::trim(cells[c])) + "' in column " + std::to_string(c + 1));
      data.push_back(*v);
    }
    ++rows;
  }
  if (!have_header) throw Error(Errc::parse, file + ": empty file");
  if (rows == 0) throw Error(Errc::parse, file + ": no data rows after header");
  return Matrix(rows, cols, std::move(data));
}

void write_matrix_csv(const std::filesystem::path& path, const Matrix& m, char column_prefix) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io, path.string() + ": cannot open for writing");
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (c) out << ',';
    out << column_prefix << (c + 1);
  }
  out << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto r = m.row(i);
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (c) out << ',';
      out << csv::format_double(r[c]);
    }
    out << '\n';
  }
  if (!out) throw Error(Errc::io, path.string() + ": write failed");
}

PointCloud load_point_cloud(const std::filesystem::path& decision_csv,
                            const std::optional<std::filesystem::path>& objective_csv) {
  Matrix x = read_matrix_csv(decision_csv, 'x');
  std::optional<Matrix> f;
  if (objective_csv) {
    f = read_matrix_csv(*objective_csv, 'f');
    if (f->rows() != x.rows())
      throw Error(Errc::row_mismatch, "row-count mismatch: " + decision_csv.string() + " has " +
                                          std::to_string(x.rows()) + " rows, " + objective_csv->string() +
                                          " has " + std::to_string(f->rows()));
  }
  return PointCloud::make(std::move(x), std::move(f));
}

DistanceMatrix pairwise_distances(const Matrix& points) {
  const std::size_t n = points.rows();
  DistanceMatrix dm(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto p = points.row(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      auto q = points.row(j);
      double s = 0.0;
      for (std::size_t k = 0; k < p.size(); ++k) {
        const double t = p[k] - q[k];
        s += t * t;
      }
      dm.set(i, j, std::sqrt(s));
    }
  }
  return dm;
}

std::vector<Index> non_dominated_filter(const Matrix& objectives, std::span<const int> subset) {
  if (subset.empty()) throw Error(Errc::invalid_argument, "objective subset is empty");
  for (int c : subset)
    if (c < 0 || static_cast<std::size_t>(c) >= objectives.cols())
      throw Error(Errc::invalid_argument, "objective index " + std::to_string(c) + " out of range [0, " +
                                              std::to_string(objectives.cols()) + ")");

  const std::size_t n = objectives.rows();
  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  // A dominating row is lexicographically smaller, so one pass over the
  // lexicographic order against the running front suffices.
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    for (int c : subset) {
      const double fa = objectives(a, c), fb = objectives(b, c);
      if (fa != fb) return fa < fb;
    }
    return false;
  });

  auto dominates = [&](Index y, Index x) {
    bool strict = false;
    for (int c : subset) {
      const double fy = objectives(y, c), fx = objectives(x, c);
      if (fy > fx) return false;
      if (fy < fx) strict = true;
    }
    return strict;
  };

  std::vector<Index> front;
  for (Index x : order) {
    bool dominated = false;
    for (Index y : front)
      if (dominates(y, x)) {
        dominated = true;
        break;
      }
    if (!dominated) front.push_back(x);
  }
  std::sort(front.begin(), front.end());
  return front;
}

std::vector<int> all_objectives(std::size_t m) {
  std::vector<int> v(m);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

} // namespace paretotopo
