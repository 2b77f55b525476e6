#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "paretotopo/error.hpp"

namespace paretotopo {

using Index = std::int32_t;

/// Dense row-major matrix of doubles.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0; }

  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }

  const std::vector<double>& data() const noexcept { return data_; }

  /// Rows in the given order.
  Matrix select_rows(std::span<const Index> rows) const;
  /// Columns in the given order.
  Matrix select_cols(std::span<const int> cols) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Decision-space sample with optional paired objective values.
///
/// Invariants (checked by make()): at least one point and one coordinate,
/// all entries finite, objective rows match decision rows.
class PointCloud {
public:
  static PointCloud make(Matrix points, std::optional<Matrix> objectives = std::nullopt);

  std::size_t size() const noexcept { return points_.rows(); }
  std::size_t dim() const noexcept { return points_.cols(); }
  bool has_objectives() const noexcept { return objectives_.has_value(); }
  std::size_t num_objectives() const noexcept { return objectives_ ? objectives_->cols() : 0; }

  const Matrix& points() const noexcept { return points_; }
  const Matrix& objectives() const;

  PointCloud subset(std::span<const Index> rows) const;

private:
  PointCloud(Matrix p, std::optional<Matrix> f) : points_(std::move(p)), objectives_(std::move(f)) {}

  Matrix points_;
  std::optional<Matrix> objectives_;
};

/// Symmetric N×N Euclidean distance matrix with zero diagonal.
class DistanceMatrix {
public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, 0.0) {}

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double v) {
    d_[i * n_ + j] = v;
    d_[j * n_ + i] = v;
  }
  std::span<const double> row(std::size_t i) const { return {d_.data() + i * n_, n_}; }
  double max() const;

  /// Restriction to the given points, in that order.
  DistanceMatrix subset(std::span<const Index> rows) const;

private:
  std::size_t n_ = 0;
  std::vector<double> d_;
};

// CSV I/O. Header row required; decision columns are x1..xn, objective
// columns f1..fm.
Matrix read_matrix_csv(const std::filesystem::path& path, char column_prefix);
void write_matrix_csv(const std::filesystem::path& path, const Matrix& m, char column_prefix);

PointCloud load_point_cloud(const std::filesystem::path& decision_csv,
                            const std::optional<std::filesystem::path>& objective_csv = std::nullopt);

DistanceMatrix pairwise_distances(const Matrix& points);
inline DistanceMatrix pairwise_distances(const PointCloud& pc) { return pairwise_distances(pc.points()); }

/// Indices (ascending) of rows not dominated on the objective subset.
/// Rows with identical restricted vectors do not dominate each other.
std::vector<Index> non_dominated_filter(const Matrix& objectives, std::span<const int> subset);

/// All objective indices 0..m-1.
std::vector<int> all_objectives(std::size_t m);

} // namespace paretotopo
