#pragma once

#include <filesystem>
#include <fstream>
#include <string>

#include <unistd.h>

#include "paretotopo/pointset.hpp"
#include "paretotopo/rng.hpp"

// Scratch directory removed on destruction.
struct TempDir {
  std::filesystem::path path;
  TempDir() {
    static int counter = 0;
    path = std::filesystem::temp_directory_path() /
           ("paretotopo_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  std::filesystem::path write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name, std::ios::binary) << text;
    return path / name;
  }
};

inline paretotopo::Matrix random_matrix(paretotopo::CounterRng& rng, std::size_t rows, std::size_t cols,
                                        double lo = 0.0, double hi = 1.0) {
  paretotopo::Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.uniform(lo, hi);
  return m;
}
