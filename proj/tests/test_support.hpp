#pragma once

#include <filesystem>
#include <string>

#include "clusterkit/dataset.hpp"
#include "clusterkit/rng.hpp"

namespace test_support {

/// Random dataset with coordinates uniform in [lo, hi).
inline clusterkit::Dataset random_dataset(clusterkit::Rng& rng,
                                          Eigen::Index m, Eigen::Index n,
                                          double lo = -5.0, double hi = 5.0) {
  clusterkit::Matrix pts(m, n);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      pts(i, j) = lo + (hi - lo) * rng.next_unit();
    }
  }
  return clusterkit::Dataset(std::move(pts));
}

/// Unique scratch directory for a test; removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    path_ = std::filesystem::temp_directory_path() /
            ("clusterkit_test_" + tag + "_" + std::to_string(counter_++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name) const {
    return (path_ / name).string();
  }

 private:
  static inline int counter_ = 0;
  std::filesystem::path path_;
};

}  // namespace test_support
