#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "clusterkit/dbscan.hpp"
#include "clusterkit/generate.hpp"
#include "clusterkit/oracle.hpp"
#include "test_support.hpp"

using clusterkit::Dataset;
using clusterkit::dbscan;
using clusterkit::DbscanConfig;
using clusterkit::DbscanLabels;
using clusterkit::region_query;
using clusterkit::Rng;
using clusterkit::RngSeed;
using test_support::random_dataset;

namespace {

// Clumps plus uniform background scatter; produces cores, borders and noise.
Dataset scattered_instance(Rng& rng, Eigen::Index m) {
  clusterkit::Matrix pts(m, 2);
  const int clumps = 2 + static_cast<int>(rng.next_below(3));
  std::vector<std::pair<double, double>> centers;
  for (int c = 0; c < clumps; ++c) {
    centers.push_back({20.0 * (rng.next_unit() - 0.5),
                       20.0 * (rng.next_unit() - 0.5)});
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    if (rng.next_unit() < 0.8) {
      const auto& center = centers[rng.next_below(centers.size())];
      pts(i, 0) = center.first + 0.4 * rng.next_gaussian();
      pts(i, 1) = center.second + 0.4 * rng.next_gaussian();
    } else {
      pts(i, 0) = 24.0 * (rng.next_unit() - 0.5);
      pts(i, 1) = 24.0 * (rng.next_unit() - 0.5);
    }
  }
  return Dataset(std::move(pts));
}

// Border points whose core neighbors live in more than one cluster.
std::set<Eigen::Index> ambiguous_borders(const Dataset& data,
                                         const DbscanConfig& config,
                                         const DbscanLabels& result) {
  const double eps2 = config.eps * config.eps;
  std::set<Eigen::Index> out;
  for (Eigen::Index i = 0; i < data.size(); ++i) {
    if (result.core[std::size_t(i)]) continue;
    std::set<int> adjacent_clusters;
    for (Eigen::Index j = 0; j < data.size(); ++j) {
      if (!result.core[std::size_t(j)]) continue;
      if ((data.point(i) - data.point(j)).squaredNorm() <= eps2) {
        adjacent_clusters.insert(result.labels[std::size_t(j)]);
      }
    }
    if (adjacent_clusters.size() > 1) out.insert(i);
  }
  return out;
}

}  // namespace

TEST_CASE("region query includes the point itself and honors the boundary") {
  const Dataset isolated = Dataset::from_rows({{0, 0}, {100, 100}});
  CHECK(region_query(isolated, 0, 0.5) == std::vector<Eigen::Index>{0});

  const Dataset line = Dataset::from_rows({{0, 0}, {1, 0}, {2, 0}});
  // distance to both neighbors is exactly eps: closed ball includes them
  CHECK(region_query(line, 1, 1.0) == std::vector<Eigen::Index>{0, 1, 2});

  CHECK_THROWS_AS(region_query(line, 3, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(region_query(line, 0, 0.0), std::invalid_argument);
}

TEST_CASE("region query equals the all-pairs filter") {
  Rng rng(RngSeed{151});
  const Dataset data = random_dataset(rng, 20, 2, 0.0, 4.0);
  const double eps = 1.3;
  for (Eigen::Index i = 0; i < data.size(); ++i) {
    std::vector<Eigen::Index> expected;
    for (Eigen::Index j = 0; j < data.size(); ++j) {
      double sum = 0.0;
      for (Eigen::Index d = 0; d < data.dim(); ++d) {
        const double diff = data.points()(i, d) - data.points()(j, d);
        sum += diff * diff;
      }
      if (sum <= eps * eps) expected.push_back(j);
    }
    CHECK(region_query(data, i, eps) == expected);
  }
}

TEST_CASE("a chain within eps is one cluster of core points") {
  const Dataset data = Dataset::from_rows({{0, 0}, {1, 0}, {2, 0}});
  const DbscanLabels result = dbscan(data, {1.5, 2});
  CHECK(result.n_clusters == 1);
  CHECK(result.labels == std::vector<int>{0, 0, 0});
  CHECK(result.core == std::vector<bool>{true, true, true});
}

TEST_CASE("an isolated point is noise") {
  std::vector<std::vector<double>> rows = {
      {0, 0}, {0.5, 0}, {1, 0}, {0.5, 0.5}, {0, 0.5}, {100, 0}};
  const Dataset data = Dataset::from_rows(rows);
  const DbscanLabels result = dbscan(data, {1.0, 2});
  CHECK(result.labels[5] == DbscanLabels::kNoise);
  CHECK_FALSE(result.core[5]);
  CHECK(result.n_clusters == 1);
}

TEST_CASE("two concentric rings separate into two clusters") {
  const auto rings =
      clusterkit::generate_rings(100, {1.0, 5.0}, 0.05, RngSeed{424242});
  const DbscanLabels result = dbscan(rings.data, {2.0, 3});
  CHECK(result.n_clusters == 2);
  for (std::size_t i = 0; i < rings.labels.size(); ++i) {
    CHECK(result.labels[i] != DbscanLabels::kNoise);
  }
  // Clusters coincide with the generating rings.
  std::map<int, std::set<int>> by_cluster;
  for (std::size_t i = 0; i < rings.labels.size(); ++i) {
    by_cluster[result.labels[i]].insert(rings.labels[i]);
  }
  for (const auto& [cluster, rings_present] : by_cluster) {
    CHECK(rings_present.size() == 1);
  }
}

TEST_CASE("config validation") {
  const Dataset data = Dataset::from_rows({{0, 0}});
  CHECK_THROWS_AS(dbscan(data, {0.0, 2}), std::invalid_argument);
  CHECK_THROWS_AS(dbscan(data, {1.0, 0}), std::invalid_argument);
}

TEST_CASE("cluster ids are contiguous and growing eps keeps cores") {
  Rng rng(RngSeed{157});
  for (int trial = 0; trial < 10; ++trial) {
    const Dataset data = scattered_instance(rng, 80);
    const DbscanConfig config{0.8, 3};
    const DbscanLabels small = dbscan(data, config);
    const DbscanLabels large = dbscan(data, {config.eps * 2.0, config.min_near});

    std::set<int> ids;
    for (int label : small.labels) {
      if (label != DbscanLabels::kNoise) ids.insert(label);
    }
    CHECK(static_cast<int>(ids.size()) == small.n_clusters);
    if (!ids.empty()) {
      CHECK(*ids.begin() == 0);
      CHECK(*ids.rbegin() == small.n_clusters - 1);
    }

    for (std::size_t i = 0; i < small.core.size(); ++i) {
      if (small.core[i]) CHECK(large.core[i]);
    }
  }
}

TEST_CASE("dbscan agrees with the connectivity oracle") {
  Rng rng(RngSeed{163});
  int unambiguous_seen = 0;
  for (int trial = 0; trial < 25; ++trial) {
    const Eigen::Index m = 30 + static_cast<Eigen::Index>(rng.next_below(90));
    const Dataset data = scattered_instance(rng, m);
    const DbscanConfig config{0.5 + rng.next_unit(),
                              2 + static_cast<int>(rng.next_below(4))};

    const DbscanLabels mine = dbscan(data, config);
    const auto reference = clusterkit::oracle::connectivity_components(
        data, config.eps, config.min_near);

    REQUIRE(mine.n_clusters == reference.n_clusters);
    for (Eigen::Index i = 0; i < m; ++i) {
      CHECK(mine.core[std::size_t(i)] == reference.core[std::size_t(i)]);
      // noise sets agree exactly
      CHECK((mine.labels[std::size_t(i)] == DbscanLabels::kNoise) ==
            (reference.labels[std::size_t(i)] == -1));
      // core labels agree exactly (ids are canonical on both sides)
      if (mine.core[std::size_t(i)]) {
        CHECK(mine.labels[std::size_t(i)] ==
              reference.labels[std::size_t(i)]);
      }
    }

    const auto ambiguous = ambiguous_borders(data, config, mine);
    if (ambiguous.empty()) {
      ++unambiguous_seen;
      CHECK(mine.labels == reference.labels);
    } else {
      // An ambiguous border point must land in one of its adjacent clusters.
      const double eps2 = config.eps * config.eps;
      for (Eigen::Index i : ambiguous) {
        std::set<int> adjacent;
        for (Eigen::Index j = 0; j < m; ++j) {
          if (!mine.core[std::size_t(j)]) continue;
          if ((data.point(i) - data.point(j)).squaredNorm() <= eps2) {
            adjacent.insert(mine.labels[std::size_t(j)]);
          }
        }
        CHECK(adjacent.count(mine.labels[std::size_t(i)]) == 1);
      }
    }
  }
  CHECK(unambiguous_seen > 0);  // the equality branch actually runs
}
