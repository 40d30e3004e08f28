#pragma once

#include <string>
#include <vector>

#include "clusterkit/dataset.hpp"

namespace clusterkit {

/// Reads a CSV of finite decimal numbers (comma separator, '.' decimal
/// point). A first row whose cells do not all parse as numbers is treated
/// as a header and skipped. Ragged rows and malformed cells raise a
/// std::runtime_error carrying the line number.
Dataset load_csv(const std::string& path);

/// One row per point, 17 significant digits per value so that loading the
/// file back reproduces the dataset bit-exactly.
void save_dataset_csv(const std::string& path, const Dataset& data);

/// One row per point: 1-based point index, 1-based cluster id (the literal
/// "noise" for entries below 0), then one column per responsibility when
/// `responsibilities` is given. Values use 17 significant digits.
void save_assignments_csv(const std::string& path,
                          const std::vector<int>& labels,
                          const Matrix* responsibilities = nullptr);

}  // namespace clusterkit
