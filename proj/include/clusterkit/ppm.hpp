#pragma once

#include <string>

#include "clusterkit/dataset.hpp"

namespace clusterkit {

/// Mean RGB intensities of the complete patch_width x patch_height tiles of
/// an image, one feature row (red, green, blue) per patch, each coordinate
/// normalized to [0, 1]. Patches run left to right, top to bottom; trailing
/// partial tiles are discarded.
struct PatchGrid {
  int image_width = 0;
  int image_height = 0;
  int patch_width = 0;
  int patch_height = 0;
  Dataset features;
};

/// Reads a plain (P3) or binary (P6) PPM image, maxval up to 65535, and
/// averages each channel over every complete patch. Malformed headers,
/// truncated pixel data and unsupported magics raise std::runtime_error.
PatchGrid extract_patch_features(const std::string& ppm_path, int patch_width,
                                 int patch_height);

}  // namespace clusterkit
