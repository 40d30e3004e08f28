#include "clusterkit/ppm.hpp"

#include <cstdint>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace clusterkit {

namespace {

struct PpmImage {
  int width = 0;
  int height = 0;
  int maxval = 0;
  std::vector<std::uint16_t> samples;  // r, g, b interleaved, row-major
};

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw std::runtime_error(path + ": " + what);
}

// Netpbm header token: skips whitespace and '#' comments, then reads a
// nonnegative decimal integer.
long read_header_int(std::istream& in, const std::string& path,
                     const char* what) {
  int ch = in.get();
  while (ch != EOF) {
    if (ch == '#') {
      while (ch != EOF && ch != '\n') ch = in.get();
    } else if (std::isspace(ch)) {
      ch = in.get();
    } else {
      break;
    }
  }
  if (ch == EOF || !std::isdigit(ch)) {
    fail(path, std::string("malformed header: expected ") + what);
  }
  long value = 0;
  while (ch != EOF && std::isdigit(ch)) {
    value = value * 10 + (ch - '0');
    if (value > std::numeric_limits<int>::max()) {
      fail(path, std::string("header value out of range for ") + what);
    }
    ch = in.get();
  }
  if (ch != EOF) in.unget();
  return value;
}

PpmImage load_ppm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fail(path, "cannot open file");
  }

  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (!in || magic[0] != 'P' || (magic[1] != '3' && magic[1] != '6')) {
    fail(path, "unsupported magic (expected P3 or P6)");
  }
  const bool binary = magic[1] == '6';

  PpmImage img;
  img.width = static_cast<int>(read_header_int(in, path, "width"));
  img.height = static_cast<int>(read_header_int(in, path, "height"));
  img.maxval = static_cast<int>(read_header_int(in, path, "maxval"));
  if (img.width < 1 || img.height < 1) {
    fail(path, "malformed header: dimensions must be positive");
  }
  if (img.maxval < 1 || img.maxval > 65535) {
    fail(path, "malformed header: maxval must be in [1, 65535]");
  }

  const std::size_t count = static_cast<std::size_t>(img.width) *
                            static_cast<std::size_t>(img.height) * 3;
  img.samples.resize(count);

  if (binary) {
    const int ws = in.get();  // single whitespace byte ends the header
    if (ws == EOF || !std::isspace(ws)) {
      fail(path, "malformed header: missing whitespace before pixel data");
    }
    const int bytes_per_sample = img.maxval < 256 ? 1 : 2;
    std::vector<unsigned char> raw(count *
                                   static_cast<std::size_t>(bytes_per_sample));
    in.read(reinterpret_cast<char*>(raw.data()),
            static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(in.gcount()) != raw.size()) {
      fail(path, "truncated pixel data");
    }
    for (std::size_t s = 0; s < count; ++s) {
      const std::uint16_t value =
          bytes_per_sample == 1
              ? raw[s]
              : static_cast<std::uint16_t>((raw[2 * s] << 8) | raw[2 * s + 1]);
      if (value > img.maxval) {
        fail(path, "sample value exceeds maxval");
      }
      img.samples[s] = value;
    }
  } else {
    for (std::size_t s = 0; s < count; ++s) {
      long value = 0;
      try {
        value = read_header_int(in, path, "sample");
      } catch (const std::runtime_error&) {
        fail(path, "truncated pixel data");
      }
      if (value > img.maxval) {
        fail(path, "sample value exceeds maxval");
      }
      img.samples[s] = static_cast<std::uint16_t>(value);
    }
  }
  return img;
}

}  // namespace

PatchGrid extract_patch_features(const std::string& ppm_path, int patch_width,
                                 int patch_height) {
  if (patch_width < 1 || patch_height < 1) {
    throw std::invalid_argument(
        "extract_patch_features: patch dimensions must be positive");
  }
  const PpmImage img = load_ppm(ppm_path);
  const int patches_x = img.width / patch_width;
  const int patches_y = img.height / patch_height;
  if (patches_x == 0 || patches_y == 0) {
    throw std::invalid_argument(
        "extract_patch_features: patch size exceeds image size");
  }

  Matrix features(static_cast<Eigen::Index>(patches_x) * patches_y, 3);
  const double scale =
      static_cast<double>(patch_width) * patch_height * img.maxval;
  for (int gy = 0; gy < patches_y; ++gy) {
    for (int gx = 0; gx < patches_x; ++gx) {
      double sum[3] = {0.0, 0.0, 0.0};
      for (int y = gy * patch_height; y < (gy + 1) * patch_height; ++y) {
        for (int x = gx * patch_width; x < (gx + 1) * patch_width; ++x) {
          const std::size_t base =
              3 * (static_cast<std::size_t>(y) * img.width + x);
          sum[0] += img.samples[base];
          sum[1] += img.samples[base + 1];
          sum[2] += img.samples[base + 2];
        }
      }
      const Eigen::Index row = static_cast<Eigen::Index>(gy) * patches_x + gx;
      for (int ch = 0; ch < 3; ++ch) {
        features(row, ch) = sum[ch] / scale;
      }
    }
  }
  return {img.width, img.height, patch_width, patch_height,
          Dataset(std::move(features))};
}

}  // namespace clusterkit
