#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace moodcast {

/// Encoded image bytes as exchanged with providers and stored on disk (PNG).
using ImageData = std::string;

/// 8-bit RGB raster.
struct Raster {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;

  std::uint8_t* at(int x, int y) { return rgb.data() + 3 * (static_cast<std::size_t>(y) * width + x); }
  const std::uint8_t* at(int x, int y) const {
    return rgb.data() + 3 * (static_cast<std::size_t>(y) * width + x);
  }
  bool operator==(const Raster&) const = default;
};

/// Throws DecodeError when the bytes are not a readable PNG.
Raster decode_png(std::string_view bytes);
ImageData encode_png(const Raster& raster);

}  // namespace moodcast
