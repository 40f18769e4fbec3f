#include "moodcast/image.hpp"

#include <cstring>

#include <png.h>

#include "moodcast/error.hpp"

namespace moodcast {

Raster decode_png(std::string_view bytes) {
  if (bytes.empty()) throw DecodeError("empty image");
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw DecodeError("not a decodable PNG: " + msg);
  }
  image.format = PNG_FORMAT_RGB;
  Raster out;
  out.width = static_cast<int>(image.width);
  out.height = static_cast<int>(image.height);
  out.rgb.resize(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, out.rgb.data(), 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw DecodeError("corrupt PNG data: " + msg);
  }
  return out;
}

ImageData encode_png(const Raster& raster) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(raster.width);
  image.height = static_cast<png_uint_32>(raster.height);
  image.format = PNG_FORMAT_RGB;
  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&image, nullptr, &size, 0, raster.rgb.data(), 0, nullptr)) {
    throw DecodeError(std::string("PNG encode failed: ") + image.message);
  }
  ImageData out(size, '\0');
  if (!png_image_write_to_memory(&image, out.data(), &size, 0, raster.rgb.data(), 0, nullptr)) {
    throw DecodeError(std::string("PNG encode failed: ") + image.message);
  }
  out.resize(size);
  return out;
}

}  // namespace moodcast
