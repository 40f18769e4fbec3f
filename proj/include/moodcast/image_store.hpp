#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <string>

#include "moodcast/image.hpp"

namespace moodcast {

/// Where pipeline stages put and find image bytes. References are relative
/// paths such as "images/scene-0-1.png". Implementations are thread-safe.
class ImageStore {
 public:
  virtual ~ImageStore() = default;
  virtual std::string put(const std::string& name, const ImageData& bytes) = 0;
  /// Throws NotFoundError for an unknown reference.
  virtual ImageData get(const std::string& ref) const = 0;
  virtual bool contains(const std::string& ref) const = 0;
};

class MemoryImageStore final : public ImageStore {
 public:
  std::string put(const std::string& name, const ImageData& bytes) override;
  ImageData get(const std::string& ref) const override;
  bool contains(const std::string& ref) const override;

 private:
  mutable std::mutex mu_;
  std::map<std::string, ImageData> images_;
};

/// Files under a root directory; references are paths relative to it.
class DirectoryImageStore final : public ImageStore {
 public:
  explicit DirectoryImageStore(std::filesystem::path root) : root_(std::move(root)) {}

  std::string put(const std::string& name, const ImageData& bytes) override;
  ImageData get(const std::string& ref) const override;
  bool contains(const std::string& ref) const override;
  const std::filesystem::path& root() const noexcept { return root_; }

 private:
  std::filesystem::path resolve(const std::string& ref) const;
  std::filesystem::path root_;
};

/// Writes bytes to a sibling temp file, flushes it to disk and renames it
/// over `path`, so readers see either the old or the new content.
void atomic_write_file(const std::filesystem::path& path, std::string_view bytes);
std::string read_file(const std::filesystem::path& path);

}  // namespace moodcast
