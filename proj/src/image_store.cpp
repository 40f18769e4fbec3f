#include "moodcast/image_store.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <atomic>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

#include "moodcast/error.hpp"

namespace moodcast {

std::string MemoryImageStore::put(const std::string& name, const ImageData& bytes) {
  std::lock_guard lock(mu_);
  images_[name] = bytes;
  return name;
}

ImageData MemoryImageStore::get(const std::string& ref) const {
  std::lock_guard lock(mu_);
  auto it = images_.find(ref);
  if (it == images_.end()) throw NotFoundError("image '" + ref + "' not found");
  return it->second;
}

bool MemoryImageStore::contains(const std::string& ref) const {
  std::lock_guard lock(mu_);
  return images_.count(ref) != 0;
}

std::filesystem::path DirectoryImageStore::resolve(const std::string& ref) const {
  const std::filesystem::path rel(ref);
  if (rel.is_absolute()) throw ValidationError("image reference must be relative: " + ref);
  for (const auto& part : rel) {
    if (part == "..") throw ValidationError("image reference escapes the project: " + ref);
  }
  return root_ / rel;
}

std::string DirectoryImageStore::put(const std::string& name, const ImageData& bytes) {
  const auto path = resolve(name);
  std::filesystem::create_directories(path.parent_path());
  atomic_write_file(path, bytes);
  return name;
}

ImageData DirectoryImageStore::get(const std::string& ref) const {
  const auto path = resolve(ref);
  if (!std::filesystem::exists(path)) throw NotFoundError("image '" + ref + "' not found");
  return read_file(path);
}

bool DirectoryImageStore::contains(const std::string& ref) const {
  try {
    return std::filesystem::exists(resolve(ref));
  } catch (const ValidationError&) {
    return false;
  }
}

void atomic_write_file(const std::filesystem::path& path, std::string_view bytes) {
  static std::atomic<unsigned long> counter{0};
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
  const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
  if (fd < 0) throw IoError("cannot create " + tmp.string() + ": " + std::strerror(errno));
  std::size_t written = 0;
  while (written < bytes.size()) {
    const auto n = ::write(fd, bytes.data() + written, bytes.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      const std::string err = std::strerror(errno);
      ::close(fd);
      ::unlink(tmp.c_str());
      throw IoError("write to " + tmp.string() + " failed: " + err);
    }
    written += static_cast<std::size_t>(n);
  }
  if (::fsync(fd) != 0 || ::close(fd) != 0) {
    ::unlink(tmp.c_str());
    throw IoError("flush of " + tmp.string() + " failed");
  }
  if (::rename(tmp.c_str(), path.c_str()) != 0) {
    const std::string err = std::strerror(errno);
    ::unlink(tmp.c_str());
    throw IoError("rename onto " + path.string() + " failed: " + err);
  }
  // Persist the directory entry as well.
  const int dfd = ::open(path.parent_path().empty() ? "." : path.parent_path().c_str(), O_RDONLY | O_DIRECTORY | O_CLOEXEC);
  if (dfd >= 0) {
    ::fsync(dfd);
    ::close(dfd);
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFoundError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace moodcast
