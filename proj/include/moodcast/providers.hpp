#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "moodcast/image.hpp"

namespace moodcast {

struct TextRequest {
  std::string prompt;
  int max_length = 1024;
  double temperature = 0.7;
};

struct ImageRequest {
  std::string prompt;
  int width = 832;
  int height = 384;
  int count = 1;
  std::uint64_t seed = 0;
};

struct ImageEditRequest {
  ImageData source_image;
  std::string style_prompt;
  double strength = 0.6;
  std::uint64_t seed = 0;
};

struct DescriptionRequest {
  ImageData image;
};

/// Throw ValidationError when a request breaks its invariants.
void validate(const TextRequest& req);
void validate(const ImageRequest& req);
void validate(const ImageEditRequest& req);
void validate(const DescriptionRequest& req);

// Implementations must be safe to call concurrently. Failures are reported
// only through the ProviderError hierarchy (or ValidationError/DecodeError
// for bad input); a call never returns a partial result.

class TextProvider {
 public:
  virtual ~TextProvider() = default;
  virtual std::string generate_text(const TextRequest& req) = 0;
};

class ImageProvider {
 public:
  virtual ~ImageProvider() = default;
  /// Returns exactly req.count images.
  virtual std::vector<ImageData> generate_images(const ImageRequest& req) = 0;
  virtual ImageData restyle_image(const ImageEditRequest& req) = 0;
};

class VisionProvider {
 public:
  virtual ~VisionProvider() = default;
  /// One-sentence caption.
  virtual std::string describe_image(const DescriptionRequest& req) = 0;
};

struct Providers {
  std::shared_ptr<TextProvider> text;
  std::shared_ptr<ImageProvider> image;
  std::shared_ptr<VisionProvider> vision;
};

struct RetryPolicy {
  int max_attempts = 3;
  std::chrono::milliseconds base_delay{250};
  double backoff_factor = 2.0;
  /// Each delay is scaled by a uniform factor in [1 - jitter, 1 + jitter].
  double jitter = 0.2;
  std::function<void(std::chrono::milliseconds)> sleep;  // defaults to this_thread::sleep_for
};

/// Runs fn, retrying retryable ProviderErrors with exponential backoff. The
/// surfaced error reports the number of attempts made.
template <typename Fn>
auto with_retry(const RetryPolicy& policy, Fn&& fn) -> decltype(fn());

namespace detail {
std::chrono::milliseconds backoff_delay(const RetryPolicy& policy, int attempt);
void sleep_for(const RetryPolicy& policy, std::chrono::milliseconds d);
}  // namespace detail

}  // namespace moodcast

#include "moodcast/error.hpp"

namespace moodcast {

template <typename Fn>
auto with_retry(const RetryPolicy& policy, Fn&& fn) -> decltype(fn()) {
  const int attempts = std::max(1, policy.max_attempts);
  for (int attempt = 1;; ++attempt) {
    try {
      return fn();
    } catch (ProviderError& e) {
      if (!e.retryable() || attempt >= attempts) {
        e.set_attempts(attempt);
        throw;
      }
    }
    detail::sleep_for(policy, detail::backoff_delay(policy, attempt));
  }
}

}  // namespace moodcast
