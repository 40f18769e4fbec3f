#include "moodcast/providers.hpp"

#include <random>
#include <thread>

#include "moodcast/error.hpp"

namespace moodcast {

void validate(const TextRequest& req) {
  if (req.prompt.empty()) throw ValidationError("text request prompt is empty");
  if (req.max_length <= 0) throw ValidationError("text request max_length must be positive");
  if (!(req.temperature >= 0.0)) throw ValidationError("text request temperature must be >= 0");
}

void validate(const ImageRequest& req) {
  if (req.prompt.empty()) throw ValidationError("image request prompt is empty");
  if (req.width <= 0 || req.height <= 0) throw ValidationError("image request size must be positive");
  if (req.count < 1 || req.count > 8) throw ValidationError("image request count must be in [1,8]");
}

void validate(const ImageEditRequest& req) {
  if (req.source_image.empty()) throw ValidationError("image edit request has no source image");
  if (!(req.strength >= 0.0 && req.strength <= 1.0)) throw ValidationError("image edit strength outside [0,1]");
}

void validate(const DescriptionRequest& req) {
  if (req.image.empty()) throw ValidationError("description request has no image");
}

namespace detail {

std::chrono::milliseconds backoff_delay(const RetryPolicy& policy, int attempt) {
  double d = static_cast<double>(policy.base_delay.count());
  for (int i = 1; i < attempt; ++i) d *= policy.backoff_factor;
  if (policy.jitter > 0) {
    thread_local std::mt19937 rng{std::random_device{}()};
    std::uniform_real_distribution<double> dist(1.0 - policy.jitter, 1.0 + policy.jitter);
    d *= dist(rng);
  }
  return std::chrono::milliseconds(static_cast<long long>(d));
}

void sleep_for(const RetryPolicy& policy, std::chrono::milliseconds d) {
  if (policy.sleep) {
    policy.sleep(d);
  } else {
    std::this_thread::sleep_for(d);
  }
}

}  // namespace detail
}  // namespace moodcast
