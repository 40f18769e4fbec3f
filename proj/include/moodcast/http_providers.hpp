#pragma once

#include <chrono>
#include <string>

#include "moodcast/mock_providers.hpp"
#include "moodcast/providers.hpp"

namespace moodcast {

struct HttpEndpoint {
  std::string url;      // full URL, e.g. https://api.openai.com/v1/chat/completions
  std::string api_key;  // sent as a Bearer token when non-empty
  std::string model;    // optional model name for chat-style APIs
  std::chrono::milliseconds timeout{60000};
  RetryPolicy retry;
};

/// OpenAI-compatible chat completions: POST {model, messages, max_tokens,
/// temperature}; reads choices[0].message.content.
class HttpTextProvider final : public TextProvider {
 public:
  explicit HttpTextProvider(HttpEndpoint ep) : ep_(std::move(ep)) {}
  std::string generate_text(const TextRequest& req) override;

 private:
  HttpEndpoint ep_;
};

/// Stability-style generation API rooted at the endpoint URL:
///   POST {url}/text-to-image   JSON, returns {"artifacts":[{"base64":...}]}
///   POST {url}/image-to-image  multipart with init_image and image_strength
class HttpImageProvider final : public ImageProvider {
 public:
  explicit HttpImageProvider(HttpEndpoint ep) : ep_(std::move(ep)) {}
  std::vector<ImageData> generate_images(const ImageRequest& req) override;
  ImageData restyle_image(const ImageEditRequest& req) override;

 private:
  HttpEndpoint ep_;
};

/// OpenAI-compatible chat completions with an inline data-URI image.
class HttpVisionProvider final : public VisionProvider {
 public:
  explicit HttpVisionProvider(HttpEndpoint ep) : ep_(std::move(ep)) {}
  std::string describe_image(const DescriptionRequest& req) override;

 private:
  HttpEndpoint ep_;
};

struct ProviderMode {
  bool mock = true;
  bool text_live = false;
  bool image_live = false;
  bool vision_live = false;
};

/// Reads TEXTGEN_/IMAGEGEN_/VISION_ ENDPOINT and API_KEY (plus optional
/// TEXTGEN_MODEL and VISION_MODEL). Any provider whose endpoint is unset
/// falls back to the mock built from `fixtures`; force_mock ignores the
/// environment entirely.
Providers providers_from_env(const FixtureSet& fixtures, bool force_mock, ProviderMode* mode = nullptr);

}  // namespace moodcast
