#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "moodcast/providers.hpp"

namespace moodcast {

/// Canned responses for the mock providers.
///
/// File format (JSON):
///   { "text":   [ {"prompt": "...", "response": "..."},
///                 {"prompt_sha256": "<hex>", "response": "..."} ],
///     "images": [ {"image_sha256": "<hex>", "caption": "..."},
///                 {"file": "relative/path.png", "caption": "..."} ] }
/// Relative image paths resolve against the fixture file's directory.
class FixtureSet {
 public:
  static FixtureSet load(const std::filesystem::path& path);

  void add_text(const std::string& prompt, std::string response);
  void add_text_by_hash(std::string prompt_sha256, std::string response);
  void add_caption(const ImageData& image, std::string caption);

  const std::string* text_for(const std::string& prompt) const;
  const std::string* caption_for(const ImageData& image) const;

  /// Merges other into this; entries already present win.
  void merge(const FixtureSet& other);

 private:
  std::map<std::string, std::string> text_;      // prompt sha256 -> response
  std::map<std::string, std::string> captions_;  // image sha256 -> caption
};

/// Looks prompts up by stable hash. Misses raise NoFixtureError unless
/// synthesis is enabled, in which case a response in the grammar of the
/// recognised prompt family is derived from the prompt hash.
class MockTextProvider final : public TextProvider {
 public:
  explicit MockTextProvider(FixtureSet fixtures, bool synthesize = false)
      : fixtures_(std::move(fixtures)), synthesize_(synthesize) {}

  std::string generate_text(const TextRequest& req) override;

 private:
  FixtureSet fixtures_;
  bool synthesize_;
};

/// Placeholder images: a gradient whose colours derive from (seed, prompt
/// hash, candidate index), with those values also written into the first
/// pixel row so tests can recover them.
class MockImageProvider final : public ImageProvider {
 public:
  std::vector<ImageData> generate_images(const ImageRequest& req) override;
  /// strength 0 returns the source unchanged; otherwise blends toward a
  /// style colour and stamps a diagonal watermark.
  ImageData restyle_image(const ImageEditRequest& req) override;
};

class MockVisionProvider final : public VisionProvider {
 public:
  explicit MockVisionProvider(FixtureSet fixtures, bool synthesize = false)
      : fixtures_(std::move(fixtures)), synthesize_(synthesize) {}

  std::string describe_image(const DescriptionRequest& req) override;

 private:
  FixtureSet fixtures_;
  bool synthesize_;
};

/// Header values written into the first pixel row of a mock image.
struct MockImageStamp {
  std::uint64_t seed = 0;
  std::uint64_t prompt_hash = 0;
  std::uint32_t index = 0;
};
MockImageStamp read_mock_stamp(const ImageData& png);

/// Deterministic synthetic completion for a known prompt family, or
/// nullopt if the prompt is not recognised.
std::optional<std::string> synthesize_completion(const std::string& prompt);

Providers make_mock_providers(FixtureSet fixtures, bool synthesize = true);

}  // namespace moodcast
