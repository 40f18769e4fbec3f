#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "moodcast/sentiment.hpp"

namespace moodcast {

/// A user-supplied image. `image` is a reference into an ImageStore.
struct Upload {
  std::string id;
  std::string image;
  std::string description;

  bool operator==(const Upload&) const = default;
};

struct CampaignBrief {
  std::string audience;
  std::string problem;
  std::string action;
  std::string mood;
  std::vector<Upload> uploads;

  bool operator==(const CampaignBrief&) const = default;
};

/// Throws ValidationError naming the first empty field.
void validate(const CampaignBrief& brief);

/// Four candidates for one scene; `primary` is always one of them.
struct ImageSet {
  std::string primary;
  std::vector<std::string> alternates;  // exactly three
  std::string prompt_used;
  bool restyled = false;

  std::vector<std::string> candidates() const;
  bool operator==(const ImageSet&) const = default;
};

inline constexpr double kMaxSceneSeconds = 45.0;
inline constexpr double kDefaultSceneSeconds = 3.0;
inline constexpr double kMaxVideoSeconds = 45.0;

struct Scene {
  int index = 0;
  std::string text;
  std::string image_description;
  std::string narrative_goal;
  PositivityScore positivity;
  /// Unset until assign_durations runs (or the model supplied one).
  std::optional<double> duration_s;
  std::optional<std::string> upload_bound;
  std::optional<ImageSet> images;
  /// Last provider failure for this scene's images, if any.
  std::optional<std::string> image_error;

  bool operator==(const Scene&) const = default;
};

struct Script {
  std::vector<Scene> scenes;
  CampaignBrief brief;
  bool with_mood = true;
  std::vector<std::string> warnings;

  double total_duration() const;
  bool operator==(const Script&) const = default;
};

struct StyleSuggestion {
  std::string word;
  std::string style;
  std::string explanation;

  bool operator==(const StyleSuggestion&) const = default;
};

struct ColorSuggestion {
  int energy_score = 50;
  std::string color_description;

  bool operator==(const ColorSuggestion&) const = default;
};

struct ManifestScene {
  std::string image;
  std::string overlay_text;
  double duration_s = 0;
  int positivity = 50;

  bool operator==(const ManifestScene&) const = default;
};

inline constexpr const char* kAspectRatio = "19.5:9";

struct VideoManifest {
  std::vector<ManifestScene> scenes;
  std::string song_id;
  std::string aspect_ratio = kAspectRatio;
  double total_duration_s = 0;
  bool over_length = false;

  bool operator==(const VideoManifest&) const = default;
};

nlohmann::json to_json(const Upload& u);
nlohmann::json to_json(const CampaignBrief& b);
nlohmann::json to_json(const ImageSet& s);
nlohmann::json to_json(const Scene& s);
nlohmann::json to_json(const Script& s);
nlohmann::json to_json(const StyleSuggestion& s);
nlohmann::json to_json(const ColorSuggestion& c);
nlohmann::json to_json(const VideoManifest& m);

// Readers throw ValidationError on schema violations.
Upload upload_from_json(const nlohmann::json& j);
CampaignBrief brief_from_json(const nlohmann::json& j);
ImageSet image_set_from_json(const nlohmann::json& j);
Scene scene_from_json(const nlohmann::json& j);
Script script_from_json(const nlohmann::json& j);
StyleSuggestion style_from_json(const nlohmann::json& j);
ColorSuggestion color_from_json(const nlohmann::json& j);
VideoManifest manifest_from_json(const nlohmann::json& j);

}  // namespace moodcast
