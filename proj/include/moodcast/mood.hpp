#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace moodcast {

enum class Valence { Negative, Neutral, Positive };
enum class Arousal { Low, Neutral, High };

const char* to_string(Valence v) noexcept;
const char* to_string(Arousal a) noexcept;
Valence valence_from_string(std::string_view s);
Arousal arousal_from_string(std::string_view s);

/// A named point on the valence/arousal circumplex, quantized to three
/// classes per axis. default_energy is what the music stage uses as its
/// energy target when the brief names this mood.
struct MoodSpec {
  std::string name;
  Valence valence = Valence::Neutral;
  Arousal arousal = Arousal::Neutral;
  double default_energy = 0.5;

  bool operator==(const MoodSpec&) const = default;
};

inline constexpr std::string_view kUnclearLabel = "unclear";

class MoodPalette {
 public:
  MoodPalette() = default;
  /// Throws ValidationError on duplicate/empty names, a mood called
  /// "unclear", or default_energy outside [0,1].
  explicit MoodPalette(std::vector<MoodSpec> moods);

  /// The eight-mood circumplex used by the annotation study.
  static MoodPalette defaults();
  static MoodPalette from_json(const nlohmann::json& j);
  static MoodPalette load(const std::filesystem::path& path);
  nlohmann::json to_json() const;

  const std::vector<MoodSpec>& moods() const noexcept { return moods_; }
  std::size_t size() const noexcept { return moods_.size(); }

  /// Case-insensitive lookup; nullptr when absent.
  const MoodSpec* find(std::string_view name) const noexcept;
  /// Throws NotFoundError when absent.
  const MoodSpec& at(std::string_view name) const;
  bool is_label(std::string_view label) const noexcept;

 private:
  std::vector<MoodSpec> moods_;
};

enum class MatchKind { Exact, ValenceMatch, ArousalMatch, NoMatch, Unclear };

const char* to_string(MatchKind k) noexcept;

/// "unclear" wins, then same name, then same valence class, then same arousal
/// class. Throws NotFoundError for labels outside the palette.
MatchKind classify_match(const MoodSpec& target, std::string_view observed_label,
                         const MoodPalette& palette);

}  // namespace moodcast
