#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "moodcast/catalog.hpp"
#include "moodcast/image_store.hpp"
#include "moodcast/mood.hpp"
#include "moodcast/prompts.hpp"
#include "moodcast/providers.hpp"
#include "moodcast/script.hpp"
#include "moodcast/sentiment.hpp"

namespace moodcast {

struct PipelineConfig {
  int image_width = 832;  // 19.5:9 at multiples of 64
  int image_height = 384;
  int candidates_per_scene = 4;
  double restyle_strength = 0.6;
  int max_text_length = 1024;
  double temperature = 0.7;
};

/// The three campaign stages as orchestration over the providers and the
/// scoring primitives. Stage methods are const and safe to call
/// concurrently; the only internal state is the mood-energy cache.
class Pipeline {
 public:
  Pipeline(Providers providers, std::shared_ptr<const SentimentLexicon> lexicon,
           std::shared_ptr<const MoodPalette> palette, PipelineConfig config = {});

  const MoodPalette& palette() const noexcept { return *palette_; }
  const SentimentLexicon& lexicon() const noexcept { return *lexicon_; }
  const PipelineConfig& config() const noexcept { return config_; }

  // -- script stage --------------------------------------------------------

  /// prompt -> completion -> parse -> positivity -> durations -> uploads.
  /// Errors keep their type and gain a "script stage:" prefix.
  Script generate_script(const CampaignBrief& brief, bool with_mood) const;

  /// A new scene for position `index` aiming at `goal`; positivity is
  /// recomputed from the returned text. Neighbours are not touched. Throws
  /// NotFoundError for a bad index and ParseError for an unusable reply.
  Scene regenerate_scene(const Script& script, std::size_t index, std::string_view goal,
                         PositivityScore target_positivity) const;

  PositivityScore score_scene(const Scene& scene) const;

  // -- visual stage --------------------------------------------------------

  /// Caption for a user upload via the vision provider; never empty.
  std::string describe_upload(const ImageData& image) const;

  std::vector<StyleSuggestion> recommend_styles(std::string_view mood, double avg_positivity) const;
  ColorSuggestion recommend_colors(std::string_view mood) const;

  /// Renders four candidates per scene. Scenes bound to an upload get the
  /// restyled upload as primary plus three generated alternates. Without a
  /// style and colour the baseline "illustration of" prompt is used.
  /// Per-scene failures land in Scene::image_error.
  Script generate_scene_images(const Script& script, const std::optional<StyleSuggestion>& style,
                               const std::optional<ColorSuggestion>& color, std::uint64_t project_seed,
                               ImageStore& images) const;

  // -- music stage ---------------------------------------------------------

  /// Palette moods use their default energy; anything else asks the colour
  /// prompt once (or reuses `known`) and caches score / 100.
  double mood_energy(std::string_view mood, const ColorSuggestion* known = nullptr) const;

 private:
  Providers providers_;
  std::shared_ptr<const SentimentLexicon> lexicon_;
  std::shared_ptr<const MoodPalette> palette_;
  PipelineConfig config_;
  mutable std::mutex energy_mu_;
  mutable std::map<std::string, double> energy_cache_;
};

/// Greedy binding: all (upload, scene) pairs by descending Dice similarity of
/// descriptions, lowest upload then scene index on ties; each upload and each
/// scene used at most once. Bound scenes take the upload's description.
/// Throws ValidationError on an empty description or when uploads outnumber
/// scenes.
Script integrate_uploads(const Script& script, std::span<const Upload> uploads);

/// Nearest songs to (avg_positivity / 100, mood_energy) by Euclidean
/// distance; ties by ascending id. Returns min(k, catalog size) entries.
std::vector<SongEntry> recommend_songs(std::span<const SongEntry> catalog, double avg_positivity,
                                       double mood_energy, std::size_t k);

/// Descending popularity, ties by ascending id.
std::vector<SongEntry> rank_by_popularity(std::span<const SongEntry> catalog);

/// Baseline song choice: a seeded uniform pick.
const SongEntry& pick_random_song(std::span<const SongEntry> catalog, std::uint64_t seed);

/// Fills missing or out-of-range durations with kDefaultSceneSeconds,
/// recording a warning for each replaced value.
Script assign_durations(const Script& script);

/// scene index -> candidate index (0 = primary). Scenes without an entry use
/// their primary image.
using ImageSelections = std::map<int, int>;

/// Throws ValidationError listing every scene without an image or duration
/// and a missing song.
VideoManifest compose_manifest(const Script& script, const ImageSelections& selections,
                               const std::string& song_id);

double average_positivity(const Script& script);

}  // namespace moodcast
