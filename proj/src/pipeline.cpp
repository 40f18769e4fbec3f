#include "moodcast/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>
#include <tuple>

#include "moodcast/error.hpp"
#include "moodcast/similarity.hpp"
#include "moodcast/text.hpp"

namespace moodcast {
namespace {

// Re-throws the in-flight error as the same kind with a stage prefix.
[[noreturn]] void rethrow_in_stage(const std::string& stage) {
  try {
    throw;
  } catch (const ParseError& e) {
    throw ParseError(stage + ": " + e.what(), e.raw());
  } catch (const ProviderError& e) {
    const std::string msg = stage + ": " + e.what();
    switch (e.kind()) {
      case ErrorKind::Timeout: throw TimeoutError(msg, e.attempts());
      case ErrorKind::RateLimited: throw RateLimitError(msg, e.attempts());
      case ErrorKind::Upstream: throw UpstreamFormatError(msg, e.attempts());
      case ErrorKind::NoFixture: throw NoFixtureError(msg);
      default: throw TransportError(msg, e.attempts(), e.retryable());
    }
  } catch (const Error& e) {
    throw Error(e.kind(), stage + ": " + e.what());
  }
}

}  // namespace

Pipeline::Pipeline(Providers providers, std::shared_ptr<const SentimentLexicon> lexicon,
                   std::shared_ptr<const MoodPalette> palette, PipelineConfig config)
    : providers_(std::move(providers)),
      lexicon_(std::move(lexicon)),
      palette_(std::move(palette)),
      config_(config) {
  if (!providers_.text || !providers_.image || !providers_.vision) {
    throw ValidationError("pipeline needs text, image and vision providers");
  }
  if (!lexicon_ || lexicon_->empty()) throw ValidationError("pipeline needs a non-empty lexicon");
  if (!palette_) throw ValidationError("pipeline needs a mood palette");
}

PositivityScore Pipeline::score_scene(const Scene& scene) const {
  return positivity_score(scene.text, scene.image_description, *lexicon_);
}

std::string Pipeline::describe_upload(const ImageData& image) const {
  auto caption = trim(providers_.vision->describe_image({image}));
  if (caption.empty()) throw UpstreamFormatError("vision provider returned an empty caption");
  return caption;
}

Script Pipeline::generate_script(const CampaignBrief& brief, bool with_mood) const {
  validate(brief);
  try {
    const auto prompt = build_script_prompt(brief, with_mood);
    const auto raw = providers_.text->generate_text({prompt, config_.max_text_length, config_.temperature});
    Script script = parse_script(raw);
    script.brief = brief;
    script.with_mood = with_mood;
    for (auto& s : script.scenes) s.positivity = score_scene(s);
    script = assign_durations(script);
    if (!brief.uploads.empty()) script = integrate_uploads(script, brief.uploads);
    if (script.total_duration() > kMaxVideoSeconds) {
      script.warnings.push_back("script runs " + format_number(script.total_duration()) + " s, over the 45 s target");
    }
    return script;
  } catch (...) {
    rethrow_in_stage("script stage");
  }
}

Scene Pipeline::regenerate_scene(const Script& script, std::size_t index, std::string_view goal,
                                 PositivityScore target_positivity) const {
  if (index >= script.scenes.size()) {
    throw NotFoundError("scene index " + std::to_string(index) + " out of range (script has " +
                        std::to_string(script.scenes.size()) + " scenes)");
  }
  const auto prompt = build_scene_prompt(script, index, goal, target_positivity);
  std::string raw;
  try {
    raw = providers_.text->generate_text({prompt, config_.max_text_length, config_.temperature});
  } catch (...) {
    rethrow_in_stage("scene regeneration");
  }
  // Models sometimes drop the leading marker when asked for one scene.
  const bool marked = raw.find("***") != std::string::npos;
  Script parsed;
  try {
    parsed = parse_script(marked ? raw : "***" + raw);
  } catch (const ParseError& e) {
    throw ParseError(std::string("scene regeneration: ") + e.what(), raw);
  }
  const Scene& fresh = parsed.scenes.front();
  const Scene& old = script.scenes[index];
  Scene out = old;
  out.text = fresh.text.empty() ? old.text : fresh.text;
  out.image_description = fresh.image_description.empty() ? old.image_description : fresh.image_description;
  out.narrative_goal = trim(goal).empty() ? old.narrative_goal : trim(goal);
  if (fresh.duration_s && *fresh.duration_s > 0 && *fresh.duration_s <= kMaxSceneSeconds) {
    out.duration_s = fresh.duration_s;
  }
  out.upload_bound.reset();
  out.images.reset();
  out.image_error.reset();
  out.positivity = score_scene(out);
  return out;
}

std::vector<StyleSuggestion> Pipeline::recommend_styles(std::string_view mood, double avg_positivity) const {
  const auto prompt = build_style_prompt(mood, avg_positivity);
  try {
    const auto raw = providers_.text->generate_text({prompt, config_.max_text_length, config_.temperature});
    return parse_style_suggestions(raw);
  } catch (...) {
    rethrow_in_stage("style recommendation");
  }
}

ColorSuggestion Pipeline::recommend_colors(std::string_view mood) const {
  const auto prompt = build_color_prompt(mood);
  try {
    const auto raw = providers_.text->generate_text({prompt, config_.max_text_length, config_.temperature});
    return parse_color_suggestion(raw);
  } catch (...) {
    rethrow_in_stage("color recommendation");
  }
}

Script Pipeline::generate_scene_images(const Script& script, const std::optional<StyleSuggestion>& style,
                                       const std::optional<ColorSuggestion>& color, std::uint64_t project_seed,
                                       ImageStore& images) const {
  if (style.has_value() != color.has_value()) {
    throw ValidationError("image generation needs both a style and a color, or neither");
  }
  auto uploads = script.brief.uploads;
  auto find_upload = [&](const std::string& id) -> const Upload* {
    for (const auto& u : uploads) {
      if (u.id == id) return &u;
    }
    return nullptr;
  };

  auto render = [&](const Scene& scene) -> ImageSet {
    const auto prompt =
        style ? build_image_prompt(*style, *color, scene.image_description) : build_image_prompt(scene.image_description);
    const auto seed = mix_seed(project_seed, static_cast<std::uint64_t>(scene.index));
    const auto name = [&](int k) {
      return "images/scene-" + std::to_string(scene.index) + "-" + std::to_string(k) + ".png";
    };
    ImageSet set;
    set.prompt_used = prompt;
    const Upload* upload = scene.upload_bound ? find_upload(*scene.upload_bound) : nullptr;
    if (upload) {
      const auto source = images.get(upload->image);
      const auto restyled = providers_.image->restyle_image({source, prompt, config_.restyle_strength, seed});
      const auto alts = providers_.image->generate_images(
          {prompt, config_.image_width, config_.image_height, config_.candidates_per_scene - 1, seed});
      set.primary = images.put(name(0), restyled);
      for (std::size_t k = 0; k < alts.size(); ++k) set.alternates.push_back(images.put(name(static_cast<int>(k) + 1), alts[k]));
      set.restyled = true;
    } else {
      const auto all = providers_.image->generate_images(
          {prompt, config_.image_width, config_.image_height, config_.candidates_per_scene, seed});
      set.primary = images.put(name(0), all.front());
      for (std::size_t k = 1; k < all.size(); ++k) set.alternates.push_back(images.put(name(static_cast<int>(k)), all[k]));
    }
    return set;
  };

  std::vector<std::future<ImageSet>> jobs;
  jobs.reserve(script.scenes.size());
  for (const auto& scene : script.scenes) {
    jobs.push_back(std::async(std::launch::async, render, std::cref(scene)));
  }
  Script out = script;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    try {
      out.scenes[i].images = jobs[i].get();
      out.scenes[i].image_error.reset();
    } catch (const std::exception& e) {
      out.scenes[i].image_error = e.what();
    }
  }
  return out;
}

double Pipeline::mood_energy(std::string_view mood, const ColorSuggestion* known) const {
  if (trim(mood).empty()) throw ValidationError("mood energy needs a mood");
  if (const auto* m = palette_->find(mood)) return m->default_energy;
  const auto key = to_lower(trim(mood));
  {
    std::lock_guard lock(energy_mu_);
    if (auto it = energy_cache_.find(key); it != energy_cache_.end()) return it->second;
  }
  const double energy = (known ? known->energy_score : recommend_colors(mood).energy_score) / 100.0;
  std::lock_guard lock(energy_mu_);
  energy_cache_.emplace(key, energy);
  return energy;
}

Script integrate_uploads(const Script& script, std::span<const Upload> uploads) {
  for (const auto& u : uploads) {
    if (trim(u.description).empty()) throw ValidationError("upload '" + u.id + "' has an empty description");
  }
  Script out = script;
  for (auto& s : out.scenes) s.upload_bound.reset();
  if (uploads.empty()) return out;

  struct Pair {
    double score;
    std::size_t upload, scene;
  };
  std::vector<Pair> pairs;
  pairs.reserve(uploads.size() * out.scenes.size());
  for (std::size_t u = 0; u < uploads.size(); ++u) {
    for (std::size_t s = 0; s < out.scenes.size(); ++s) {
      pairs.push_back({dice_similarity(uploads[u].description, out.scenes[s].image_description), u, s});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    return std::tie(b.score, a.upload, a.scene) < std::tie(a.score, b.upload, b.scene);
  });
  std::vector<bool> upload_done(uploads.size()), scene_done(out.scenes.size());
  for (const auto& p : pairs) {
    if (upload_done[p.upload] || scene_done[p.scene]) continue;
    upload_done[p.upload] = scene_done[p.scene] = true;
    auto& scene = out.scenes[p.scene];
    scene.image_description = uploads[p.upload].description;
    scene.upload_bound = uploads[p.upload].id;
  }
  std::string unplaced;
  for (std::size_t u = 0; u < uploads.size(); ++u) {
    if (!upload_done[u]) unplaced += (unplaced.empty() ? "" : ", ") + uploads[u].id;
  }
  if (!unplaced.empty()) {
    throw ValidationError("more uploads than scenes (" + std::to_string(uploads.size()) + " > " +
                          std::to_string(out.scenes.size()) + "); unplaced uploads: " + unplaced);
  }
  return out;
}

std::vector<SongEntry> recommend_songs(std::span<const SongEntry> catalog, double avg_positivity, double mood_energy,
                                       std::size_t k) {
  if (catalog.empty()) throw ValidationError("song catalog is empty");
  if (k < 1) throw ValidationError("k must be at least 1");
  if (!(avg_positivity >= 0.0 && avg_positivity <= 100.0)) throw ValidationError("average positivity outside [0,100]");
  if (!(mood_energy >= 0.0 && mood_energy <= 1.0)) throw ValidationError("mood energy outside [0,1]");
  const double tv = avg_positivity / 100.0;
  const double te = mood_energy;
  struct Ranked {
    double distance;
    const SongEntry* song;
  };
  std::vector<Ranked> ranked;
  ranked.reserve(catalog.size());
  for (const auto& s : catalog) {
    const double dv = s.valence - tv;
    const double de = s.energy - te;
    ranked.push_back({std::sqrt(dv * dv + de * de), &s});
  }
  const auto n = std::min(k, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(n), ranked.end(),
                    [](const Ranked& a, const Ranked& b) {
                      if (a.distance != b.distance) return a.distance < b.distance;
                      return a.song->id < b.song->id;
                    });
  std::vector<SongEntry> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(*ranked[i].song);
  return out;
}

std::vector<SongEntry> rank_by_popularity(std::span<const SongEntry> catalog) {
  std::vector<SongEntry> out(catalog.begin(), catalog.end());
  std::sort(out.begin(), out.end(), [](const SongEntry& a, const SongEntry& b) {
    if (a.popularity != b.popularity) return a.popularity > b.popularity;
    return a.id < b.id;
  });
  return out;
}

const SongEntry& pick_random_song(std::span<const SongEntry> catalog, std::uint64_t seed) {
  if (catalog.empty()) throw ValidationError("song catalog is empty");
  return catalog[mix_seed(seed, 0x5eed) % catalog.size()];
}

Script assign_durations(const Script& script) {
  Script out = script;
  for (auto& s : out.scenes) {
    if (!s.duration_s) {
      s.duration_s = kDefaultSceneSeconds;
    } else if (!(*s.duration_s > 0.0 && *s.duration_s <= kMaxSceneSeconds)) {
      out.warnings.push_back("scene " + std::to_string(s.index) + ": duration " + format_number(*s.duration_s) +
                             " s replaced by the " + format_number(kDefaultSceneSeconds) + " s default");
      s.duration_s = kDefaultSceneSeconds;
    }
  }
  return out;
}

VideoManifest compose_manifest(const Script& script, const ImageSelections& selections, const std::string& song_id) {
  std::vector<std::string> gaps;
  VideoManifest m;
  for (const auto& s : script.scenes) {
    const auto where = "scene " + std::to_string(s.index);
    if (!s.images) {
      gaps.push_back(where + " has no image");
      continue;
    }
    const auto candidates = s.images->candidates();
    int pick = 0;
    if (auto it = selections.find(s.index); it != selections.end()) pick = it->second;
    if (pick < 0 || static_cast<std::size_t>(pick) >= candidates.size()) {
      gaps.push_back(where + " selects missing candidate " + std::to_string(pick));
      continue;
    }
    if (!s.duration_s) {
      gaps.push_back(where + " has no duration");
      continue;
    }
    m.scenes.push_back({candidates[static_cast<std::size_t>(pick)], s.text, *s.duration_s, s.positivity.value()});
    m.total_duration_s += *s.duration_s;
  }
  if (script.scenes.empty()) gaps.emplace_back("script has no scenes");
  if (song_id.empty()) gaps.emplace_back("no song selected");
  if (!gaps.empty()) {
    std::string msg = "cannot compose manifest:";
    for (const auto& g : gaps) msg += " " + g + ";";
    msg.pop_back();
    throw ValidationError(msg);
  }
  m.song_id = song_id;
  m.over_length = m.total_duration_s > kMaxVideoSeconds;
  return m;
}

double average_positivity(const Script& script) {
  std::vector<PositivityScore> scores;
  scores.reserve(script.scenes.size());
  for (const auto& s : script.scenes) scores.push_back(s.positivity);
  return average_positivity(std::span<const PositivityScore>(scores));
}

}  // namespace moodcast
