#include "moodcast/mood.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "moodcast/error.hpp"
#include "moodcast/text.hpp"

namespace moodcast {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Validation: return "validation";
    case ErrorKind::NotFound: return "not_found";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Range: return "range";
    case ErrorKind::Conflict: return "conflict";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Timeout: return "timeout";
    case ErrorKind::RateLimited: return "rate_limited";
    case ErrorKind::Transport: return "transport";
    case ErrorKind::Upstream: return "upstream";
    case ErrorKind::NoFixture: return "no_fixture";
    case ErrorKind::Decode: return "decode";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

const char* to_string(Valence v) noexcept {
  switch (v) {
    case Valence::Negative: return "negative";
    case Valence::Neutral: return "neutral";
    case Valence::Positive: return "positive";
  }
  return "neutral";
}

const char* to_string(Arousal a) noexcept {
  switch (a) {
    case Arousal::Low: return "low";
    case Arousal::Neutral: return "neutral";
    case Arousal::High: return "high";
  }
  return "neutral";
}

Valence valence_from_string(std::string_view s) {
  const auto v = to_lower(s);
  if (v == "negative") return Valence::Negative;
  if (v == "neutral") return Valence::Neutral;
  if (v == "positive") return Valence::Positive;
  throw ValidationError("unknown valence class '" + std::string(s) + "'");
}

Arousal arousal_from_string(std::string_view s) {
  const auto v = to_lower(s);
  if (v == "low") return Arousal::Low;
  if (v == "neutral") return Arousal::Neutral;
  if (v == "high") return Arousal::High;
  throw ValidationError("unknown arousal class '" + std::string(s) + "'");
}

const char* to_string(MatchKind k) noexcept {
  switch (k) {
    case MatchKind::Exact: return "exact";
    case MatchKind::ValenceMatch: return "valence";
    case MatchKind::ArousalMatch: return "arousal";
    case MatchKind::NoMatch: return "none";
    case MatchKind::Unclear: return "unclear";
  }
  return "none";
}

MoodPalette::MoodPalette(std::vector<MoodSpec> moods) : moods_(std::move(moods)) {
  std::set<std::string> seen;
  for (auto& m : moods_) {
    m.name = trim(m.name);
    if (m.name.empty()) throw ValidationError("palette mood with empty name");
    const auto key = to_lower(m.name);
    if (key == kUnclearLabel) throw ValidationError("\"unclear\" is reserved and cannot be a mood");
    if (!seen.insert(key).second) throw ValidationError("duplicate palette mood '" + m.name + "'");
    if (!(m.default_energy >= 0.0 && m.default_energy <= 1.0)) {
      throw ValidationError("mood '" + m.name + "' default_energy outside [0,1]");
    }
  }
}

MoodPalette MoodPalette::defaults() {
  // Reconstructed from the study's figure; also shipped as data/palette.json.
  return MoodPalette({
      {"angry", Valence::Negative, Arousal::High, 0.90},
      {"frustrated", Valence::Negative, Arousal::Neutral, 0.55},
      {"depressed", Valence::Negative, Arousal::Low, 0.10},
      {"tired", Valence::Neutral, Arousal::Low, 0.20},
      {"calm", Valence::Positive, Arousal::Low, 0.15},
      {"contented", Valence::Positive, Arousal::Neutral, 0.45},
      {"delighted", Valence::Positive, Arousal::High, 0.80},
      {"excited", Valence::Neutral, Arousal::High, 0.95},
  });
}

MoodPalette MoodPalette::from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw ValidationError("palette must be a JSON array");
  std::vector<MoodSpec> moods;
  for (const auto& e : j) {
    try {
      MoodSpec m;
      m.name = e.at("name").get<std::string>();
      m.valence = valence_from_string(e.at("valence_class").get<std::string>());
      m.arousal = arousal_from_string(e.at("arousal_class").get<std::string>());
      m.default_energy = e.at("default_energy").get<double>();
      moods.push_back(std::move(m));
    } catch (const nlohmann::json::exception& ex) {
      throw ValidationError("palette entry " + std::to_string(moods.size()) + ": " + ex.what());
    }
  }
  return MoodPalette(std::move(moods));
}

MoodPalette MoodPalette::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw NotFoundError("palette file not found: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("palette is not valid JSON: ") + ex.what(), {});
  }
  return from_json(j);
}

nlohmann::json MoodPalette::to_json() const {
  auto out = nlohmann::json::array();
  for (const auto& m : moods_) {
    out.push_back({{"name", m.name},
                   {"valence_class", to_string(m.valence)},
                   {"arousal_class", to_string(m.arousal)},
                   {"default_energy", m.default_energy}});
  }
  return out;
}

const MoodSpec* MoodPalette::find(std::string_view name) const noexcept {
  const auto key = to_lower(trim(name));
  auto it = std::find_if(moods_.begin(), moods_.end(),
                         [&](const MoodSpec& m) { return to_lower(m.name) == key; });
  return it == moods_.end() ? nullptr : &*it;
}

const MoodSpec& MoodPalette::at(std::string_view name) const {
  if (const auto* m = find(name)) return *m;
  throw NotFoundError("mood '" + std::string(name) + "' is not in the palette");
}

bool MoodPalette::is_label(std::string_view label) const noexcept {
  return to_lower(trim(label)) == kUnclearLabel || find(label) != nullptr;
}

MatchKind classify_match(const MoodSpec& target, std::string_view observed_label,
                         const MoodPalette& palette) {
  if (to_lower(trim(observed_label)) == kUnclearLabel) return MatchKind::Unclear;
  const MoodSpec& observed = palette.at(observed_label);
  if (to_lower(observed.name) == to_lower(target.name)) return MatchKind::Exact;
  if (observed.valence == target.valence) return MatchKind::ValenceMatch;
  if (observed.arousal == target.arousal) return MatchKind::ArousalMatch;
  return MatchKind::NoMatch;
}

}  // namespace moodcast
