#include "moodcast/script.hpp"

#include <nlohmann/json.hpp>

#include "moodcast/error.hpp"
#include "moodcast/text.hpp"

namespace moodcast {

using nlohmann::json;

void validate(const CampaignBrief& brief) {
  if (trim(brief.audience).empty()) throw ValidationError("brief audience is empty");
  if (trim(brief.problem).empty()) throw ValidationError("brief problem is empty");
  if (trim(brief.action).empty()) throw ValidationError("brief action is empty");
  if (trim(brief.mood).empty()) throw ValidationError("brief mood is empty");
}

std::vector<std::string> ImageSet::candidates() const {
  std::vector<std::string> out;
  out.reserve(1 + alternates.size());
  out.push_back(primary);
  out.insert(out.end(), alternates.begin(), alternates.end());
  return out;
}

double Script::total_duration() const {
  double total = 0;
  for (const auto& s : scenes) total += s.duration_s.value_or(0.0);
  return total;
}

json to_json(const Upload& u) {
  return {{"id", u.id}, {"image", u.image}, {"description", u.description}};
}

json to_json(const CampaignBrief& b) {
  json uploads = json::array();
  for (const auto& u : b.uploads) uploads.push_back(to_json(u));
  return {{"audience", b.audience}, {"problem", b.problem}, {"action", b.action}, {"mood", b.mood}, {"uploads", uploads}};
}

json to_json(const ImageSet& s) {
  return {{"primary", s.primary}, {"alternates", s.alternates}, {"prompt_used", s.prompt_used}, {"restyled", s.restyled}};
}

json to_json(const Scene& s) {
  json j = {{"index", s.index},
            {"text", s.text},
            {"image_description", s.image_description},
            {"narrative_goal", s.narrative_goal},
            {"positivity", s.positivity.value()},
            {"duration_s", s.duration_s ? json(*s.duration_s) : json(nullptr)},
            {"upload_bound", s.upload_bound ? json(*s.upload_bound) : json(nullptr)},
            {"images", s.images ? to_json(*s.images) : json(nullptr)}};
  if (s.image_error) j["image_error"] = *s.image_error;
  return j;
}

json to_json(const Script& s) {
  json scenes = json::array();
  for (const auto& sc : s.scenes) scenes.push_back(to_json(sc));
  return {{"scenes", scenes}, {"brief", to_json(s.brief)}, {"with_mood", s.with_mood}, {"warnings", s.warnings}};
}

json to_json(const StyleSuggestion& s) {
  return {{"word", s.word}, {"style", s.style}, {"explanation", s.explanation}};
}

json to_json(const ColorSuggestion& c) {
  return {{"energy_score", c.energy_score}, {"color_description", c.color_description}};
}

json to_json(const VideoManifest& m) {
  json scenes = json::array();
  for (const auto& s : m.scenes) {
    scenes.push_back({{"image", s.image},
                      {"overlay_text", s.overlay_text},
                      {"duration_s", s.duration_s},
                      {"positivity", s.positivity}});
  }
  return {{"scenes", scenes},
          {"song_id", m.song_id},
          {"aspect_ratio", m.aspect_ratio},
          {"total_duration_s", m.total_duration_s},
          {"over_length", m.over_length}};
}

namespace {

template <typename Fn>
auto guarded(const char* what, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw ValidationError(std::string(what) + ": " + e.what());
  }
}

std::optional<std::string> opt_string(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<std::string>();
}

}  // namespace

Upload upload_from_json(const json& j) {
  return guarded("upload", [&] {
    return Upload{j.value("id", std::string()), j.value("image", std::string()), j.value("description", std::string())};
  });
}

CampaignBrief brief_from_json(const json& j) {
  return guarded("brief", [&] {
    CampaignBrief b;
    b.audience = j.at("audience").get<std::string>();
    b.problem = j.at("problem").get<std::string>();
    b.action = j.at("action").get<std::string>();
    b.mood = j.at("mood").get<std::string>();
    if (j.contains("uploads")) {
      for (const auto& u : j.at("uploads")) b.uploads.push_back(upload_from_json(u));
    }
    return b;
  });
}

ImageSet image_set_from_json(const json& j) {
  return guarded("image set", [&] {
    ImageSet s;
    s.primary = j.at("primary").get<std::string>();
    s.alternates = j.at("alternates").get<std::vector<std::string>>();
    s.prompt_used = j.value("prompt_used", std::string());
    s.restyled = j.value("restyled", false);
    return s;
  });
}

Scene scene_from_json(const json& j) {
  return guarded("scene", [&] {
    Scene s;
    s.index = j.at("index").get<int>();
    s.text = j.value("text", std::string());
    s.image_description = j.value("image_description", std::string());
    s.narrative_goal = j.value("narrative_goal", std::string());
    s.positivity = PositivityScore(j.value("positivity", 50));
    if (j.contains("duration_s") && !j.at("duration_s").is_null()) s.duration_s = j.at("duration_s").get<double>();
    s.upload_bound = opt_string(j, "upload_bound");
    if (j.contains("images") && !j.at("images").is_null()) s.images = image_set_from_json(j.at("images"));
    s.image_error = opt_string(j, "image_error");
    return s;
  });
}

Script script_from_json(const json& j) {
  return guarded("script", [&] {
    Script s;
    for (const auto& sc : j.at("scenes")) s.scenes.push_back(scene_from_json(sc));
    s.brief = brief_from_json(j.at("brief"));
    s.with_mood = j.value("with_mood", true);
    s.warnings = j.value("warnings", std::vector<std::string>{});
    return s;
  });
}

StyleSuggestion style_from_json(const json& j) {
  return guarded("style", [&] {
    StyleSuggestion s{j.at("word").get<std::string>(), j.at("style").get<std::string>(),
                      j.value("explanation", std::string())};
    if (trim(s.word).empty() || trim(s.style).empty()) throw ValidationError("style suggestion has empty fields");
    return s;
  });
}

ColorSuggestion color_from_json(const json& j) {
  return guarded("color", [&] {
    ColorSuggestion c{j.at("energy_score").get<int>(), j.at("color_description").get<std::string>()};
    if (c.energy_score < 0 || c.energy_score > 100) throw ValidationError("color energy_score outside [0,100]");
    return c;
  });
}

VideoManifest manifest_from_json(const json& j) {
  return guarded("manifest", [&] {
    VideoManifest m;
    for (const auto& s : j.at("scenes")) {
      m.scenes.push_back({s.at("image").get<std::string>(), s.at("overlay_text").get<std::string>(),
                          s.at("duration_s").get<double>(), s.at("positivity").get<int>()});
    }
    m.song_id = j.at("song_id").get<std::string>();
    m.aspect_ratio = j.at("aspect_ratio").get<std::string>();
    m.total_duration_s = j.at("total_duration_s").get<double>();
    m.over_length = j.value("over_length", false);
    return m;
  });
}

}  // namespace moodcast
