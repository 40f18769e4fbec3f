#include "moodcast/prompts.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>

#include "moodcast/error.hpp"
#include "moodcast/text.hpp"

namespace moodcast {
namespace {

std::string field(std::string_view s) {
  auto t = trim(s);
  while (!t.empty() && (t.back() == '.' || t.back() == ';')) t.pop_back();
  return trim(t);
}

constexpr std::string_view kNarrativeArc =
    "The video should follow a narrative arc, and the narrative goal (for example: Introduction, fostering "
    "connection, inspiring action...) of each section should be labeled in under three words. ";
constexpr std::string_view kScriptFormat =
    "Follow this format, and make sure to start every section with *** - VISUAL DESCRIPTION: [description of "
    "the imagery on screen] TEXT: [text on screen] DURATION: [approximate time of this scene] EMOTIONAL GOAL: "
    "[Emotional goal]. This video will be made for social media and should be under 45 seconds.";

}  // namespace

std::string build_script_prompt(const CampaignBrief& brief, bool with_mood) {
  validate(brief);
  std::string p = "I am making a PSA informing " + field(brief.audience) + " about the problem that " +
                  field(brief.problem) + ". Additionally, I want to inform them that this problem can be addressed when " +
                  field(brief.action) + ". ";
  if (with_mood) {
    p += "Please provide an example description of such a video, making sure to follow key emotional beats that are " +
         field(brief.mood) + ". ";
  } else {
    p += "Please provide an example description of such a video. ";
  }
  p += kNarrativeArc;
  p += kScriptFormat;
  return p;
}

std::string build_scene_prompt(const Script& script, std::size_t index, std::string_view goal,
                               PositivityScore target_positivity) {
  if (index >= script.scenes.size()) throw NotFoundError("scene index " + std::to_string(index) + " out of range");
  const auto& scene = script.scenes[index];
  std::string p = "Using this script as context: " + trim(serialize_script(script)) + ", can you replace SCENE " +
                  std::to_string(index + 1) + " (TEXT: " + scene.text + " IMAGE DESCRIPTION: " +
                  scene.image_description + ") with a scene that achieves the goal of " + field(goal) + "? ";
  const auto word = std::string(positivity_to_word(target_positivity.value()));
  if (script.with_mood) {
    p += "It should generally have a " + field(script.brief.mood) + " mood that is also " + word + ". ";
  } else {
    p += "It should generally be " + word + ". ";
  }
  p += "Make sure the text makes sense in the context of the text in the scenes before and after. "
       "Also, make sure to follow the format of the other parts of the script: "
       "***TEXT: [onscreen text] IMAGE DESCRIPTION: [image description]. "
       "Only return the information for this one scene.";
  return p;
}

std::string build_style_prompt(std::string_view mood, double avg_positivity) {
  if (trim(mood).empty()) throw ValidationError("style prompt needs a mood");
  if (!(avg_positivity >= 0.0 && avg_positivity <= 100.0)) throw ValidationError("average positivity outside [0,100]");
  return "What are words I could use to describe a " + field(mood) + " mood that is also " +
         std::string(positivity_to_word(avg_positivity)) +
         "? For each word, can you provide an art style, movement, or illustration style that is generally "
         "representative of that word? You don't have to use traditional movements - feel free to be inspired by "
         "children's storybook styles, animated styles, styles from advertisements, architecture, and more. Start "
         "each item of the list with * and follow this format * Word: Style | Explanation. For example, entries "
         "could be\n"
         "* Uplifting: Minimalist Scandinavian Design | typically uses clean lines, neutral color palettes, and "
         "natural elements to create a positive and cozy environment that inspires wellness and simplicity\n"
         "*Exciting: Action Comic Book illustration in the style of Marvel | this style uses bold and sharp lines, "
         "colors, and visual effects to display dynamic action-packed scenes.\n"
         "Please provide three entries and keep the description under 20 words.";
}

std::string build_color_prompt(std::string_view mood) {
  if (trim(mood).empty()) throw ValidationError("color prompt needs a mood");
  return "On a scale of 0-100, 0 meaning \"completely calm\" to 100 meaning \"very excited,\", rank this mood: " +
         field(mood) +
         ". Then, using this assessment, provide a description of colors that could accurately capture this mood. "
         "For example, for \"completely calm\", you could say \"very muted colors\". For \"very excited\", you "
         "could say \"very vibrant and saturated colors\". Please keep this color description under six words. "
         "Format your response like this: SCORE: [rank from 0-100] COLOR DESCRIPTION: [color description]";
}

std::string build_image_prompt(const StyleSuggestion& style, const ColorSuggestion& color,
                               std::string_view image_description) {
  if (trim(style.style).empty()) throw ValidationError("image prompt needs an art style");
  if (trim(color.color_description).empty()) throw ValidationError("image prompt needs a color description");
  if (trim(image_description).empty()) throw ValidationError("image prompt needs an image description");
  return trim(style.style) + " " + trim(color.color_description) + " illustration of " + trim(image_description);
}

std::string build_image_prompt(std::string_view image_description) {
  if (trim(image_description).empty()) throw ValidationError("image prompt needs an image description");
  return "illustration of " + trim(image_description);
}

// ---------------------------------------------------------------------------
// Script grammar

namespace {

enum class Field { Description, Text, Duration, Goal };

struct Label {
  std::string_view name;
  Field field;
};

// Longer labels first so "IMAGE DESCRIPTION" is not read as a bare label.
constexpr std::array<Label, 8> kLabels = {{
    {"VISUAL DESCRIPTION", Field::Description},
    {"IMAGE DESCRIPTION", Field::Description},
    {"EMOTIONAL GOAL", Field::Goal},
    {"NARRATIVE GOAL", Field::Goal},
    {"ON-SCREEN TEXT", Field::Text},
    {"ONSCREEN TEXT", Field::Text},
    {"DURATION", Field::Duration},
    {"TEXT", Field::Text},
}};

struct Hit {
  std::size_t start;        // label start
  std::size_t value_start;  // first byte after the colon
  Field field;
};

bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

std::optional<Hit> label_at(std::string_view s, std::size_t i) {
  if (i > 0 && (is_alpha(s[i - 1]) || s[i - 1] == '-')) return std::nullopt;
  for (const auto& l : kLabels) {
    if (i + l.name.size() > s.size() || !iequals(s.substr(i, l.name.size()), l.name)) continue;
    std::size_t j = i + l.name.size();
    while (j < s.size() && (s[j] == '*' || s[j] == ' ' || s[j] == '\t')) ++j;
    if (j >= s.size() || s[j] != ':') continue;
    ++j;
    while (j < s.size() && s[j] == '*') ++j;
    return Hit{i, j, l.field};
  }
  return std::nullopt;
}

std::string clean_value(std::string_view v, bool single_line) {
  if (auto blank = v.find("\n\n"); blank != std::string_view::npos) v = v.substr(0, blank);
  if (single_line) {
    if (auto nl = v.find('\n'); nl != std::string_view::npos) v = v.substr(0, nl);
  }
  auto t = trim(v);
  // Bold markers left over from labels such as "**TEXT:**".
  while (!t.empty() && t.back() == '*') t.pop_back();
  while (!t.empty() && t.front() == '*') t.erase(t.begin());
  t = trim(t);
  if (t.size() >= 2 && ((t.front() == '"' && t.back() == '"') || (t.front() == '\'' && t.back() == '\''))) {
    t = trim(std::string_view(t).substr(1, t.size() - 2));
  }
  return t;
}

struct RawScene {
  std::optional<std::string> description, text, duration, goal;
};

RawScene read_section(std::string_view section) {
  std::vector<Hit> hits;
  for (std::size_t i = 0; i < section.size(); ++i) {
    if (auto h = label_at(section, i)) {
      hits.push_back(*h);
      i = h->value_start - 1;
    }
  }
  RawScene out;
  for (std::size_t k = 0; k < hits.size(); ++k) {
    const auto end = k + 1 < hits.size() ? hits[k + 1].start : section.size();
    const auto value = section.substr(hits[k].value_start, end - hits[k].value_start);
    switch (hits[k].field) {
      case Field::Description:
        if (!out.description) out.description = clean_value(value, false);
        break;
      case Field::Text:
        if (!out.text) out.text = clean_value(value, false);
        break;
      case Field::Duration:
        if (!out.duration) out.duration = clean_value(value, true);
        break;
      case Field::Goal:
        if (!out.goal) {
          auto g = clean_value(value, true);
          while (!g.empty() && g.back() == '.') g.pop_back();
          out.goal = trim(g);
        }
        break;
    }
  }
  return out;
}

}  // namespace

std::optional<double> parse_duration(std::string_view text) {
  const auto t = to_lower(text);
  // mm:ss
  for (std::size_t i = 0; i + 2 < t.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(t[i])) && t[i + 1] == ':' &&
        std::isdigit(static_cast<unsigned char>(t[i + 2]))) {
      std::size_t b = i;
      while (b > 0 && std::isdigit(static_cast<unsigned char>(t[b - 1]))) --b;
      int minutes = 0, seconds = 0;
      std::from_chars(t.data() + b, t.data() + i + 1, minutes);
      std::from_chars(t.data() + i + 2, t.data() + t.size(), seconds);
      return minutes * 60.0 + seconds;
    }
  }
  auto read_number = [&](std::size_t from, double& v, std::size_t& end) -> bool {
    std::size_t i = from;
    while (i < t.size() && !(std::isdigit(static_cast<unsigned char>(t[i])) ||
                             (t[i] == '-' && i + 1 < t.size() && std::isdigit(static_cast<unsigned char>(t[i + 1]))) ||
                             (t[i] == '.' && i + 1 < t.size() && std::isdigit(static_cast<unsigned char>(t[i + 1]))))) {
      ++i;
    }
    if (i >= t.size()) return false;
    auto [ptr, ec] = std::from_chars(t.data() + i, t.data() + t.size(), v);
    if (ec != std::errc{}) return false;
    end = static_cast<std::size_t>(ptr - t.data());
    return true;
  };
  double first = 0;
  std::size_t end = 0;
  if (!read_number(0, first, end)) return std::nullopt;
  double value = first;
  // Range such as "3-5 seconds" or "3 to 5 seconds".
  std::size_t k = end;
  while (k < t.size() && t[k] == ' ') ++k;
  if (k < t.size() && (t[k] == '-' || t.compare(k, 2, "to") == 0)) {
    k += t[k] == '-' ? 1 : 2;
    while (k < t.size() && t[k] == ' ') ++k;
    double second = 0;
    std::size_t end2 = 0;
    if (k < t.size() && std::isdigit(static_cast<unsigned char>(t[k])) && read_number(k, second, end2)) {
      value = (first + second) / 2.0;
      end = end2;
    }
  }
  const auto unit = trim(std::string_view(t).substr(end));
  if (unit.starts_with("min")) value *= 60.0;
  return value;
}

Script parse_script(std::string_view raw) {
  std::vector<std::size_t> marks;  // start of each section body
  for (std::size_t i = 0; i + 2 < raw.size();) {
    if (raw[i] == '*' && raw[i + 1] == '*' && raw[i + 2] == '*') {
      std::size_t j = i;
      while (j < raw.size() && raw[j] == '*') ++j;
      marks.push_back(j);
      i = j;
    } else {
      ++i;
    }
  }
  if (marks.empty()) throw ParseError("script has no *** section markers", std::string(raw));
  Script script;
  for (std::size_t m = 0; m < marks.size(); ++m) {
    std::size_t end = raw.size();
    if (m + 1 < marks.size()) {
      end = marks[m + 1];
      while (end > marks[m] && raw[end - 1] == '*') --end;
    }
    const auto parsed = read_section(raw.substr(marks[m], end - marks[m]));
    const bool has_text = parsed.text && !parsed.text->empty();
    const bool has_desc = parsed.description && !parsed.description->empty();
    if (!has_text && !has_desc) continue;
    Scene s;
    s.index = static_cast<int>(script.scenes.size());
    s.text = parsed.text.value_or("");
    s.image_description = parsed.description.value_or("");
    s.narrative_goal = parsed.goal.value_or("");
    if (parsed.duration) s.duration_s = parse_duration(*parsed.duration);
    script.scenes.push_back(std::move(s));
  }
  if (script.scenes.empty()) throw ParseError("script has no parseable scenes", std::string(raw));
  return script;
}

std::string serialize_script(const Script& script, LabelGrammar grammar) {
  std::string out;
  for (const auto& s : script.scenes) {
    if (grammar == LabelGrammar::TextFirst) {
      out += "***TEXT: " + s.text + " IMAGE DESCRIPTION: " + s.image_description + "\n";
      continue;
    }
    out += "***VISUAL DESCRIPTION: " + s.image_description + " TEXT: " + s.text;
    if (s.duration_s) out += " DURATION: " + format_number(*s.duration_s) + " seconds";
    if (!s.narrative_goal.empty()) out += " EMOTIONAL GOAL: " + s.narrative_goal;
    out += "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Art recommendations

std::vector<StyleSuggestion> parse_style_suggestions(std::string_view raw) {
  std::vector<StyleSuggestion> out;
  std::size_t pos = 0;
  while (pos < raw.size() && out.size() < 3) {
    auto nl = raw.find('\n', pos);
    if (nl == std::string_view::npos) nl = raw.size();
    auto line = trim(raw.substr(pos, nl - pos));
    pos = nl + 1;
    if (line.empty() || line.front() != '*') continue;
    std::string body;
    for (char c : line) {
      if (c != '*') body += c;
    }
    const auto colon = body.find(':');
    const auto bar = body.find('|');
    if (colon == std::string::npos || bar == std::string::npos || bar < colon) continue;
    StyleSuggestion s;
    s.word = trim(std::string_view(body).substr(0, colon));
    s.style = trim(std::string_view(body).substr(colon + 1, bar - colon - 1));
    s.explanation = truncate_words(std::string_view(body).substr(bar + 1), 20);
    if (s.word.empty() || s.style.empty() || s.explanation.empty()) continue;
    out.push_back(std::move(s));
  }
  if (out.size() < 3) {
    throw ParseError("expected three \"* Word: Style | Explanation\" entries, found " + std::to_string(out.size()),
                     std::string(raw));
  }
  return out;
}

ColorSuggestion parse_color_suggestion(std::string_view raw) {
  const auto upper = [&] {
    std::string u(raw);
    for (auto& c : u) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return u;
  }();
  const auto score_at = upper.find("SCORE:");
  const auto color_at = upper.find("COLOR DESCRIPTION:");
  if (score_at == std::string::npos) throw ParseError("color response has no SCORE field", std::string(raw));
  if (color_at == std::string::npos) {
    throw ParseError("color response has no COLOR DESCRIPTION field", std::string(raw));
  }
  std::size_t i = score_at + 6;
  while (i < raw.size() && (raw[i] == ' ' || raw[i] == '*')) ++i;
  int score = 0;
  auto [ptr, ec] = std::from_chars(raw.data() + i, raw.data() + raw.size(), score);
  if (ec == std::errc::result_out_of_range) throw RangeError("color SCORE is out of range");
  if (ec != std::errc{}) throw ParseError("color SCORE is not an integer", std::string(raw));
  if (score < 0 || score > 100) throw RangeError("color SCORE " + std::to_string(score) + " outside [0,100]");
  auto desc_view = raw.substr(color_at + 18);
  if (auto nl = desc_view.find('\n'); nl != std::string_view::npos) desc_view = desc_view.substr(0, nl);
  auto desc = clean_value(desc_view, true);
  while (!desc.empty() && desc.back() == '.') desc.pop_back();
  desc = trim(desc);
  if (desc.size() >= 2 && desc.front() == '"' && desc.back() == '"') desc = desc.substr(1, desc.size() - 2);
  if (desc.empty()) throw ParseError("color description is empty", std::string(raw));
  return {score, truncate_words(desc, 6)};
}

}  // namespace moodcast
