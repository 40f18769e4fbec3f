#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "moodcast/script.hpp"

namespace moodcast {

// Prompt builders. The with-mood family names the target mood; the
// without-mood family is the evaluation baseline with every mood clause
// removed.

/// Throws ValidationError for an invalid brief.
std::string build_script_prompt(const CampaignBrief& brief, bool with_mood);

/// Asks for a single replacement scene in the TEXT / IMAGE DESCRIPTION form,
/// with the whole script as context. `index` is zero-based; the prompt counts
/// scenes from one.
std::string build_scene_prompt(const Script& script, std::size_t index, std::string_view goal,
                               PositivityScore target_positivity);

std::string build_style_prompt(std::string_view mood, double avg_positivity);
std::string build_color_prompt(std::string_view mood);

/// "<style> <colors> illustration of <description>". Throws ValidationError
/// on any empty part.
std::string build_image_prompt(const StyleSuggestion& style, const ColorSuggestion& color,
                               std::string_view image_description);
/// Baseline form without style or colour: "illustration of <description>".
std::string build_image_prompt(std::string_view image_description);

enum class LabelGrammar {
  VisualFirst,  // VISUAL DESCRIPTION / TEXT / DURATION / EMOTIONAL GOAL
  TextFirst,    // TEXT / IMAGE DESCRIPTION
};

/// Splits on "***" markers and reads the labelled fields of each section.
/// Scenes come back with neutral positivity and, where the model gave none,
/// no duration. Throws ParseError (carrying the raw text) when nothing
/// parseable is found.
Script parse_script(std::string_view raw);

/// Inverse of parse_script on the fields each grammar carries.
std::string serialize_script(const Script& script, LabelGrammar grammar = LabelGrammar::VisualFirst);

/// "3 seconds" -> 3, "3-5 seconds" -> 4, "1 minute" -> 60, "0:05" -> 5.
std::optional<double> parse_duration(std::string_view text);

/// Reads "* Word: Style | Explanation" lines; needs at least three.
std::vector<StyleSuggestion> parse_style_suggestions(std::string_view raw);

/// Reads "SCORE: n COLOR DESCRIPTION: text". Throws ParseError when a field
/// is missing, RangeError when the score is outside [0,100].
ColorSuggestion parse_color_suggestion(std::string_view raw);

}  // namespace moodcast
