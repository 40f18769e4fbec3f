#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "moodcast/error.hpp"
#include "moodcast/prompts.hpp"
#include "moodcast/text.hpp"

using namespace moodcast;

TEST(ScriptPrompt, WithMoodCarriesBriefAndMood) {
  const auto p = build_script_prompt(testkit::m1_brief(), true);
  EXPECT_TRUE(p.starts_with("I am making a PSA informing Cat owners in New York City about the problem that "
                            "Free-roaming pet cats"));
  EXPECT_NE(p.find("keeping their pet cats indoors"), std::string::npos);
  EXPECT_NE(p.find("making sure to follow key emotional beats that are calm. "), std::string::npos);
  EXPECT_NE(p.find("start every section with *** - VISUAL DESCRIPTION: [description of the imagery on screen] "
                   "TEXT: [text on screen] DURATION: [approximate time of this scene] EMOTIONAL GOAL: "
                   "[Emotional goal]."),
            std::string::npos);
  EXPECT_TRUE(p.ends_with("should be under 45 seconds."));
}

TEST(ScriptPrompt, WithoutMoodDropsOnlyTheMoodClause) {
  const auto with = build_script_prompt(testkit::m1_brief(), true);
  const auto without = build_script_prompt(testkit::m1_brief(), false);
  EXPECT_EQ(without.find("calm"), std::string::npos);
  EXPECT_EQ(without.find("emotional beats"), std::string::npos);
  EXPECT_NE(without.find("Please provide an example description of such a video. The video should"),
            std::string::npos);
  const std::string clause = ", making sure to follow key emotional beats that are calm";
  auto expected = with;
  expected.erase(expected.find(clause), clause.size());
  EXPECT_EQ(without, expected);
}

TEST(ScriptPrompt, TrailingPunctuationNotDoubled) {
  auto b = testkit::m1_brief();
  b.problem += ".";
  b.mood = "calm;";
  const auto p = build_script_prompt(b, true);
  EXPECT_EQ(p.find("alone.."), std::string::npos);
  EXPECT_NE(p.find("that are calm. "), std::string::npos);
}

TEST(ScriptPrompt, InvalidBrief) {
  auto b = testkit::m1_brief();
  b.problem = "  ";
  EXPECT_THROW(build_script_prompt(b, true), ValidationError);
  b = testkit::m1_brief();
  b.mood = "";
  EXPECT_THROW(build_script_prompt(b, true), ValidationError);
}

TEST(ScenePrompt, RegenerationTemplate) {
  Script s = parse_script("***VISUAL DESCRIPTION: a cat TEXT: Stay home\n***VISUAL DESCRIPTION: a bird TEXT: Birds sing");
  s.brief = testkit::m1_brief();
  s.with_mood = true;
  const auto p = build_scene_prompt(s, 1, "Imagining a brighter tomorrow", PositivityScore(90));
  EXPECT_TRUE(p.starts_with("Using this script as context: ***VISUAL DESCRIPTION: a cat TEXT: Stay home"));
  EXPECT_NE(p.find("can you replace SCENE 2 (TEXT: Birds sing IMAGE DESCRIPTION: a bird) with a scene that achieves "
                   "the goal of Imagining a brighter tomorrow? "),
            std::string::npos);
  EXPECT_NE(p.find("It should generally have a calm mood that is also strongly positive. "), std::string::npos);
  EXPECT_TRUE(p.ends_with("***TEXT: [onscreen text] IMAGE DESCRIPTION: [image description]. Only return the "
                          "information for this one scene."));
  s.with_mood = false;
  const auto base = build_scene_prompt(s, 1, "Introduction", PositivityScore(30));
  EXPECT_EQ(base.find("calm"), std::string::npos);
  EXPECT_NE(base.find("It should generally be negative. "), std::string::npos);
  EXPECT_THROW(build_scene_prompt(s, 2, "x", PositivityScore(50)), NotFoundError);
}

TEST(ArtPrompts, StyleAndColor) {
  const auto style = build_style_prompt("calm", 75);
  EXPECT_TRUE(style.starts_with("What are words I could use to describe a calm mood that is also positive? "));
  EXPECT_TRUE(style.ends_with("Please provide three entries and keep the description under 20 words."));
  EXPECT_THROW(build_style_prompt("calm", 101), ValidationError);
  EXPECT_THROW(build_style_prompt(" ", 50), ValidationError);
  const auto color = build_color_prompt("calm");
  EXPECT_TRUE(color.starts_with("On a scale of 0-100, 0 meaning \"completely calm\" to 100 meaning \"very "
                                "excited,\", rank this mood: calm. Then,"));
  EXPECT_TRUE(color.ends_with("SCORE: [rank from 0-100] COLOR DESCRIPTION: [color description]"));
}

TEST(ImagePrompt, ExactConcatenation) {
  const StyleSuggestion st{"Serene", "Chinese Watercolor Painting", "soft"};
  const ColorSuggestion c{30, "soft, soothing colors"};
  const auto p = build_image_prompt(st, c, "a cat by a window");
  EXPECT_EQ(p, "Chinese Watercolor Painting soft, soothing colors illustration of a cat by a window");
  EXPECT_EQ(p, build_image_prompt(st, c, "a cat by a window"));
  EXPECT_EQ(build_image_prompt("a cat by a window"), "illustration of a cat by a window");
  EXPECT_THROW(build_image_prompt(st, c, ""), ValidationError);
  EXPECT_THROW(build_image_prompt(""), ValidationError);
}

TEST(StyleParse, ThreeEntries) {
  const auto s = parse_style_suggestions(
      "Sure!\n* Serene: Chinese Watercolor Painting | soft washes\n*Gentle: Studio Ghibli | warm light\n"
      "* **Hopeful**: Impressionism | one two three four five six seven eight nine ten eleven twelve thirteen "
      "fourteen fifteen sixteen seventeen eighteen nineteen twenty twentyone twentytwo\n* Extra: X | y\n");
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0].word, "Serene");
  EXPECT_EQ(s[0].style, "Chinese Watercolor Painting");
  EXPECT_EQ(s[0].explanation, "soft washes");
  EXPECT_EQ(s[1].word, "Gentle");
  EXPECT_EQ(s[2].word, "Hopeful");
  EXPECT_EQ(word_count(s[2].explanation), 20u);
}

TEST(StyleParse, MissingBarIsParseError) {
  try {
    parse_style_suggestions("* A: B | c\n* D: E\n* F: G | h\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(e.raw().find("D: E"), std::string::npos);
  }
}

TEST(ColorParse, FieldsAndRange) {
  const auto c = parse_color_suggestion("SCORE: 10 COLOR DESCRIPTION: very muted colors");
  EXPECT_EQ(c.energy_score, 10);
  EXPECT_EQ(c.color_description, "very muted colors");
  const auto d = parse_color_suggestion("**Score:** 85\n**Color description:** \"bright warm reds and golden yellows everywhere\".");
  EXPECT_EQ(d.energy_score, 85);
  EXPECT_EQ(d.color_description, "bright warm reds and golden yellows");
  EXPECT_THROW(parse_color_suggestion("SCORE: 150 COLOR DESCRIPTION: loud"), RangeError);
  EXPECT_THROW(parse_color_suggestion("SCORE: -3 COLOR DESCRIPTION: loud"), RangeError);
  EXPECT_THROW(parse_color_suggestion("COLOR DESCRIPTION: loud"), ParseError);
  EXPECT_THROW(parse_color_suggestion("SCORE: 40"), ParseError);
  EXPECT_THROW(parse_color_suggestion("SCORE: high COLOR DESCRIPTION: loud"), ParseError);
}
