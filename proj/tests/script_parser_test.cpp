#include <gtest/gtest.h>

#include <random>

#include "moodcast/error.hpp"
#include "moodcast/prompts.hpp"
#include "oracles.hpp"

using namespace moodcast;

TEST(ParseScript, VisualFirstLine) {
  const auto s =
      parse_script("***VISUAL DESCRIPTION: a cat TEXT: Stay home DURATION: 3 seconds EMOTIONAL GOAL: Introduction");
  ASSERT_EQ(s.scenes.size(), 1u);
  EXPECT_EQ(s.scenes[0].image_description, "a cat");
  EXPECT_EQ(s.scenes[0].text, "Stay home");
  ASSERT_TRUE(s.scenes[0].duration_s);
  EXPECT_DOUBLE_EQ(*s.scenes[0].duration_s, 3.0);
  EXPECT_EQ(s.scenes[0].narrative_goal, "Introduction");
  EXPECT_EQ(s.scenes[0].positivity.value(), 50);
}

TEST(ParseScript, TextFirstVariant) {
  const auto s = parse_script("***TEXT: hi IMAGE DESCRIPTION: a bird");
  ASSERT_EQ(s.scenes.size(), 1u);
  EXPECT_EQ(s.scenes[0].text, "hi");
  EXPECT_EQ(s.scenes[0].image_description, "a bird");
  EXPECT_FALSE(s.scenes[0].duration_s);
}

TEST(ParseScript, NoMarkersCarriesRaw) {
  try {
    parse_script("no markers at all");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.raw(), "no markers at all");
  }
  EXPECT_THROW(parse_script("*** nothing labelled here\n*** or here"), ParseError);
  EXPECT_THROW(parse_script(""), ParseError);
}

TEST(ParseScript, ModelStyleFormatting) {
  const std::string raw =
      "Here is a script for your PSA.\n\n"
      "*** - **VISUAL DESCRIPTION:** A tabby cat watches birds through a window.\n"
      "**TEXT:** \"Birds need our help.\"\n"
      "**DURATION:** 3-5 seconds\n"
      "**EMOTIONAL GOAL:** Introduction.\n\n"
      "*** - VISUAL DESCRIPTION: Empty feeders in a park.\n"
      "ON-SCREEN TEXT: 2.4 billion birds lost each year\n"
      "DURATION: 0:06\n"
      "NARRATIVE GOAL: Raising concern\n\n"
      "***\nIMAGE DESCRIPTION: A cat napping indoors. TEXT: Keep cats inside. DURATION: about 1 minute\n";
  const auto s = parse_script(raw);
  ASSERT_EQ(s.scenes.size(), 3u);
  EXPECT_EQ(s.scenes[0].image_description, "A tabby cat watches birds through a window.");
  EXPECT_EQ(s.scenes[0].text, "Birds need our help.");
  EXPECT_DOUBLE_EQ(*s.scenes[0].duration_s, 4.0);
  EXPECT_EQ(s.scenes[0].narrative_goal, "Introduction");
  EXPECT_EQ(s.scenes[1].text, "2.4 billion birds lost each year");
  EXPECT_DOUBLE_EQ(*s.scenes[1].duration_s, 6.0);
  EXPECT_EQ(s.scenes[1].narrative_goal, "Raising concern");
  EXPECT_EQ(s.scenes[2].index, 2);
  EXPECT_DOUBLE_EQ(*s.scenes[2].duration_s, 60.0);
}

TEST(ParseDuration, Forms) {
  EXPECT_EQ(parse_duration("3 seconds"), 3.0);
  EXPECT_EQ(parse_duration("3-5 seconds"), 4.0);
  EXPECT_EQ(parse_duration("3 to 5 seconds"), 4.0);
  EXPECT_EQ(parse_duration("1 minute"), 60.0);
  EXPECT_EQ(parse_duration("0:05"), 5.0);
  EXPECT_EQ(parse_duration("2.5s"), 2.5);
  EXPECT_EQ(parse_duration("about 7 sec"), 7.0);
  EXPECT_FALSE(parse_duration("a few seconds"));
  EXPECT_FALSE(parse_duration(""));
}

namespace {

void expect_round_trip(const Script& original, LabelGrammar grammar, std::size_t case_no) {
  const auto text = serialize_script(original, grammar);
  Script parsed;
  ASSERT_NO_THROW(parsed = parse_script(text)) << "case " << case_no << "\n" << text;
  ASSERT_EQ(parsed.scenes.size(), original.scenes.size()) << text;
  for (std::size_t i = 0; i < parsed.scenes.size(); ++i) {
    EXPECT_EQ(parsed.scenes[i], original.scenes[i]) << "case " << case_no << " scene " << i << "\n" << text;
  }
}

}  // namespace

TEST(ScriptRoundTrip, VisualFirstGenerated) {
  std::mt19937_64 rng(0x5c417);
  for (std::size_t i = 0; i < 500; ++i) expect_round_trip(testkit::random_script(rng, LabelGrammar::VisualFirst), LabelGrammar::VisualFirst, i);
}

TEST(ScriptRoundTrip, TextFirstGenerated) {
  std::mt19937_64 rng(0x7e47);
  for (std::size_t i = 0; i < 500; ++i) expect_round_trip(testkit::random_script(rng, LabelGrammar::TextFirst), LabelGrammar::TextFirst, i);
}

TEST(ScriptFuzz, MalformedInputOnlyEverRaisesParseError) {
  std::mt19937_64 rng(0xf022);
  const std::vector<std::string> pieces = {"***", "**", "*", "TEXT:", "TEXT", "IMAGE DESCRIPTION:", "VISUAL DESCRIPTION:",
                                           "DURATION:", "EMOTIONAL GOAL:", ":", "\n", "\n\n", " ", "\"", "'",
                                           "3-", "0:", "seconds", "cat", "-", "1 minute", "\t", "é"};
  int parsed = 0, rejected = 0;
  for (int i = 0; i < 5000; ++i) {
    std::string raw;
    const int n = static_cast<int>(rng() % 24);
    for (int k = 0; k < n; ++k) raw += pieces[rng() % pieces.size()];
    try {
      const auto s = parse_script(raw);
      ++parsed;
      ASSERT_FALSE(s.scenes.empty());
      for (const auto& sc : s.scenes) EXPECT_FALSE(sc.text.empty() && sc.image_description.empty());
    } catch (const ParseError& e) {
      ++rejected;
      EXPECT_EQ(e.raw(), raw);
    } catch (const std::exception& e) {
      FAIL() << "unexpected " << e.what() << " for input: " << raw;
    }
  }
  EXPECT_GT(parsed, 0);
  EXPECT_GT(rejected, 0);
}
