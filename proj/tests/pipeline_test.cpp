#include <gtest/gtest.h>

#include <atomic>

#include "fixtures.hpp"
#include "moodcast/error.hpp"
#include "moodcast/text.hpp"
#include "oracles.hpp"
#include "paths.hpp"

using namespace moodcast;

namespace {

class FailingImages final : public ImageProvider {
 public:
  std::vector<ImageData> generate_images(const ImageRequest&) override {
    throw TransportError("image backend unreachable", 3);
  }
  ImageData restyle_image(const ImageEditRequest&) override { throw TransportError("image backend unreachable", 3); }
};

class CountingText final : public TextProvider {
 public:
  explicit CountingText(std::shared_ptr<TextProvider> inner) : inner_(std::move(inner)) {}
  std::string generate_text(const TextRequest& req) override {
    ++calls;
    return inner_->generate_text(req);
  }
  std::atomic<int> calls{0};

 private:
  std::shared_ptr<TextProvider> inner_;
};

Script three_scene_script() {
  auto s = parse_script(
      "***VISUAL DESCRIPTION: a grey cat dozing on a sunny windowsill TEXT: Cats love the sun\n"
      "***VISUAL DESCRIPTION: birds gathered around a feeder TEXT: Birds need safe yards\n"
      "***VISUAL DESCRIPTION: a city street at night TEXT: Keep your cat indoors");
  s.brief = testkit::m1_brief();
  return assign_durations(s);
}

}  // namespace

TEST(GenerateScript, DeterministicAndBounded) {
  const auto p = testkit::mock_pipeline();
  const auto a = p->generate_script(testkit::m1_brief(), true);
  const auto b = p->generate_script(testkit::m1_brief(), true);
  EXPECT_EQ(a, b);
  ASSERT_FALSE(a.scenes.empty());
  EXPECT_TRUE(a.with_mood);
  EXPECT_EQ(a.brief, testkit::m1_brief());
  for (std::size_t i = 0; i < a.scenes.size(); ++i) {
    const auto& s = a.scenes[i];
    EXPECT_EQ(s.index, static_cast<int>(i));
    EXPECT_GE(s.positivity.value(), 0);
    EXPECT_LE(s.positivity.value(), 100);
    EXPECT_EQ(s.positivity.value(), testkit::positivity_oracle(s.text, s.image_description, p->lexicon()));
    ASSERT_TRUE(s.duration_s);
    EXPECT_GT(*s.duration_s, 0.0);
    EXPECT_LE(*s.duration_s, kMaxSceneSeconds);
  }
  const auto baseline = p->generate_script(testkit::m1_brief(), false);
  EXPECT_FALSE(baseline.with_mood);
}

TEST(GenerateScript, GarbageReplyIsParseErrorWithStage) {
  FixtureSet f;
  f.add_text(build_script_prompt(testkit::m1_brief(), true), "I'm sorry, I can't write that.");
  const auto p = testkit::mock_pipeline(f, false);
  try {
    p->generate_script(testkit::m1_brief(), true);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_TRUE(std::string(e.what()).starts_with("script stage:"));
    EXPECT_EQ(e.raw(), "I'm sorry, I can't write that.");
  }
}

TEST(GenerateScript, ProviderErrorsKeepTheirKind) {
  const auto p = testkit::mock_pipeline({}, false);
  try {
    p->generate_script(testkit::m1_brief(), true);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoFixture);
    EXPECT_TRUE(std::string(e.what()).starts_with("script stage:"));
  }
  auto bad = testkit::m1_brief();
  bad.action.clear();
  EXPECT_THROW(p->generate_script(bad, true), ValidationError);
}

TEST(RegenerateScene, NeighboursUntouched) {
  const auto p = testkit::mock_pipeline();
  const auto script = p->generate_script(testkit::m1_brief(), true);
  ASSERT_GE(script.scenes.size(), 3u);
  const auto fresh = p->regenerate_scene(script, 1, "Imagining a brighter tomorrow", PositivityScore(90));
  EXPECT_EQ(fresh.index, 1);
  EXPECT_EQ(fresh.narrative_goal, "Imagining a brighter tomorrow");
  EXPECT_EQ(fresh.positivity, p->score_scene(fresh));
  EXPECT_NE(fresh.text + fresh.image_description, script.scenes[1].text + script.scenes[1].image_description);
  const auto again = p->regenerate_scene(script, 1, "Imagining a brighter tomorrow", PositivityScore(90));
  EXPECT_EQ(fresh, again);
  EXPECT_THROW(p->regenerate_scene(script, 99, "x", PositivityScore(50)), NotFoundError);
}

TEST(RegenerateScene, UnparseableReplyReportsRaw) {
  const auto script = three_scene_script();
  FixtureSet f;
  f.add_text(build_scene_prompt(script, 0, "Hope", PositivityScore(70)), "no labels here");
  const auto p = testkit::mock_pipeline(f, false);
  try {
    p->regenerate_scene(script, 0, "Hope", PositivityScore(70));
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.raw(), "no labels here");
  }
}

TEST(RegenerateScene, AcceptsReplyWithoutLeadingMarker) {
  const auto script = three_scene_script();
  FixtureSet f;
  f.add_text(build_scene_prompt(script, 2, "Call to action", PositivityScore(80)),
             "TEXT: Bring them inside tonight IMAGE DESCRIPTION: a happy cat on a couch");
  const auto p = testkit::mock_pipeline(f, false);
  const auto s = p->regenerate_scene(script, 2, "Call to action", PositivityScore(80));
  EXPECT_EQ(s.text, "Bring them inside tonight");
  EXPECT_EQ(s.image_description, "a happy cat on a couch");
  EXPECT_EQ(s.duration_s, script.scenes[2].duration_s);
}

TEST(IntegrateUploads, BindsMostSimilarScene) {
  const auto script = three_scene_script();
  const Upload up{"up-1", "uploads/up-1.png", "a grey cat sleeping"};
  std::size_t best = 0;
  for (std::size_t i = 1; i < script.scenes.size(); ++i) {
    if (testkit::dice_oracle(up.description, script.scenes[i].image_description) >
        testkit::dice_oracle(up.description, script.scenes[best].image_description)) {
      best = i;
    }
  }
  ASSERT_EQ(best, 0u);
  const auto out = integrate_uploads(script, std::vector<Upload>{up});
  EXPECT_EQ(out.scenes[0].upload_bound, "up-1");
  EXPECT_EQ(out.scenes[0].image_description, "a grey cat sleeping");
  EXPECT_EQ(out.scenes[1], script.scenes[1]);
  EXPECT_EQ(out.scenes[2], script.scenes[2]);
}

TEST(IntegrateUploads, GreedyDistinctScenes) {
  const auto script = three_scene_script();
  const std::vector<Upload> ups = {{"u1", "uploads/u1.png", "a cat dozing on a windowsill"},
                                   {"u2", "uploads/u2.png", "a grey cat dozing on a sunny windowsill"},
                                   {"u3", "uploads/u3.png", "a busy street at night"}};
  const auto out = integrate_uploads(script, ups);
  EXPECT_EQ(out.scenes[0].upload_bound, "u2");  // identical description wins scene 0
  EXPECT_EQ(out.scenes[2].upload_bound, "u3");
  EXPECT_EQ(out.scenes[1].upload_bound, "u1");
}

TEST(IntegrateUploads, IdentityAndErrors) {
  const auto script = three_scene_script();
  EXPECT_EQ(integrate_uploads(script, {}), script);
  auto two = script;
  two.scenes.pop_back();
  const std::vector<Upload> ups = {{"a", "x", "one"}, {"b", "y", "two"}, {"c", "z", "three"}};
  try {
    integrate_uploads(two, ups);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("unplaced uploads"), std::string::npos);
  }
  EXPECT_THROW(integrate_uploads(script, std::vector<Upload>{{"a", "x", "  "}}), ValidationError);
}

TEST(SceneImages, FourCandidatesWithSeededStamps) {
  const auto p = testkit::mock_pipeline();
  const auto script = three_scene_script();
  MemoryImageStore store;
  const StyleSuggestion style{"Serene", "Chinese Watercolor Painting", "soft washes"};
  const ColorSuggestion color{15, "very muted colors"};
  const auto out = p->generate_scene_images(script, style, color, 42, store);
  for (const auto& s : out.scenes) {
    ASSERT_TRUE(s.images) << s.image_error.value_or("");
    EXPECT_FALSE(s.images->restyled);
    EXPECT_EQ(s.images->prompt_used, build_image_prompt(style, color, s.image_description));
    const auto c = s.images->candidates();
    ASSERT_EQ(c.size(), 4u);
    for (std::size_t k = 0; k < c.size(); ++k) {
      EXPECT_EQ(c[k], "images/scene-" + std::to_string(s.index) + "-" + std::to_string(k) + ".png");
      const auto stamp = read_mock_stamp(store.get(c[k]));
      EXPECT_EQ(stamp.seed, mix_seed(42, static_cast<std::uint64_t>(s.index)));
      EXPECT_EQ(stamp.index, k);
    }
  }
  MemoryImageStore again;
  const auto out2 = p->generate_scene_images(script, style, color, 42, again);
  EXPECT_EQ(out, out2);
  for (const auto& s : out.scenes) {
    for (const auto& ref : s.images->candidates()) EXPECT_EQ(store.get(ref), again.get(ref));
  }
}

TEST(SceneImages, BaselinePromptAndStyleColorPairing) {
  const auto p = testkit::mock_pipeline();
  const auto script = three_scene_script();
  MemoryImageStore store;
  const auto out = p->generate_scene_images(script, std::nullopt, std::nullopt, 7, store);
  EXPECT_EQ(out.scenes[1].images->prompt_used, "illustration of birds gathered around a feeder");
  EXPECT_THROW(p->generate_scene_images(script, StyleSuggestion{"a", "b", "c"}, std::nullopt, 7, store),
               ValidationError);
}

TEST(SceneImages, UploadBoundSceneGetsRestyledPrimary) {
  const auto p = testkit::mock_pipeline();
  MemoryImageStore store;
  const auto cat = testkit::slurp(testkit::test_data("cat_window.png"));
  const auto ref = store.put("uploads/up-cat.png", cat);
  auto script = three_scene_script();
  script.brief.uploads = {{"up-cat", ref, "a grey cat sleeping"}};
  script = integrate_uploads(script, script.brief.uploads);
  const auto out = p->generate_scene_images(script, std::nullopt, std::nullopt, 42, store);
  const auto& bound = out.scenes[0];
  ASSERT_TRUE(bound.images);
  EXPECT_TRUE(bound.images->restyled);
  EXPECT_EQ(bound.images->candidates().size(), 4u);
  const auto primary = decode_png(store.get(bound.images->primary));
  const auto source = decode_png(cat);
  EXPECT_EQ(primary.width, source.width);
  EXPECT_EQ(primary.height, source.height);
  EXPECT_NE(primary, source);
  EXPECT_FALSE(out.scenes[1].images->restyled);
}

TEST(SceneImages, FailuresRecordedPerScene) {
  auto providers = make_mock_providers({}, true);
  providers.image = std::make_shared<FailingImages>();
  Pipeline p(providers, testkit::lexicon_ptr(), std::make_shared<MoodPalette>(MoodPalette::defaults()));
  MemoryImageStore store;
  const auto out = p.generate_scene_images(three_scene_script(), std::nullopt, std::nullopt, 1, store);
  for (const auto& s : out.scenes) {
    EXPECT_FALSE(s.images);
    ASSERT_TRUE(s.image_error);
    EXPECT_NE(s.image_error->find("unreachable"), std::string::npos);
  }
}

TEST(Recommendations, StylesAndColorsFromMock) {
  const auto p = testkit::mock_pipeline();
  const auto styles = p->recommend_styles("calm", 75);
  ASSERT_EQ(styles.size(), 3u);
  for (const auto& s : styles) EXPECT_LE(word_count(s.explanation), 20u);
  EXPECT_EQ(p->recommend_styles("depressed", 15), p->recommend_styles("depressed", 15));
  const auto c = p->recommend_colors("calm");
  EXPECT_GE(c.energy_score, 0);
  EXPECT_LE(c.energy_score, 100);
  EXPECT_LE(word_count(c.color_description), 6u);
  EXPECT_THROW(p->recommend_styles("calm", 120), ValidationError);
}

TEST(MoodEnergy, PaletteDefaultsAndCachedFreeText) {
  auto counting = std::make_shared<CountingText>(std::make_shared<MockTextProvider>(FixtureSet{}, true));
  auto providers = make_mock_providers({}, true);
  providers.text = counting;
  Pipeline p(providers, testkit::lexicon_ptr(), std::make_shared<MoodPalette>(MoodPalette::defaults()));
  EXPECT_DOUBLE_EQ(p.mood_energy("calm"), 0.15);
  EXPECT_DOUBLE_EQ(p.mood_energy("Excited"), 0.95);
  EXPECT_EQ(counting->calls, 0);
  const auto expected = p.recommend_colors("quietly hopeful").energy_score / 100.0;
  counting->calls = 0;
  EXPECT_DOUBLE_EQ(p.mood_energy("quietly hopeful"), expected);
  EXPECT_DOUBLE_EQ(p.mood_energy("Quietly Hopeful "), expected);
  EXPECT_EQ(counting->calls, 1);
  const ColorSuggestion known{64, "warm tones"};
  EXPECT_DOUBLE_EQ(p.mood_energy("wistful", &known), 0.64);
  EXPECT_EQ(counting->calls, 1);
  EXPECT_THROW(p.mood_energy(""), ValidationError);
}

TEST(AssignDurations, FillsAndReplaces) {
  auto s = parse_script("***TEXT: a IMAGE DESCRIPTION: b\n***VISUAL DESCRIPTION: c TEXT: d DURATION: 90 seconds\n"
                        "***VISUAL DESCRIPTION: e TEXT: f DURATION: 4 seconds");
  const auto out = assign_durations(s);
  EXPECT_EQ(out.scenes[0].duration_s, kDefaultSceneSeconds);
  EXPECT_EQ(out.scenes[1].duration_s, kDefaultSceneSeconds);
  EXPECT_EQ(out.scenes[2].duration_s, 4.0);
  ASSERT_EQ(out.warnings.size(), 1u);
  EXPECT_NE(out.warnings[0].find("scene 1"), std::string::npos);
  EXPECT_EQ(assign_durations(out), out);
}
