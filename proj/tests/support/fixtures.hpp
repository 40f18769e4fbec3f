#pragma once

#include <memory>

#include "moodcast/mock_providers.hpp"
#include "moodcast/pipeline.hpp"
#include "moodcast/sentiment.hpp"

namespace moodcast::testkit {

inline CampaignBrief m1_brief() {
  return {"Cat owners in New York City",
          "Free-roaming pet cats are the biggest human-made threat to birds, causing the loss of 2.4 billion birds "
          "each year in the US alone",
          "New Yorkers can help address this issue by keeping their pet cats indoors, and, if allowing them outdoors, "
          "keeping them under strict surveillance",
          "calm",
          {}};
}

inline CampaignBrief m2_brief() {
  return {"New York subway riders",
          "People standing near the doors can create hazards when other passengers enter/leave the train car",
          "New York subway riders should move all the way in when they board the train",
          "excited",
          {}};
}

inline std::shared_ptr<const SentimentLexicon> lexicon_ptr() {
  return {&SentimentLexicon::afinn165(), [](const SentimentLexicon*) {}};
}

inline std::shared_ptr<Pipeline> mock_pipeline(FixtureSet fixtures = {}, bool synthesize = true) {
  return std::make_shared<Pipeline>(make_mock_providers(std::move(fixtures), synthesize), lexicon_ptr(),
                                    std::make_shared<MoodPalette>(MoodPalette::defaults()));
}

/// Providers whose calls all fail with the given error factory.
template <typename Err>
class FailingText final : public TextProvider {
 public:
  std::string generate_text(const TextRequest&) override { throw Err("provider down"); }
};

}  // namespace moodcast::testkit
