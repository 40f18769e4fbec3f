#include "moodcast/mock_providers.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "moodcast/error.hpp"
#include "moodcast/text.hpp"

namespace moodcast {

// ---------------------------------------------------------------------------
// Fixtures

FixtureSet FixtureSet::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw NotFoundError("fixture file not found: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("fixture file is not valid JSON: ") + e.what(), {});
  }
  FixtureSet set;
  const auto base = path.parent_path();
  try {
    for (const auto& e : j.value("text", nlohmann::json::array())) {
      if (e.contains("prompt")) {
        set.add_text(e.at("prompt").get<std::string>(), e.at("response").get<std::string>());
      } else {
        set.add_text_by_hash(e.at("prompt_sha256").get<std::string>(), e.at("response").get<std::string>());
      }
    }
    for (const auto& e : j.value("images", nlohmann::json::array())) {
      const auto caption = e.at("caption").get<std::string>();
      if (e.contains("file")) {
        std::ifstream img(base / e.at("file").get<std::string>(), std::ios::binary);
        if (!img) throw NotFoundError("fixture image not found: " + e.at("file").get<std::string>());
        ImageData bytes((std::istreambuf_iterator<char>(img)), std::istreambuf_iterator<char>());
        set.add_caption(bytes, caption);
      } else {
        set.captions_[e.at("image_sha256").get<std::string>()] = caption;
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("fixture file schema: ") + e.what());
  }
  return set;
}

void FixtureSet::add_text(const std::string& prompt, std::string response) {
  text_[sha256_hex(prompt)] = std::move(response);
}

void FixtureSet::add_text_by_hash(std::string prompt_sha256, std::string response) {
  text_[to_lower(prompt_sha256)] = std::move(response);
}

void FixtureSet::add_caption(const ImageData& image, std::string caption) {
  captions_[sha256_hex(image)] = std::move(caption);
}

const std::string* FixtureSet::text_for(const std::string& prompt) const {
  auto it = text_.find(sha256_hex(prompt));
  return it == text_.end() ? nullptr : &it->second;
}

const std::string* FixtureSet::caption_for(const ImageData& image) const {
  auto it = captions_.find(sha256_hex(image));
  return it == captions_.end() ? nullptr : &it->second;
}

void FixtureSet::merge(const FixtureSet& other) {
  text_.insert(other.text_.begin(), other.text_.end());
  captions_.insert(other.captions_.begin(), other.captions_.end());
}

// ---------------------------------------------------------------------------
// Text synthesis

namespace {

std::string between(const std::string& s, std::string_view open, std::string_view close) {
  auto b = s.find(open);
  if (b == std::string::npos) return {};
  b += open.size();
  auto e = s.find(close, b);
  if (e == std::string::npos) e = s.size();
  return trim(std::string_view(s).substr(b, e - b));
}

enum class Tone { Negative, Neutral, Positive };

Tone tone_of(const std::string& mood) {
  static const std::array<std::string_view, 12> positive = {
      "calm", "contented", "content", "delighted", "happy", "hopeful",
      "joyful", "peaceful", "serene", "inspired", "uplifting", "cheerful"};
  static const std::array<std::string_view, 11> negative = {
      "angry", "frustrated", "depressed", "sad", "fearful", "anxious",
      "tired", "gloomy", "scared", "urgent", "grim"};
  const auto m = to_lower(mood);
  for (auto w : positive) {
    if (m.find(w) != std::string::npos) return Tone::Positive;
  }
  for (auto w : negative) {
    if (m.find(w) != std::string::npos) return Tone::Negative;
  }
  return Tone::Neutral;
}

template <std::size_t N>
std::string_view pick(const std::array<std::string_view, N>& pool, std::uint64_t h, int salt) {
  return pool[mix_seed(h, static_cast<std::uint64_t>(salt)) % N];
}

std::string strip_period(std::string s) {
  while (!s.empty() && (s.back() == '.' || s.back() == ';')) s.pop_back();
  return s;
}

std::string synth_script(const std::string& prompt) {
  const auto h = stable_hash64(prompt);
  const auto audience = strip_period(between(prompt, "informing ", " about the problem that"));
  const auto action = strip_period(between(prompt, "can be addressed when ", ". Please provide"));
  const auto mood = strip_period(between(prompt, "emotional beats that are ", ". The video"));
  const Tone tone = tone_of(mood);

  struct Beat {
    std::string visual, text, goal;
    int seconds;
  };
  std::vector<Beat> beats;
  static const std::array<std::string_view, 3> open_pos = {
      "A quiet sunlit morning over the city rooftops",
      "A peaceful park bathed in warm golden light",
      "A gentle sunrise over a calm neighborhood street"};
  static const std::array<std::string_view, 3> open_neg = {
      "A grey rainy street with empty benches",
      "A dark crowded corner under flickering lights",
      "A storm gathering over a silent city block"};
  static const std::array<std::string_view, 3> open_neu = {
      "A wide shot of the city at midday",
      "A busy sidewalk seen from above",
      "A simple street scene with people passing by"};

  const auto opening = tone == Tone::Positive ? pick(open_pos, h, 1)
                       : tone == Tone::Negative ? pick(open_neg, h, 1)
                                                : pick(open_neu, h, 1);
  beats.push_back({std::string(opening), "Hello, " + (audience.empty() ? std::string("neighbors") : audience) + ".",
                   "Introduction", 3});

  static const std::array<std::string_view, 3> problem_pos = {
      "Small changes can protect what we love.",
      "Together we can care for our shared home.",
      "A little attention keeps everyone safe."};
  static const std::array<std::string_view, 3> problem_neg = {
      "Every day the damage grows and the loss is real.",
      "This problem hurts more lives than you think.",
      "Ignoring it leaves pain and harm behind."};
  static const std::array<std::string_view, 3> problem_neu = {
      "There is a problem worth knowing about.",
      "Here is something many people overlook.",
      "Consider what happens every single day."};
  const auto problem_line = tone == Tone::Positive ? pick(problem_pos, h, 2)
                            : tone == Tone::Negative ? pick(problem_neg, h, 2)
                                                     : pick(problem_neu, h, 2);
  beats.push_back({tone == Tone::Negative ? "A close-up of worried faces in dim light"
                                          : "A close-up of hands resting together",
                   std::string(problem_line), "Raising awareness", 4 + static_cast<int>(mix_seed(h, 3) % 3)});

  static const std::array<std::string_view, 3> connect_pos = {
      "You already make a wonderful difference.",
      "Your care creates a happy, safe community.",
      "Kindness and patience help everyone thrive."};
  static const std::array<std::string_view, 3> connect_neg = {
      "We are tired of watching this happen.",
      "It is frustrating and it must stop.",
      "The cost is heavy and the anger is justified."};
  static const std::array<std::string_view, 3> connect_neu = {
      "Everyone plays a part in this.",
      "Each person can make a choice.",
      "This affects all of us in the city."};
  const auto connect_line = tone == Tone::Positive ? pick(connect_pos, h, 4)
                            : tone == Tone::Negative ? pick(connect_neg, h, 4)
                                                     : pick(connect_neu, h, 4);
  beats.push_back({"People sharing a moment together in the neighborhood", std::string(connect_line),
                   "Fostering connection", 4});

  beats.push_back({"A clear illustration of the solution in action",
                   (action.empty() ? std::string("Take action today") : "Act now: " + action) + ".",
                   "Inspiring action", 5});

  static const std::array<std::string_view, 3> close_pos = {
      "Thank you for helping. A brighter tomorrow starts with you.",
      "Together we win. Share this and smile.",
      "Peace of mind is worth it. Join us."};
  static const std::array<std::string_view, 3> close_neg = {
      "Do not wait until it is too late.",
      "Stop the harm now before more is lost.",
      "No more excuses. Act today."};
  static const std::array<std::string_view, 3> close_neu = {
      "Share this message with others.",
      "Learn more and take the next step.",
      "Make the choice today."};
  const auto close_line = tone == Tone::Positive ? pick(close_pos, h, 5)
                          : tone == Tone::Negative ? pick(close_neg, h, 5)
                                                   : pick(close_neu, h, 5);
  beats.push_back({"The city skyline at dusk with a single light shining", std::string(close_line),
                   "Call to action", 3});

  std::string out = "Here is a script for the video.\n\n";
  for (const auto& b : beats) {
    out += "*** - VISUAL DESCRIPTION: " + b.visual + " TEXT: " + b.text + " DURATION: " +
           std::to_string(b.seconds) + " seconds EMOTIONAL GOAL: " + b.goal + "\n\n";
  }
  return out;
}

std::string synth_scene(const std::string& prompt) {
  const auto h = stable_hash64(prompt);
  const auto goal = strip_period(between(prompt, "achieves the goal of ", "?"));
  auto mood = between(prompt, "It should generally have a ", " mood");
  const Tone tone = tone_of(mood + " " + goal);
  static const std::array<std::string_view, 3> pos = {
      "Imagine a brighter, happier tomorrow for everyone.",
      "Hope grows when we care for each other.",
      "Together we can build something wonderful."};
  static const std::array<std::string_view, 3> neg = {
      "The damage is real and painful.",
      "We cannot ignore this terrible loss.",
      "Every delay makes the problem worse."};
  static const std::array<std::string_view, 3> neu = {
      "Here is what happens next.",
      "This is the moment to decide.",
      "Think about the next step."};
  const auto line = tone == Tone::Positive ? pick(pos, h, 7) : tone == Tone::Negative ? pick(neg, h, 7) : pick(neu, h, 7);
  return "***TEXT: " + std::string(line) + " IMAGE DESCRIPTION: A scene showing " +
         (goal.empty() ? std::string("the story continuing") : to_lower(goal)) + " in the city";
}

struct StyleEntry {
  std::string_view word, style, explanation;
};

std::string synth_styles(const std::string& prompt) {
  const auto h = stable_hash64(prompt);
  const auto sentiment = between(prompt, "that is also ", "?");
  static const std::array<StyleEntry, 5> positive = {{
      {"Serene", "Chinese Watercolor Painting", "soft washes and open space create a quiet, meditative feeling"},
      {"Gentle", "Studio Ghibli Animation", "warm light and rounded forms evoke comfort and wonder"},
      {"Uplifting", "Minimalist Scandinavian Design", "clean lines and natural elements suggest calm optimism"},
      {"Joyful", "Children's Storybook Gouache", "playful shapes and bright accents feel friendly and hopeful"},
      {"Radiant", "French Impressionism", "dappled light and loose brushwork capture fleeting happiness"},
  }};
  static const std::array<StyleEntry, 5> negative = {{
      {"Tense", "German Expressionism", "stark, distorted shapes and harsh contrast convey unease"},
      {"Bleak", "Film Noir Illustration", "deep shadows and grey tones suggest isolation and dread"},
      {"Heavy", "Charcoal Sketch Realism", "rough dark strokes feel weighty, somber and raw"},
      {"Restless", "Gritty Urban Graffiti", "clashing marks and cramped layouts express frustration"},
      {"Lonely", "Edward Hopper Realism", "empty rooms and cold light evoke quiet sadness"},
  }};
  static const std::array<StyleEntry, 5> neutral = {{
      {"Clear", "Flat Vector Infographic", "simple shapes and tidy layout keep attention on the message"},
      {"Steady", "Mid-century Modern Poster", "balanced composition and limited palette feel composed"},
      {"Thoughtful", "Pencil Storyboard Sketch", "light linework invites reflection without strong emotion"},
      {"Open", "Paper Cutout Collage", "layered textures feel approachable and grounded"},
      {"Curious", "Isometric Illustration", "orderly perspective invites viewers to explore details"},
  }};
  const auto& pool = sentiment.find("negative") != std::string::npos ? negative
                     : sentiment.find("positive") != std::string::npos ? positive
                                                                        : neutral;
  const std::size_t start = mix_seed(h, 11) % pool.size();
  std::string out = "Here are three options:\n";
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& e = pool[(start + i) % pool.size()];
    out += "* " + std::string(e.word) + ": " + std::string(e.style) + " | " + std::string(e.explanation) + "\n";
  }
  return out;
}

std::string synth_color(const std::string& prompt) {
  const auto mood = to_lower(strip_period(between(prompt, "rank this mood: ", ".")));
  static const std::array<std::pair<std::string_view, int>, 8> known = {{
      {"angry", 90}, {"frustrated", 60}, {"depressed", 10}, {"tired", 20},
      {"calm", 10}, {"contented", 45}, {"delighted", 80}, {"excited", 95}}};
  int score = static_cast<int>(stable_hash64(mood) % 101);
  for (const auto& [name, s] : known) {
    if (mood == name) score = s;
  }
  std::string_view colors = score < 20   ? "very muted colors"
                            : score < 40 ? "soft, soothing colors"
                            : score < 60 ? "warm balanced natural colors"
                            : score < 80 ? "bright cheerful colors"
                                         : "very vibrant and saturated colors";
  return "SCORE: " + std::to_string(score) + " COLOR DESCRIPTION: " + std::string(colors);
}

}  // namespace

std::optional<std::string> synthesize_completion(const std::string& prompt) {
  if (prompt.starts_with("I am making a PSA")) return synth_script(prompt);
  if (prompt.starts_with("Using this script as context")) return synth_scene(prompt);
  if (prompt.starts_with("What are words I could use")) return synth_styles(prompt);
  if (prompt.starts_with("On a scale of 0-100")) return synth_color(prompt);
  return std::nullopt;
}

std::string MockTextProvider::generate_text(const TextRequest& req) {
  validate(req);
  if (const auto* r = fixtures_.text_for(req.prompt)) return *r;
  if (synthesize_) {
    if (auto s = synthesize_completion(req.prompt)) return *s;
  }
  throw NoFixtureError("no fixture for prompt sha256 " + sha256_hex(req.prompt));
}

// ---------------------------------------------------------------------------
// Images

namespace {

constexpr std::array<std::uint8_t, 2> kStampMagic = {'M', 'C'};
constexpr int kStampBytes = 2 + 8 + 8 + 4;

std::array<std::uint8_t, 3> color_from(std::uint64_t v) {
  return {static_cast<std::uint8_t>(v), static_cast<std::uint8_t>(v >> 8), static_cast<std::uint8_t>(v >> 16)};
}

void write_stamp(Raster& r, const MockImageStamp& s) {
  if (r.width * 3 < kStampBytes) return;
  std::array<std::uint8_t, kStampBytes> bytes{};
  bytes[0] = kStampMagic[0];
  bytes[1] = kStampMagic[1];
  for (int i = 0; i < 8; ++i) bytes[2 + i] = static_cast<std::uint8_t>(s.seed >> (8 * i));
  for (int i = 0; i < 8; ++i) bytes[10 + i] = static_cast<std::uint8_t>(s.prompt_hash >> (8 * i));
  for (int i = 0; i < 4; ++i) bytes[18 + i] = static_cast<std::uint8_t>(s.index >> (8 * i));
  std::copy(bytes.begin(), bytes.end(), r.rgb.begin());
}

Raster placeholder(const ImageRequest& req, std::uint32_t index) {
  const auto prompt_hash = stable_hash64(req.prompt);
  const auto key = mix_seed(req.seed ^ prompt_hash, index);
  const auto a = color_from(key);
  const auto b = color_from(mix_seed(key, 1));
  const int band = 8 + static_cast<int>(mix_seed(key, 2) % 24);
  Raster r{req.width, req.height, std::vector<std::uint8_t>(static_cast<std::size_t>(req.width) * req.height * 3)};
  for (int y = 0; y < r.height; ++y) {
    for (int x = 0; x < r.width; ++x) {
      const double t = r.width > 1 ? static_cast<double>(x) / (r.width - 1) : 0.0;
      const bool stripe = ((y / band) % 2) == 0;
      auto* p = r.at(x, y);
      for (int c = 0; c < 3; ++c) {
        const double v = (1.0 - t) * a[c] + t * b[c];
        p[c] = static_cast<std::uint8_t>(stripe ? v : 255.0 - v);
      }
    }
  }
  write_stamp(r, {req.seed, prompt_hash, index});
  return r;
}

}  // namespace

MockImageStamp read_mock_stamp(const ImageData& png) {
  const auto r = decode_png(png);
  if (r.rgb.size() < static_cast<std::size_t>(kStampBytes) || r.rgb[0] != kStampMagic[0] ||
      r.rgb[1] != kStampMagic[1]) {
    throw DecodeError("image carries no mock stamp");
  }
  MockImageStamp s;
  for (int i = 0; i < 8; ++i) s.seed |= static_cast<std::uint64_t>(r.rgb[2 + i]) << (8 * i);
  for (int i = 0; i < 8; ++i) s.prompt_hash |= static_cast<std::uint64_t>(r.rgb[10 + i]) << (8 * i);
  for (int i = 0; i < 4; ++i) s.index |= static_cast<std::uint32_t>(r.rgb[18 + i]) << (8 * i);
  return s;
}

std::vector<ImageData> MockImageProvider::generate_images(const ImageRequest& req) {
  validate(req);
  std::vector<ImageData> out;
  out.reserve(static_cast<std::size_t>(req.count));
  for (int i = 0; i < req.count; ++i) out.push_back(encode_png(placeholder(req, static_cast<std::uint32_t>(i))));
  return out;
}

ImageData MockImageProvider::restyle_image(const ImageEditRequest& req) {
  validate(req);
  Raster r = decode_png(req.source_image);
  if (req.strength == 0.0) return req.source_image;
  const auto tint = color_from(mix_seed(stable_hash64(req.style_prompt), req.seed));
  const double s = req.strength;
  for (int y = 0; y < r.height; ++y) {
    for (int x = 0; x < r.width; ++x) {
      auto* p = r.at(x, y);
      const bool mark = ((x + y) % 16) < 2;
      for (int c = 0; c < 3; ++c) {
        const double target = mark ? 255.0 - tint[c] : tint[c];
        p[c] = static_cast<std::uint8_t>(std::lround((1.0 - s) * p[c] + s * target));
      }
    }
  }
  return encode_png(r);
}

std::string MockVisionProvider::describe_image(const DescriptionRequest& req) {
  validate(req);
  const Raster r = decode_png(req.image);
  if (const auto* c = fixtures_.caption_for(req.image)) return *c;
  if (!synthesize_) throw NoFixtureError("no caption fixture for image sha256 " + sha256_hex(req.image));
  std::array<double, 3> mean{};
  const std::size_t n = static_cast<std::size_t>(r.width) * r.height;
  for (std::size_t i = 0; i < n; ++i) {
    for (int c = 0; c < 3; ++c) mean[c] += r.rgb[3 * i + c];
  }
  for (auto& m : mean) m /= static_cast<double>(std::max<std::size_t>(n, 1));
  const auto brightness = (mean[0] + mean[1] + mean[2]) / 3.0;
  std::string_view hue = "grey";
  if (mean[0] > mean[1] + 20 && mean[0] > mean[2] + 20) hue = "red";
  else if (mean[1] > mean[0] + 20 && mean[1] > mean[2] + 20) hue = "green";
  else if (mean[2] > mean[0] + 20 && mean[2] > mean[1] + 20) hue = "blue";
  return std::string("A ") + (brightness > 128 ? "bright" : "dark") + " photo with mostly " + std::string(hue) +
         " tones.";
}

Providers make_mock_providers(FixtureSet fixtures, bool synthesize) {
  return {std::make_shared<MockTextProvider>(fixtures, synthesize), std::make_shared<MockImageProvider>(),
          std::make_shared<MockVisionProvider>(fixtures, synthesize)};
}

}  // namespace moodcast
