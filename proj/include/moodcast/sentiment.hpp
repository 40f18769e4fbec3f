#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace moodcast {

/// Scene valence on a 0 (most negative) .. 100 (most positive) scale.
class PositivityScore {
 public:
  constexpr PositivityScore() = default;
  /// Throws RangeError outside [0,100].
  explicit PositivityScore(int value);

  constexpr int value() const noexcept { return value_; }
  auto operator<=>(const PositivityScore&) const = default;

 private:
  int value_ = 50;
};

/// Word list mapping lowercase tokens to integer valences in [-5,5]
/// (AFINN format).
class SentimentLexicon {
 public:
  SentimentLexicon() = default;
  /// Throws ValidationError if a token is not lowercase, holds whitespace,
  /// or has a valence outside [-5,5].
  explicit SentimentLexicon(std::unordered_map<std::string, int> entries);

  /// Two-column TSV: token<TAB>integer. Blank lines and '#' comments skipped.
  static SentimentLexicon load(const std::filesystem::path& path);
  static SentimentLexicon parse_tsv(std::string_view text);
  /// AFINN-165 single-word entries, compiled into the library.
  static const SentimentLexicon& afinn165();

  bool empty() const noexcept { return entries_.empty(); }
  std::size_t size() const noexcept { return entries_.size(); }
  /// 0 for tokens not in the list.
  int valence(std::string_view token) const noexcept;
  bool contains(std::string_view token) const noexcept;
  const std::unordered_map<std::string, int>& entries() const noexcept { return entries_; }

 private:
  std::unordered_map<std::string, int> entries_;
};

/// Lowercases and splits on runs of non-alphanumeric ASCII.
std::vector<std::string> tokenize(std::string_view text);

/// Sentiment of a scene from its on-screen text and image description,
/// mapped linearly around a neutral 50:
///   comparative = sum(valence) / max(1, tokens)
///   score       = clamp(round(50 + 10 * comparative), 0, 100)
/// Throws ValidationError if the lexicon is empty.
PositivityScore positivity_score(std::string_view text, std::string_view image_description,
                                 const SentimentLexicon& lexicon);

/// Throws ValidationError on an empty list.
double average_positivity(std::span<const PositivityScore> scores);

/// Five equal bands: strongly negative, negative, neutral, positive,
/// strongly positive. Used to phrase the art-style prompt.
std::string_view positivity_to_word(double average);

}  // namespace moodcast
