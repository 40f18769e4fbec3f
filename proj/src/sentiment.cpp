#include "moodcast/sentiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "moodcast/error.hpp"
#include "moodcast/text.hpp"

namespace moodcast {

PositivityScore::PositivityScore(int value) : value_(value) {
  if (value < 0 || value > 100) {
    throw RangeError("positivity score " + std::to_string(value) + " outside [0,100]");
  }
}

SentimentLexicon::SentimentLexicon(std::unordered_map<std::string, int> entries)
    : entries_(std::move(entries)) {
  for (const auto& [token, v] : entries_) {
    if (token.empty()) throw ValidationError("lexicon has an empty token");
    if (to_lower(token) != token) throw ValidationError("lexicon token '" + token + "' is not lowercase");
    if (token.find_first_of(" \t\r\n") != std::string::npos) {
      throw ValidationError("lexicon token '" + token + "' contains whitespace");
    }
    if (v < -5 || v > 5) throw ValidationError("lexicon token '" + token + "' valence outside [-5,5]");
  }
}

SentimentLexicon SentimentLexicon::parse_tsv(std::string_view text) {
  std::unordered_map<std::string, int> entries;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw ParseError("lexicon line " + std::to_string(line_no) + ": expected token<TAB>integer",
                       std::string(line));
    }
    const auto token = line.substr(0, tab);
    const auto num = trim(line.substr(tab + 1));
    int v = 0;
    auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), v);
    if (ec != std::errc{} || ptr != num.data() + num.size()) {
      throw ParseError("lexicon line " + std::to_string(line_no) + ": bad valence '" + num + "'",
                       std::string(line));
    }
    entries[std::string(token)] = v;
  }
  return SentimentLexicon(std::move(entries));
}

SentimentLexicon SentimentLexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFoundError("lexicon file not found: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_tsv(ss.str());
}

int SentimentLexicon::valence(std::string_view token) const noexcept {
  auto it = entries_.find(std::string(token));
  return it == entries_.end() ? 0 : it->second;
}

bool SentimentLexicon::contains(std::string_view token) const noexcept {
  return entries_.count(std::string(token)) != 0;
}

namespace {
bool is_word_byte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c >= 0x80;
}
}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && !is_word_byte(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && is_word_byte(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) tokens.push_back(to_lower(text.substr(i, j - i)));
    i = j;
  }
  return tokens;
}

PositivityScore positivity_score(std::string_view text, std::string_view image_description,
                                 const SentimentLexicon& lexicon) {
  if (lexicon.empty()) throw ValidationError("positivity scoring needs a non-empty lexicon");
  std::string joined;
  joined.reserve(text.size() + image_description.size() + 1);
  joined.append(text).append(" ").append(image_description);
  const auto tokens = tokenize(joined);
  long raw = 0;
  for (const auto& t : tokens) raw += lexicon.valence(t);
  // 50 + 10 * raw / n as one division, so exact halves stay exact.
  const auto n = static_cast<double>(std::max<std::size_t>(1, tokens.size()));
  const double scaled = std::round((50.0 * n + 10.0 * static_cast<double>(raw)) / n);
  return PositivityScore(static_cast<int>(std::clamp(scaled, 0.0, 100.0)));
}

double average_positivity(std::span<const PositivityScore> scores) {
  if (scores.empty()) throw ValidationError("average positivity of an empty scene list");
  double sum = 0;
  for (auto s : scores) sum += s.value();
  return sum / static_cast<double>(scores.size());
}

std::string_view positivity_to_word(double average) {
  if (average < 20) return "strongly negative";
  if (average < 40) return "negative";
  if (average < 60) return "neutral";
  if (average < 80) return "positive";
  return "strongly positive";
}

}  // namespace moodcast
