#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "moodcast/mood.hpp"
#include "moodcast/stats.hpp"

namespace moodcast::eval {

enum class Condition { WithMood, WithoutMood };

const char* to_string(Condition c) noexcept;
Condition condition_from_string(std::string_view s);

/// One annotator's judgement of one video. Mood fields hold palette names
/// or "unclear".
struct AnnotationRecord {
  std::string video_id;
  Condition condition = Condition::WithMood;
  std::string target_mood;
  std::string annotator_id;
  std::string text_mood;
  std::string imagery_mood;
  std::string music_mood;
  std::string overall_mood;
};

/// CSV with header
/// video_id,condition,target_mood,annotator_id,text_mood,imagery_mood,music_mood,overall_mood
std::vector<AnnotationRecord> parse_annotations_csv(std::string_view text);
std::vector<AnnotationRecord> load_annotations(const std::filesystem::path& path);
std::string to_csv(std::span<const AnnotationRecord> records);

/// Throws NotFoundError for labels outside the palette and ValidationError
/// for a repeated (video_id, annotator_id) pair, a target of "unclear", or a
/// video whose records disagree on the target.
void validate(std::span<const AnnotationRecord> records, const MoodPalette& palette);

struct Accuracy {
  double exact = 0;
  double valence = 0;
  double arousal = 0;
  std::size_t videos = 0;
  std::size_t exact_videos = 0;
  std::size_t valence_videos = 0;
  std::size_t arousal_videos = 0;
};

/// Per video: a hit when at least one annotator's overall mood is the
/// target (exact), shares its valence class, or shares its arousal class.
/// Exact hits count toward both relaxed metrics; "unclear" never hits.
std::map<Condition, Accuracy> match_accuracies(std::span<const AnnotationRecord> records,
                                               const MoodPalette& palette);

/// Text, imagery and music each compared with the overall mood: 1 for the
/// same mood, 0.5 for a shared valence or arousal class, 0 otherwise or when
/// either side is "unclear". Range [0,3] in half-point steps.
double consistency_score(const AnnotationRecord& record, const MoodPalette& palette);

struct ConditionMetrics {
  Accuracy accuracy;
  std::size_t records = 0;
  std::size_t unclear = 0;
  double unclear_rate = 0;
  double mean_consistency = 0;
  double sd_consistency = 0;
  std::vector<double> consistency;  // per record, input order
};

struct MetricsReport {
  std::map<Condition, ConditionMetrics> conditions;
  /// with-mood vs without-mood consistency; absent when either side has
  /// fewer than two records.
  std::optional<stats::TTest> t_test;
  std::vector<std::string> notices;
};

MetricsReport condition_summary(std::span<const AnnotationRecord> records, const MoodPalette& palette);

nlohmann::json to_json(const MetricsReport& report);
std::string format_text(const MetricsReport& report);
/// "43.8%" style, one decimal.
std::string percent(double fraction);

}  // namespace moodcast::eval
