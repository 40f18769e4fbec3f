#include "moodcast/eval.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "moodcast/csv.hpp"
#include "moodcast/error.hpp"
#include "moodcast/text.hpp"

namespace moodcast::eval {

const char* to_string(Condition c) noexcept {
  return c == Condition::WithMood ? "with_mood" : "without_mood";
}

Condition condition_from_string(std::string_view s) {
  const auto v = to_lower(trim(s));
  if (v == "with_mood" || v == "with-mood") return Condition::WithMood;
  if (v == "without_mood" || v == "without-mood") return Condition::WithoutMood;
  throw ValidationError("unknown condition '" + std::string(s) + "'");
}

namespace {
constexpr std::string_view kHeader =
    "video_id,condition,target_mood,annotator_id,text_mood,imagery_mood,music_mood,overall_mood";

bool is_unclear(std::string_view label) { return to_lower(trim(label)) == kUnclearLabel; }
}  // namespace

std::vector<AnnotationRecord> parse_annotations_csv(std::string_view text) {
  const auto rows = parse_csv(text);
  if (rows.empty()) throw ValidationError("annotation file is empty");
  std::string header;
  for (std::size_t i = 0; i < rows[0].size(); ++i) header += (i ? "," : "") + to_lower(trim(rows[0][i]));
  if (header != kHeader) throw ValidationError("annotation header must be " + std::string(kHeader));
  std::vector<AnnotationRecord> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& f = rows[r];
    if (f.size() != 8) {
      throw ValidationError("annotation row " + std::to_string(r) + ": expected 8 fields, got " + std::to_string(f.size()));
    }
    AnnotationRecord rec;
    rec.video_id = trim(f[0]);
    try {
      rec.condition = condition_from_string(f[1]);
    } catch (const ValidationError& e) {
      throw ValidationError("annotation row " + std::to_string(r) + ": " + e.what());
    }
    rec.target_mood = trim(f[2]);
    rec.annotator_id = trim(f[3]);
    rec.text_mood = trim(f[4]);
    rec.imagery_mood = trim(f[5]);
    rec.music_mood = trim(f[6]);
    rec.overall_mood = trim(f[7]);
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<AnnotationRecord> load_annotations(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFoundError("annotation file not found: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_annotations_csv(ss.str());
}

std::string to_csv(std::span<const AnnotationRecord> records) {
  std::string out(kHeader);
  out += '\n';
  for (const auto& r : records) {
    out += csv_escape(r.video_id);
    out += ',';
    out += to_string(r.condition);
    for (const auto* f : {&r.target_mood, &r.annotator_id, &r.text_mood, &r.imagery_mood, &r.music_mood, &r.overall_mood}) {
      out += ',';
      out += csv_escape(*f);
    }
    out += '\n';
  }
  return out;
}

void validate(std::span<const AnnotationRecord> records, const MoodPalette& palette) {
  std::set<std::pair<std::string, std::string>> seen;
  std::map<std::pair<Condition, std::string>, std::string> targets;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    const auto where = "record " + std::to_string(i + 1) + " (" + r.video_id + "/" + r.annotator_id + ")";
    if (r.video_id.empty() || r.annotator_id.empty()) throw ValidationError(where + ": empty video or annotator id");
    if (!seen.emplace(r.video_id, r.annotator_id).second) {
      throw ValidationError(where + ": duplicate (video_id, annotator_id)");
    }
    if (is_unclear(r.target_mood)) throw ValidationError(where + ": target mood cannot be \"unclear\"");
    palette.at(r.target_mood);
    for (const auto* label : {&r.text_mood, &r.imagery_mood, &r.music_mood, &r.overall_mood}) {
      if (!palette.is_label(*label)) throw NotFoundError(where + ": unknown mood label '" + *label + "'");
    }
    auto [it, fresh] = targets.emplace(std::make_pair(r.condition, r.video_id), to_lower(r.target_mood));
    if (!fresh && it->second != to_lower(r.target_mood)) {
      throw ValidationError(where + ": target mood disagrees with other records of the video");
    }
  }
}

std::map<Condition, Accuracy> match_accuracies(std::span<const AnnotationRecord> records, const MoodPalette& palette) {
  validate(records, palette);
  struct Hits {
    bool exact = false, valence = false, arousal = false;
  };
  std::map<std::pair<Condition, std::string>, Hits> videos;
  for (const auto& r : records) {
    auto& h = videos[{r.condition, r.video_id}];
    const auto kind = classify_match(palette.at(r.target_mood), r.overall_mood, palette);
    if (kind == MatchKind::Unclear || kind == MatchKind::NoMatch) continue;
    const auto& target = palette.at(r.target_mood);
    const auto& seen = palette.at(r.overall_mood);
    h.exact |= kind == MatchKind::Exact;
    h.valence |= seen.valence == target.valence;
    h.arousal |= seen.arousal == target.arousal;
  }
  std::map<Condition, Accuracy> out;
  for (const auto& [key, h] : videos) {
    auto& a = out[key.first];
    ++a.videos;
    a.exact_videos += h.exact;
    a.valence_videos += h.valence;
    a.arousal_videos += h.arousal;
  }
  for (auto& [c, a] : out) {
    const double n = static_cast<double>(a.videos);
    a.exact = a.exact_videos / n;
    a.valence = a.valence_videos / n;
    a.arousal = a.arousal_videos / n;
  }
  return out;
}

double consistency_score(const AnnotationRecord& record, const MoodPalette& palette) {
  if (is_unclear(record.overall_mood)) return 0.0;
  const auto& overall = palette.at(record.overall_mood);
  double score = 0;
  for (const auto* channel : {&record.text_mood, &record.imagery_mood, &record.music_mood}) {
    if (is_unclear(*channel)) continue;
    const auto& m = palette.at(*channel);
    if (iequals(m.name, overall.name)) {
      score += 1.0;
    } else if (m.valence == overall.valence || m.arousal == overall.arousal) {
      score += 0.5;
    }
  }
  return score;
}

MetricsReport condition_summary(std::span<const AnnotationRecord> records, const MoodPalette& palette) {
  MetricsReport report;
  const auto acc = match_accuracies(records, palette);
  for (const auto& r : records) {
    auto& m = report.conditions[r.condition];
    ++m.records;
    if (is_unclear(r.overall_mood)) ++m.unclear;
    m.consistency.push_back(consistency_score(r, palette));
  }
  for (auto& [c, m] : report.conditions) {
    m.accuracy = acc.at(c);
    m.unclear_rate = static_cast<double>(m.unclear) / static_cast<double>(m.records);
    m.mean_consistency = stats::mean(m.consistency);
    m.sd_consistency = stats::sample_sd(m.consistency);
  }
  const auto with = report.conditions.find(Condition::WithMood);
  const auto without = report.conditions.find(Condition::WithoutMood);
  if (with == report.conditions.end() || without == report.conditions.end()) {
    report.notices.emplace_back("t-test skipped: both with_mood and without_mood records are needed");
  } else {
    report.t_test = stats::welch_t_test(with->second.consistency, without->second.consistency);
    if (!report.t_test) report.notices.emplace_back("t-test skipped: a condition has fewer than 2 records");
  }
  report.notices.emplace_back(
      "consistency is averaged per annotation record; this equals the per-video average when every video has the "
      "same number of annotators");
  return report;
}

std::string percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f%%", fraction * 100.0);
  return buf;
}

nlohmann::json to_json(const MetricsReport& report) {
  nlohmann::json conditions = nlohmann::json::object();
  for (const auto& [c, m] : report.conditions) {
    conditions[to_string(c)] = {
        {"videos", m.accuracy.videos},
        {"records", m.records},
        {"exact_acc", m.accuracy.exact},
        {"valence_acc", m.accuracy.valence},
        {"arousal_acc", m.accuracy.arousal},
        {"mean_consistency", m.mean_consistency},
        {"sd_consistency", m.sd_consistency},
        {"unclear_count", m.unclear},
        {"unclear_rate", m.unclear_rate},
    };
  }
  nlohmann::json out = {{"conditions", conditions}, {"notices", report.notices}};
  if (report.t_test) {
    out["t_test"] = {{"kind", "welch"}, {"t", report.t_test->t}, {"df", report.t_test->df}, {"p", report.t_test->p}};
  } else {
    out["t_test"] = nullptr;
  }
  return out;
}

std::string format_text(const MetricsReport& report) {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "%-14s %7s %8s %8s %8s %9s %9s %10s\n", "condition", "videos", "exact", "valence",
                "arousal", "cons.mean", "cons.sd", "unclear");
  os << line;
  for (const auto& [c, m] : report.conditions) {
    const auto unclear = percent(m.unclear_rate) + " (" + std::to_string(m.unclear) + "/" + std::to_string(m.records) + ")";
    std::snprintf(line, sizeof line, "%-14s %7zu %8s %8s %8s %9.2f %9.2f %10s\n", to_string(c), m.accuracy.videos,
                  percent(m.accuracy.exact).c_str(), percent(m.accuracy.valence).c_str(),
                  percent(m.accuracy.arousal).c_str(), m.mean_consistency, m.sd_consistency, unclear.c_str());
    os << line;
  }
  if (report.t_test) {
    std::snprintf(line, sizeof line, "\nWelch t-test on consistency: t = %.4f, df = %.2f, p = %.4f\n", report.t_test->t,
                  report.t_test->df, report.t_test->p);
    os << line;
  }
  for (const auto& n : report.notices) os << "\n* " << n;
  os << "\n";
  return os.str();
}

}  // namespace moodcast::eval
