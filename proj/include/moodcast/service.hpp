#pragma once

#include <condition_variable>
#include <functional>
#include <span>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "moodcast/catalog.hpp"
#include "moodcast/pipeline.hpp"
#include "moodcast/store.hpp"

namespace moodcast {

enum class Stage { Script, Visuals, Music };
enum class JobKind { Script, Images, Music, SceneRegen };
enum class JobStatus { Pending, Running, Done, Failed };

const char* to_string(Stage s) noexcept;
const char* to_string(JobKind k) noexcept;
const char* to_string(JobStatus s) noexcept;
Stage stage_from_string(std::string_view s);

struct JobTicket {
  std::string job_id;
  std::string project_id;
  JobKind kind = JobKind::Script;
  JobStatus status = JobStatus::Pending;
  std::optional<std::string> error;
  std::optional<std::string> error_kind;
};

nlohmann::json to_json(const JobTicket& t);

/// Field edits for one scene; unset members are left alone.
struct ScenePatch {
  std::optional<std::string> text;
  std::optional<std::string> image_description;
  std::optional<std::string> narrative_goal;
  std::optional<int> positivity;
  std::optional<double> duration_s;
};

ScenePatch scene_patch_from_json(const nlohmann::json& j);

/// One selection per call; exactly one member must be set.
struct Selection {
  std::optional<std::size_t> style_index;       // into style_suggestions
  std::optional<StyleSuggestion> custom_style;
  std::optional<ColorSuggestion> color;
  std::optional<std::pair<int, int>> image;     // (scene, candidate)
  std::optional<std::string> song_id;
};

Selection selection_from_json(const nlohmann::json& j);

struct StageOptions {
  bool refresh_suggestions = false;  // visuals: ask for new style/colour ideas
};

struct RegenRequest {
  std::size_t index = 0;
  std::optional<std::string> goal;
  std::optional<int> positivity;
};

enum class SongRanking { Match, Popularity };

/// Project lifecycle on top of the store and the pipeline. Provider-bound
/// stages run as background jobs; a project runs at most one job at a time.
class CampaignService {
 public:
  CampaignService(std::shared_ptr<ProjectStore> store, std::shared_ptr<const Pipeline> pipeline,
                  std::vector<SongEntry> catalog);
  ~CampaignService();
  CampaignService(const CampaignService&) = delete;
  CampaignService& operator=(const CampaignService&) = delete;

  Project create_project(const CampaignBrief& brief, bool with_mood = true,
                         std::optional<std::uint64_t> seed = std::nullopt);
  std::shared_ptr<const Project> get_project(const std::string& id) const;

  /// Validates preconditions synchronously (PreconditionError, ConflictError)
  /// and returns a pending ticket.
  JobTicket run_stage(const std::string& id, Stage stage, StageOptions options = {});
  JobTicket regenerate_scene(const std::string& id, const RegenRequest& req);
  JobTicket job(const std::string& job_id) const;
  /// Blocks until the job reaches a terminal state.
  JobTicket wait(const std::string& job_id) const;

  Project patch_scene(const std::string& id, std::size_t index, const ScenePatch& patch);
  std::pair<std::string, std::string> upload_image(const std::string& id, const ImageData& image);
  Project patch_upload(const std::string& id, const std::string& upload_id, const std::string& description);
  Project select(const std::string& id, const Selection& selection);
  std::vector<SongEntry> songs(const std::string& id, SongRanking ranking) const;
  VideoManifest get_manifest(const std::string& id) const;

  const std::vector<SongEntry>& catalog() const noexcept { return catalog_; }
  ProjectStore& store() noexcept { return *store_; }

 private:
  JobTicket launch(const std::string& project_id, JobKind kind, std::function<void()> work);
  void finish(const std::string& job_id, const std::string& project_id, std::exception_ptr error);

  void do_script(const std::string& id);
  void do_visuals(const std::string& id, StageOptions options);
  void do_music(const std::string& id);
  void do_regen(const std::string& id, RegenRequest req);
  double energy_for(const Project& p) const;

  std::shared_ptr<ProjectStore> store_;
  std::shared_ptr<const Pipeline> pipeline_;
  std::vector<SongEntry> catalog_;

  mutable std::mutex jobs_mu_;
  mutable std::condition_variable jobs_cv_;
  std::map<std::string, JobTicket> jobs_;
  std::set<std::string> busy_projects_;
  std::vector<std::thread> workers_;
  std::uint64_t next_job_ = 0;
};

/// Everything one end-to-end run produces.
struct CampaignResult {
  Script script;
  std::optional<StyleSuggestion> style;
  std::optional<ColorSuggestion> color;
  std::vector<SongEntry> recommended;
  SongEntry song;
  VideoManifest manifest;
};

/// brief -> script -> art direction -> images -> song -> manifest, taking
/// the first suggestion at every choice point. Without mood, art direction
/// is skipped and the song is a seeded random pick.
CampaignResult run_campaign(const Pipeline& pipeline, std::span<const SongEntry> catalog, const CampaignBrief& brief,
                            bool with_mood, std::uint64_t seed, ImageStore& images);

}  // namespace moodcast
