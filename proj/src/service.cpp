#include "moodcast/service.hpp"

#include <nlohmann/json.hpp>

#include "moodcast/error.hpp"
#include "moodcast/text.hpp"

namespace moodcast {

using nlohmann::json;

const char* to_string(Stage s) noexcept {
  switch (s) {
    case Stage::Script: return "script";
    case Stage::Visuals: return "visuals";
    case Stage::Music: return "music";
  }
  return "script";
}

const char* to_string(JobKind k) noexcept {
  switch (k) {
    case JobKind::Script: return "script";
    case JobKind::Images: return "images";
    case JobKind::Music: return "music";
    case JobKind::SceneRegen: return "scene_regen";
  }
  return "script";
}

const char* to_string(JobStatus s) noexcept {
  switch (s) {
    case JobStatus::Pending: return "pending";
    case JobStatus::Running: return "running";
    case JobStatus::Done: return "done";
    case JobStatus::Failed: return "failed";
  }
  return "pending";
}

Stage stage_from_string(std::string_view s) {
  if (s == "script") return Stage::Script;
  if (s == "visuals") return Stage::Visuals;
  if (s == "music") return Stage::Music;
  throw NotFoundError("unknown stage '" + std::string(s) + "'");
}

json to_json(const JobTicket& t) {
  return {{"job_id", t.job_id},
          {"project_id", t.project_id},
          {"kind", to_string(t.kind)},
          {"status", to_string(t.status)},
          {"error", t.error ? json(*t.error) : json(nullptr)},
          {"error_kind", t.error_kind ? json(*t.error_kind) : json(nullptr)}};
}

ScenePatch scene_patch_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("scene patch must be a JSON object");
  static const std::set<std::string> known = {"text", "image_description", "narrative_goal", "positivity", "duration_s"};
  for (const auto& [k, v] : j.items()) {
    if (!known.count(k)) throw ValidationError("unknown scene field '" + k + "'");
  }
  try {
    ScenePatch p;
    if (j.contains("text")) p.text = j.at("text").get<std::string>();
    if (j.contains("image_description")) p.image_description = j.at("image_description").get<std::string>();
    if (j.contains("narrative_goal")) p.narrative_goal = j.at("narrative_goal").get<std::string>();
    if (j.contains("positivity")) p.positivity = j.at("positivity").get<int>();
    if (j.contains("duration_s")) p.duration_s = j.at("duration_s").get<double>();
    return p;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("scene patch: ") + e.what());
  }
}

Selection selection_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("selection must be a JSON object");
  Selection s;
  int set = 0;
  try {
    if (j.contains("style")) {
      ++set;
      if (j.at("style").is_number_integer()) {
        const auto idx = j.at("style").get<long long>();
        if (idx < 0) throw ValidationError("style index must be non-negative");
        s.style_index = static_cast<std::size_t>(idx);
      } else {
        s.custom_style = style_from_json(j.at("style"));
      }
    }
    if (j.contains("color")) {
      ++set;
      s.color = color_from_json(j.at("color"));
    }
    if (j.contains("image")) {
      ++set;
      s.image = std::make_pair(j.at("image").at("scene").get<int>(), j.at("image").at("candidate").get<int>());
    }
    if (j.contains("song_id")) {
      ++set;
      s.song_id = j.at("song_id").get<std::string>();
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("selection: ") + e.what());
  }
  if (set != 1) throw ValidationError("a selection names exactly one of style, color, image, song_id");
  return s;
}

// ---------------------------------------------------------------------------

CampaignService::CampaignService(std::shared_ptr<ProjectStore> store, std::shared_ptr<const Pipeline> pipeline,
                                 std::vector<SongEntry> catalog)
    : store_(std::move(store)), pipeline_(std::move(pipeline)), catalog_(std::move(catalog)) {}

CampaignService::~CampaignService() {
  std::vector<std::thread> workers;
  {
    std::lock_guard lock(jobs_mu_);
    workers.swap(workers_);
  }
  for (auto& t : workers) {
    if (t.joinable()) t.join();
  }
}

Project CampaignService::create_project(const CampaignBrief& brief, bool with_mood, std::optional<std::uint64_t> seed) {
  if (!brief.uploads.empty()) {
    throw ValidationError("uploads are added through the upload endpoint after the project exists");
  }
  return store_->create(brief, with_mood, seed);
}

std::shared_ptr<const Project> CampaignService::get_project(const std::string& id) const { return store_->get(id); }

JobTicket CampaignService::launch(const std::string& project_id, JobKind kind, std::function<void()> work) {
  std::lock_guard lock(jobs_mu_);
  if (busy_projects_.count(project_id)) {
    throw ConflictError("project " + project_id + " already has a job running");
  }
  busy_projects_.insert(project_id);
  JobTicket t;
  t.job_id = "job-" + std::to_string(++next_job_) + "-" + project_id.substr(0, 8);
  t.project_id = project_id;
  t.kind = kind;
  t.status = JobStatus::Pending;
  jobs_[t.job_id] = t;
  workers_.emplace_back([this, id = t.job_id, project_id, work = std::move(work)] {
    {
      std::lock_guard l(jobs_mu_);
      jobs_[id].status = JobStatus::Running;
    }
    std::exception_ptr error;
    try {
      work();
    } catch (...) {
      error = std::current_exception();
    }
    finish(id, project_id, error);
  });
  return t;
}

void CampaignService::finish(const std::string& job_id, const std::string& project_id, std::exception_ptr error) {
  std::lock_guard lock(jobs_mu_);
  auto& t = jobs_[job_id];
  if (error) {
    t.status = JobStatus::Failed;
    try {
      std::rethrow_exception(error);
    } catch (const Error& e) {
      t.error = e.what();
      t.error_kind = to_string(e.kind());
    } catch (const std::exception& e) {
      t.error = e.what();
      t.error_kind = "internal";
    }
  } else {
    t.status = JobStatus::Done;
  }
  busy_projects_.erase(project_id);
  jobs_cv_.notify_all();
}

JobTicket CampaignService::job(const std::string& job_id) const {
  std::lock_guard lock(jobs_mu_);
  auto it = jobs_.find(job_id);
  if (it == jobs_.end()) throw NotFoundError("job '" + job_id + "' not found");
  return it->second;
}

JobTicket CampaignService::wait(const std::string& job_id) const {
  std::unique_lock lock(jobs_mu_);
  auto it = jobs_.find(job_id);
  if (it == jobs_.end()) throw NotFoundError("job '" + job_id + "' not found");
  jobs_cv_.wait(lock, [&] {
    const auto s = jobs_.at(job_id).status;
    return s == JobStatus::Done || s == JobStatus::Failed;
  });
  return jobs_.at(job_id);
}

JobTicket CampaignService::run_stage(const std::string& id, Stage stage, StageOptions options) {
  const auto p = store_->get(id);
  switch (stage) {
    case Stage::Script:
      return launch(id, JobKind::Script, [this, id] { do_script(id); });
    case Stage::Visuals:
      if (!p->script) throw PreconditionError("visuals stage needs a script; run the script stage first");
      return launch(id, JobKind::Images, [this, id, options] { do_visuals(id, options); });
    case Stage::Music:
      if (!p->script) throw PreconditionError("music stage needs a script; run the script stage first");
      if (catalog_.empty()) throw PreconditionError("music stage needs a non-empty song catalog");
      return launch(id, JobKind::Music, [this, id] { do_music(id); });
  }
  throw NotFoundError("unknown stage");
}

JobTicket CampaignService::regenerate_scene(const std::string& id, const RegenRequest& req) {
  const auto p = store_->get(id);
  if (!p->script) throw PreconditionError("scene regeneration needs a script");
  if (req.index >= p->script->scenes.size()) {
    throw NotFoundError("scene index " + std::to_string(req.index) + " out of range");
  }
  if (req.positivity) PositivityScore check(*req.positivity);
  return launch(id, JobKind::SceneRegen, [this, id, req] { do_regen(id, req); });
}

void CampaignService::do_script(const std::string& id) {
  const auto p = store_->get(id);
  auto script = pipeline_->generate_script(p->brief, p->with_mood);
  store_->mutate(id, [&](Project& next) {
    next.script = std::move(script);
    next.style_suggestions.clear();
    next.color_suggestion.reset();
    next.style_choice.reset();
    next.color_choice.reset();
    next.image_selections.clear();
    next.song_choice.reset();
  });
}

void CampaignService::do_visuals(const std::string& id, StageOptions options) {
  const auto p = store_->get(id);
  Script script = *p->script;
  if (!p->brief.uploads.empty()) script = integrate_uploads(script, p->brief.uploads);

  std::vector<StyleSuggestion> styles = p->style_suggestions;
  std::optional<ColorSuggestion> suggested = p->color_suggestion;
  std::optional<StyleSuggestion> style = p->style_choice;
  std::optional<ColorSuggestion> color = p->color_choice;
  if (p->with_mood) {
    if (styles.empty() || options.refresh_suggestions) {
      styles = pipeline_->recommend_styles(p->brief.mood, average_positivity(script));
      suggested = pipeline_->recommend_colors(p->brief.mood);
      style = styles.front();
      color = suggested;
    }
    if (!style) style = styles.front();
    if (!color) color = suggested;
  } else {
    styles.clear();
    suggested.reset();
    style.reset();
    color.reset();
  }

  auto images = store_->images(id);
  const auto rendered = pipeline_->generate_scene_images(script, style, color, p->seed, *images);

  store_->mutate(id, [&](Project& next) {
    if (!next.script || next.script->scenes.size() != rendered.scenes.size()) {
      throw ConflictError("script changed while images were rendering; run the visuals stage again");
    }
    for (std::size_t i = 0; i < rendered.scenes.size(); ++i) {
      auto& dst = next.script->scenes[i];
      const auto& src = rendered.scenes[i];
      dst.upload_bound = src.upload_bound;
      if (src.upload_bound) dst.image_description = src.image_description;
      dst.image_error = src.image_error;
      if (src.images) {
        dst.images = src.images;
        next.image_selections.erase(dst.index);
      }
    }
    next.style_suggestions = styles;
    next.color_suggestion = suggested;
    next.style_choice = style;
    next.color_choice = color;
  });
}

double CampaignService::energy_for(const Project& p) const {
  if (p.mood_energy) return *p.mood_energy;
  const ColorSuggestion* known = p.color_suggestion ? &*p.color_suggestion : nullptr;
  return pipeline_->mood_energy(p.brief.mood, known);
}

void CampaignService::do_music(const std::string& id) {
  const auto p = store_->get(id);
  const double energy = energy_for(*p);
  std::string song;
  if (p->with_mood) {
    song = recommend_songs(catalog_, average_positivity(*p->script), energy, 1).front().id;
  } else {
    song = pick_random_song(catalog_, p->seed).id;
  }
  store_->mutate(id, [&](Project& next) {
    if (!next.script) throw ConflictError("script disappeared during the music stage");
    next.script = assign_durations(*next.script);
    next.mood_energy = energy;
    if (!next.song_choice || !find_song(catalog_, *next.song_choice)) next.song_choice = song;
  });
}

void CampaignService::do_regen(const std::string& id, RegenRequest req) {
  const auto p = store_->get(id);
  const auto& old = p->script->scenes.at(req.index);
  const auto goal = req.goal.value_or(old.narrative_goal);
  const auto target = req.positivity ? PositivityScore(*req.positivity) : old.positivity;
  const auto scene = pipeline_->regenerate_scene(*p->script, req.index, goal, target);
  store_->mutate(id, [&](Project& next) {
    if (!next.script || req.index >= next.script->scenes.size()) {
      throw ConflictError("script changed during scene regeneration");
    }
    next.script->scenes[req.index] = scene;
    next.image_selections.erase(static_cast<int>(req.index));
  });
}

Project CampaignService::patch_scene(const std::string& id, std::size_t index, const ScenePatch& patch) {
  if (patch.positivity) PositivityScore check(*patch.positivity);
  if (patch.duration_s && !(*patch.duration_s > 0.0 && *patch.duration_s <= kMaxSceneSeconds)) {
    throw RangeError("scene duration must be in (0, 45] seconds");
  }
  return store_->mutate(id, [&](Project& next) {
    if (!next.script) throw PreconditionError("project has no script yet");
    if (index >= next.script->scenes.size()) throw NotFoundError("scene index " + std::to_string(index) + " out of range");
    auto& s = next.script->scenes[index];
    if (patch.text) s.text = *patch.text;
    if (patch.image_description) s.image_description = *patch.image_description;
    if (patch.narrative_goal) s.narrative_goal = *patch.narrative_goal;
    if (patch.duration_s) s.duration_s = *patch.duration_s;
    if (patch.positivity) {
      s.positivity = PositivityScore(*patch.positivity);
    } else if (patch.text) {
      s.positivity = pipeline_->score_scene(s);
    }
  });
}

std::pair<std::string, std::string> CampaignService::upload_image(const std::string& id, const ImageData& image) {
  store_->get(id);
  decode_png(image);
  // Described before taking the project lock; the provider call can be slow.
  const auto description = pipeline_->describe_upload(image);
  const auto upload_id = "up-" + sha256_hex(image).substr(0, 12);
  const auto ref = store_->images(id)->put("uploads/" + upload_id + ".png", image);
  store_->mutate(id, [&](Project& next) {
    for (const auto& u : next.brief.uploads) {
      if (u.id == upload_id) throw ConflictError("image already uploaded as " + upload_id);
    }
    next.brief.uploads.push_back({upload_id, ref, description});
  });
  return {upload_id, description};
}

Project CampaignService::patch_upload(const std::string& id, const std::string& upload_id, const std::string& description) {
  if (trim(description).empty()) throw ValidationError("upload description must not be empty");
  return store_->mutate(id, [&](Project& next) {
    for (auto& u : next.brief.uploads) {
      if (u.id == upload_id) {
        u.description = trim(description);
        return;
      }
    }
    throw NotFoundError("upload '" + upload_id + "' not found");
  });
}

Project CampaignService::select(const std::string& id, const Selection& sel) {
  if (sel.song_id && !find_song(catalog_, *sel.song_id)) {
    throw NotFoundError("song '" + *sel.song_id + "' is not in the catalog");
  }
  return store_->mutate(id, [&](Project& next) {
    if (sel.style_index) {
      if (*sel.style_index >= next.style_suggestions.size()) {
        throw NotFoundError("style suggestion " + std::to_string(*sel.style_index) + " does not exist");
      }
      next.style_choice = next.style_suggestions[*sel.style_index];
    } else if (sel.custom_style) {
      next.style_choice = *sel.custom_style;
    } else if (sel.color) {
      next.color_choice = *sel.color;
    } else if (sel.image) {
      const auto [scene, cand] = *sel.image;
      if (!next.script || scene < 0 || static_cast<std::size_t>(scene) >= next.script->scenes.size()) {
        throw NotFoundError("scene " + std::to_string(scene) + " does not exist");
      }
      const auto& s = next.script->scenes[static_cast<std::size_t>(scene)];
      if (!s.images || cand < 0 || static_cast<std::size_t>(cand) >= s.images->candidates().size()) {
        throw NotFoundError("scene " + std::to_string(scene) + " has no image candidate " + std::to_string(cand));
      }
      next.image_selections[scene] = cand;
    } else if (sel.song_id) {
      next.song_choice = *sel.song_id;
    }
  });
}

std::vector<SongEntry> CampaignService::songs(const std::string& id, SongRanking ranking) const {
  if (ranking == SongRanking::Popularity) return rank_by_popularity(catalog_);
  const auto p = store_->get(id);
  if (!p->script) throw PreconditionError("song matching needs a script");
  if (catalog_.empty()) throw PreconditionError("song catalog is empty");
  return recommend_songs(catalog_, average_positivity(*p->script), energy_for(*p), catalog_.size());
}

VideoManifest CampaignService::get_manifest(const std::string& id) const {
  const auto p = store_->get(id);
  if (!p->script) throw PreconditionError("manifest needs a script");
  return compose_manifest(*p->script, p->image_selections, p->song_choice.value_or(""));
}

// ---------------------------------------------------------------------------

CampaignResult run_campaign(const Pipeline& pipeline, std::span<const SongEntry> catalog, const CampaignBrief& brief,
                            bool with_mood, std::uint64_t seed, ImageStore& images) {
  if (catalog.empty()) throw ValidationError("song catalog is empty");
  CampaignResult r;
  r.script = pipeline.generate_script(brief, with_mood);
  const double avg = average_positivity(r.script);
  if (with_mood) {
    r.style = pipeline.recommend_styles(brief.mood, avg).front();
    r.color = pipeline.recommend_colors(brief.mood);
  }
  r.script = pipeline.generate_scene_images(r.script, r.style, r.color, seed, images);
  for (const auto& s : r.script.scenes) {
    if (s.image_error) throw TransportError("scene " + std::to_string(s.index) + " images failed: " + *s.image_error);
  }
  r.script = assign_durations(r.script);
  if (with_mood) {
    const double energy = pipeline.mood_energy(brief.mood, r.color ? &*r.color : nullptr);
    r.recommended = recommend_songs(catalog, avg, energy, 8);
    r.song = r.recommended.front();
  } else {
    r.song = pick_random_song(catalog, seed);
  }
  r.manifest = compose_manifest(r.script, {}, r.song.id);
  return r;
}

}  // namespace moodcast
