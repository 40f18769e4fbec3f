#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "moodcast/pipeline.hpp"
#include "moodcast/script.hpp"

namespace moodcast {

/// Everything the service knows about one campaign. Persisted as
/// <root>/<id>/project.json next to uploads/ and images/.
struct Project {
  std::string id;
  CampaignBrief brief;
  bool with_mood = true;
  std::uint64_t seed = 0;
  std::uint64_t revision = 0;

  std::optional<Script> script;
  std::vector<StyleSuggestion> style_suggestions;
  std::optional<ColorSuggestion> color_suggestion;
  std::optional<StyleSuggestion> style_choice;
  std::optional<ColorSuggestion> color_choice;
  ImageSelections image_selections;
  std::optional<double> mood_energy;
  std::optional<std::string> song_choice;

  bool operator==(const Project&) const = default;
};

nlohmann::json to_json(const Project& p);
Project project_from_json(const nlohmann::json& j);

/// File-backed project store.
///
/// Every mutation runs under the project's mutex, bumps the revision by
/// exactly one, and is committed by writing project.json through a temp file
/// and rename, so a crash leaves either revision n or n+1 on disk. A lock
/// file in the root keeps a second process from writing the same tree.
class ProjectStore {
 public:
  /// Throws ConflictError if another process holds the root lock.
  explicit ProjectStore(std::filesystem::path root);
  ~ProjectStore();
  ProjectStore(const ProjectStore&) = delete;
  ProjectStore& operator=(const ProjectStore&) = delete;

  const std::filesystem::path& root() const noexcept { return root_; }
  std::filesystem::path project_dir(const std::string& id) const;

  /// Validates the brief, assigns a fresh id (and a random seed unless one
  /// is given) and commits revision 0.
  Project create(const CampaignBrief& brief, bool with_mood = true, std::optional<std::uint64_t> seed = std::nullopt);

  /// Latest committed revision. Throws NotFoundError.
  std::shared_ptr<const Project> get(const std::string& id) const;

  /// Applies `fn` to a copy of the latest revision and commits it as
  /// revision + 1. Exceptions from `fn` leave the project untouched.
  Project mutate(const std::string& id, const std::function<void(Project&)>& fn);

  /// Image storage rooted at the project directory.
  std::shared_ptr<ImageStore> images(const std::string& id) const;

  std::vector<std::string> list() const;

 private:
  struct Entry {
    std::mutex write_mu;
    mutable std::shared_mutex read_mu;
    std::shared_ptr<const Project> committed;
  };

  Entry& entry(const std::string& id) const;
  std::shared_ptr<const Project> load_from_disk(const std::string& id) const;
  void commit(const Project& p) const;

  std::filesystem::path root_;
  int lock_fd_ = -1;
  mutable std::mutex entries_mu_;
  mutable std::map<std::string, std::unique_ptr<Entry>> entries_;
};

/// Reads and validates a project.json file. Throws ParseError when the file
/// is not a complete JSON document.
Project read_project_file(const std::filesystem::path& path);

}  // namespace moodcast
