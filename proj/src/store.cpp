#include "moodcast/store.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <random>

#include <nlohmann/json.hpp>

#include "moodcast/error.hpp"
#include "moodcast/text.hpp"

namespace moodcast {

using nlohmann::json;

json to_json(const Project& p) {
  json styles = json::array();
  for (const auto& s : p.style_suggestions) styles.push_back(to_json(s));
  json selections = json::object();
  for (const auto& [scene, cand] : p.image_selections) selections[std::to_string(scene)] = cand;
  return {
      {"id", p.id},
      {"brief", to_json(p.brief)},
      {"with_mood", p.with_mood},
      {"seed", p.seed},
      {"revision", p.revision},
      {"script", p.script ? to_json(*p.script) : json(nullptr)},
      {"style_suggestions", styles},
      {"color_suggestion", p.color_suggestion ? to_json(*p.color_suggestion) : json(nullptr)},
      {"style_choice", p.style_choice ? to_json(*p.style_choice) : json(nullptr)},
      {"color_choice", p.color_choice ? to_json(*p.color_choice) : json(nullptr)},
      {"image_selections", selections},
      {"mood_energy", p.mood_energy ? json(*p.mood_energy) : json(nullptr)},
      {"song_choice", p.song_choice ? json(*p.song_choice) : json(nullptr)},
  };
}

Project project_from_json(const json& j) {
  try {
    Project p;
    p.id = j.at("id").get<std::string>();
    p.brief = brief_from_json(j.at("brief"));
    p.with_mood = j.value("with_mood", true);
    p.seed = j.at("seed").get<std::uint64_t>();
    p.revision = j.at("revision").get<std::uint64_t>();
    auto present = [&](const char* k) { return j.contains(k) && !j.at(k).is_null(); };
    if (present("script")) p.script = script_from_json(j.at("script"));
    if (present("style_suggestions")) {
      for (const auto& s : j.at("style_suggestions")) p.style_suggestions.push_back(style_from_json(s));
    }
    if (present("color_suggestion")) p.color_suggestion = color_from_json(j.at("color_suggestion"));
    if (present("style_choice")) p.style_choice = style_from_json(j.at("style_choice"));
    if (present("color_choice")) p.color_choice = color_from_json(j.at("color_choice"));
    if (present("image_selections")) {
      for (const auto& [k, v] : j.at("image_selections").items()) p.image_selections[std::stoi(k)] = v.get<int>();
    }
    if (present("mood_energy")) p.mood_energy = j.at("mood_energy").get<double>();
    if (present("song_choice")) p.song_choice = j.at("song_choice").get<std::string>();
    return p;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("project.json schema: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw ValidationError("project.json schema: image_selections key is not an integer");
  }
}

Project read_project_file(const std::filesystem::path& path) {
  const auto text = read_file(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("project file is not complete JSON: ") + e.what(), text.substr(0, 200));
  }
  return project_from_json(j);
}

ProjectStore::ProjectStore(std::filesystem::path root) : root_(std::move(root)) {
  std::filesystem::create_directories(root_);
  const auto lock_path = root_ / ".lock";
  lock_fd_ = ::open(lock_path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
  if (lock_fd_ < 0) throw IoError("cannot open lock file " + lock_path.string());
  if (::flock(lock_fd_, LOCK_EX | LOCK_NB) != 0) {
    ::close(lock_fd_);
    lock_fd_ = -1;
    throw ConflictError("project store " + root_.string() + " is in use by another process");
  }
}

ProjectStore::~ProjectStore() {
  if (lock_fd_ >= 0) {
    ::flock(lock_fd_, LOCK_UN);
    ::close(lock_fd_);
  }
}

std::filesystem::path ProjectStore::project_dir(const std::string& id) const {
  if (id.empty() || id.find_first_not_of("0123456789abcdef") != std::string::npos) {
    throw NotFoundError("project '" + id + "' not found");
  }
  return root_ / id;
}

ProjectStore::Entry& ProjectStore::entry(const std::string& id) const {
  std::lock_guard lock(entries_mu_);
  auto& slot = entries_[id];
  if (!slot) slot = std::make_unique<Entry>();
  return *slot;
}

std::shared_ptr<const Project> ProjectStore::load_from_disk(const std::string& id) const {
  const auto path = project_dir(id) / "project.json";
  if (!std::filesystem::exists(path)) throw NotFoundError("project '" + id + "' not found");
  return std::make_shared<const Project>(read_project_file(path));
}

void ProjectStore::commit(const Project& p) const {
  const auto dir = project_dir(p.id);
  std::filesystem::create_directories(dir);
  atomic_write_file(dir / "project.json", to_json(p).dump(2));
}

Project ProjectStore::create(const CampaignBrief& brief, bool with_mood, std::optional<std::uint64_t> seed) {
  validate(brief);
  thread_local std::mt19937_64 rng{std::random_device{}() ^ (static_cast<std::uint64_t>(std::random_device{}()) << 32)};
  Project p;
  p.brief = brief;
  p.with_mood = with_mood;
  p.seed = seed.value_or(rng() & ((1ULL << 53) - 1));
  for (;;) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(rng()));
    p.id = buf;
    auto& e = entry(p.id);
    std::lock_guard lock(e.write_mu);
    if (e.committed || std::filesystem::exists(root_ / p.id)) continue;
    commit(p);
    std::unique_lock rl(e.read_mu);
    e.committed = std::make_shared<const Project>(p);
    return p;
  }
}

std::shared_ptr<const Project> ProjectStore::get(const std::string& id) const {
  project_dir(id);
  auto& e = entry(id);
  {
    std::shared_lock rl(e.read_mu);
    if (e.committed) return e.committed;
  }
  std::lock_guard wl(e.write_mu);
  std::unique_lock rl(e.read_mu);
  if (!e.committed) e.committed = load_from_disk(id);
  return e.committed;
}

Project ProjectStore::mutate(const std::string& id, const std::function<void(Project&)>& fn) {
  project_dir(id);
  auto& e = entry(id);
  std::lock_guard wl(e.write_mu);
  std::shared_ptr<const Project> current;
  {
    std::shared_lock rl(e.read_mu);
    current = e.committed;
  }
  if (!current) current = load_from_disk(id);
  Project next = *current;
  fn(next);
  next.id = current->id;
  next.revision = current->revision + 1;
  commit(next);
  auto snapshot = std::make_shared<const Project>(next);
  std::unique_lock rl(e.read_mu);
  e.committed = snapshot;
  return next;
}

std::shared_ptr<ImageStore> ProjectStore::images(const std::string& id) const {
  return std::make_shared<DirectoryImageStore>(project_dir(id));
}

std::vector<std::string> ProjectStore::list() const {
  std::vector<std::string> out;
  for (const auto& d : std::filesystem::directory_iterator(root_)) {
    if (d.is_directory() && std::filesystem::exists(d.path() / "project.json")) out.push_back(d.path().filename());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace moodcast
