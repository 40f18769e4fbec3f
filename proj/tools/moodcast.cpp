// moodcast: serve the editor API, run a campaign end to end, or score
// annotation files.

#include <csignal>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "moodcast/catalog.hpp"
#include "moodcast/error.hpp"
#include "moodcast/eval.hpp"
#include "moodcast/http_api.hpp"
#include "moodcast/http_providers.hpp"
#include "moodcast/image_store.hpp"
#include "moodcast/mock_providers.hpp"
#include "moodcast/prompts.hpp"
#include "moodcast/service.hpp"

namespace moodcast::cli {
std::string_view default_catalog_json();
}

namespace fs = std::filesystem;
using nlohmann::json;
using namespace moodcast;

namespace {

struct Common {
  bool mock = false;
  std::string fixtures;
  std::string palette;
};

std::vector<SongEntry> load_catalog(const std::string& path) {
  if (path.empty()) return parse_song_catalog_json(cli::default_catalog_json());
  return load_song_catalog(path);
}

MoodPalette load_palette(const std::string& path) {
  return path.empty() ? MoodPalette::defaults() : MoodPalette::load(path);
}

std::shared_ptr<Pipeline> make_pipeline(const Common& c) {
  const auto fixtures = c.fixtures.empty() ? FixtureSet{} : FixtureSet::load(c.fixtures);
  ProviderMode mode;
  auto providers = providers_from_env(fixtures, c.mock, &mode);
  std::cerr << "providers: text=" << (mode.text_live ? "http" : "mock")
            << " image=" << (mode.image_live ? "http" : "mock")
            << " vision=" << (mode.vision_live ? "http" : "mock") << "\n";
  return std::make_shared<Pipeline>(std::move(providers),
                                    std::shared_ptr<const SentimentLexicon>(&SentimentLexicon::afinn165(),
                                                                            [](const SentimentLexicon*) {}),
                                    std::make_shared<MoodPalette>(load_palette(c.palette)));
}

void write_json(const fs::path& path, const json& j) { atomic_write_file(path, j.dump(2) + "\n"); }

int cmd_run(const Common& c, const std::string& brief_path, const std::string& out, const std::string& catalog_path,
            bool no_mood, std::uint64_t seed) {
  const auto brief = brief_from_json(json::parse(read_file(brief_path)));
  const auto catalog = load_catalog(catalog_path);
  const auto pipeline = make_pipeline(c);
  fs::create_directories(out);
  DirectoryImageStore images(out);
  const auto r = run_campaign(*pipeline, catalog, brief, !no_mood, seed, images);

  json summary = {{"with_mood", !no_mood},
                  {"seed", seed},
                  {"average_positivity", average_positivity(r.script)},
                  {"song", to_json(r.song)},
                  {"style", r.style ? to_json(*r.style) : json(nullptr)},
                  {"color", r.color ? to_json(*r.color) : json(nullptr)},
                  {"recommended_songs", json::array()}};
  for (const auto& s : r.recommended) summary["recommended_songs"].push_back(to_json(s));

  write_json(fs::path(out) / "manifest.json", to_json(r.manifest));
  write_json(fs::path(out) / "script.json", to_json(r.script));
  write_json(fs::path(out) / "summary.json", summary);
  atomic_write_file(fs::path(out) / "script.txt", serialize_script(r.script));
  for (const auto& w : r.script.warnings) std::cerr << "warning: " << w << "\n";
  if (r.manifest.over_length) std::cerr << "warning: video runs longer than 45 s\n";
  std::cout << (fs::path(out) / "manifest.json").string() << "\n";
  return 0;
}

int cmd_eval(const std::string& annotations, const std::string& palette_path, const std::string& format) {
  const auto palette = load_palette(palette_path);
  const auto records = eval::load_annotations(annotations);
  const auto report = eval::condition_summary(records, palette);
  if (format == "json") {
    std::cout << eval::to_json(report).dump(2) << "\n";
  } else {
    std::cout << eval::format_text(report);
  }
  return 0;
}

int cmd_serve(const Common& c, const std::string& host, int port, const std::string& catalog_path,
              const std::string& store_dir) {
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  // Blocked before any thread starts so only the waiter below sees them.
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  auto store = std::make_shared<ProjectStore>(store_dir);
  auto service = std::make_shared<CampaignService>(store, make_pipeline(c), load_catalog(catalog_path));
  ApiServer server(service);
  const int bound = server.bind(host, port);
  std::cout << "listening on http://" << host << ":" << bound << std::endl;

  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.stop();
  });
  server.run();
  // run() can also return on a listener failure; wake the waiter either way.
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"moodcast: mood-driven campaign video generator"};
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--mock", common.mock, "Use mock providers regardless of the environment");
    sub->add_option("--fixtures", common.fixtures, "Mock fixture JSON")->check(CLI::ExistingFile);
    sub->add_option("--palette", common.palette, "Mood palette JSON (default: built-in)")->check(CLI::ExistingFile);
  };

  auto* serve = app.add_subcommand("serve", "Serve the HTTP JSON API");
  int port = 8080;
  std::string host = "127.0.0.1";
  std::string serve_catalog;
  std::string store_dir = "moodcast-projects";
  serve->add_option("--port", port, "Port (0 picks a free one)")->check(CLI::Range(0, 65535));
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--catalog", serve_catalog, "Song catalog (JSON or CSV)")->check(CLI::ExistingFile);
  serve->add_option("--store", store_dir, "Project directory root");
  add_common(serve);

  auto* run = app.add_subcommand("run", "Generate one campaign end to end");
  std::string brief, out, run_catalog;
  bool no_mood = false;
  std::uint64_t seed = 42;
  run->add_option("--brief", brief, "Brief JSON")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out, "Output directory")->required();
  run->add_option("--catalog", run_catalog, "Song catalog (JSON or CSV)")->check(CLI::ExistingFile);
  run->add_flag("--no-mood", no_mood, "Baseline prompts without the target mood");
  run->add_option("--seed", seed, "Image and baseline song seed");
  add_common(run);

  auto* ev = app.add_subcommand("eval", "Score annotation records");
  std::string annotations, eval_palette, format = "text";
  ev->add_option("--annotations", annotations, "Annotations CSV")->required()->check(CLI::ExistingFile);
  ev->add_option("--palette", eval_palette, "Mood palette JSON (default: built-in)")->check(CLI::ExistingFile);
  ev->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*serve) return cmd_serve(common, host, port, serve_catalog, store_dir);
    if (*run) return cmd_run(common, brief, out, run_catalog, no_mood, seed);
    if (*ev) return cmd_eval(annotations, eval_palette, format);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
