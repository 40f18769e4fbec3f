#include "moodcast/http_api.hpp"

#include <charconv>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "moodcast/error.hpp"
#include "moodcast/image_store.hpp"

namespace moodcast {

using nlohmann::json;

int http_status(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Validation:
    case ErrorKind::Range:
    case ErrorKind::Decode:
      return 422;
    case ErrorKind::NotFound:
      return 404;
    case ErrorKind::Conflict:
    case ErrorKind::Precondition:
      return 409;
    case ErrorKind::Timeout:
      return 504;
    case ErrorKind::Parse:
    case ErrorKind::RateLimited:
    case ErrorKind::Transport:
    case ErrorKind::Upstream:
    case ErrorKind::NoFixture:
      return 502;
    case ErrorKind::Io:
      return 500;
  }
  return 500;
}

namespace {

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& kind, const std::string& message) {
  send_json(res, status, {{"error", {{"kind", kind}, {"message", message}}}});
}

json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  try {
    return json::parse(req.body);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("request body is not JSON: ") + e.what());
  }
}

std::size_t parse_index(const std::string& s) {
  std::size_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw NotFoundError("bad index '" + s + "'");
  return v;
}

json songs_json(const std::vector<SongEntry>& songs) {
  json out = json::array();
  for (const auto& s : songs) out.push_back(to_json(s));
  return out;
}

using Handler = std::function<void(const httplib::Request&, httplib::Response&)>;

// Every handler runs through here so no exception escapes into httplib.
Handler guard(Handler h) {
  return [h = std::move(h)](const httplib::Request& req, httplib::Response& res) {
    try {
      h(req, res);
    } catch (const Error& e) {
      send_error(res, http_status(e.kind()), to_string(e.kind()), e.what());
    } catch (const json::exception& e) {
      send_error(res, 422, to_string(ErrorKind::Validation), e.what());
    } catch (const std::exception& e) {
      send_error(res, 500, "internal", e.what());
    }
  };
}

}  // namespace

struct ApiServer::Impl {
  std::shared_ptr<CampaignService> service;
  httplib::Server server;
  bool bound = false;

  void routes();
};

void ApiServer::Impl::routes() {
  auto& svc = *service;

  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Methods", "GET, POST, PATCH, OPTIONS"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});
  server.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) {
      send_error(res, res.status, res.status == 404 ? "not_found" : "http", httplib::status_message(res.status));
    }
  });

  server.Post("/projects", guard([&svc](const httplib::Request& req, httplib::Response& res) {
    const auto body = parse_body(req);
    if (!body.contains("brief")) throw ValidationError("request needs a 'brief' object");
    const auto brief = brief_from_json(body.at("brief"));
    const bool with_mood = body.value("with_mood", true);
    std::optional<std::uint64_t> seed;
    if (body.contains("seed") && !body.at("seed").is_null()) seed = body.at("seed").get<std::uint64_t>();
    send_json(res, 201, to_json(svc.create_project(brief, with_mood, seed)));
  }));

  server.Get(R"(/projects/([^/]+))", guard([&svc](const httplib::Request& req, httplib::Response& res) {
    send_json(res, 200, to_json(*svc.get_project(req.matches[1])));
  }));

  server.Post(R"(/projects/([^/]+)/uploads)", guard([&svc](const httplib::Request& req, httplib::Response& res) {
    ImageData bytes;
    if (req.is_multipart_form_data()) {
      if (!req.has_file("image")) throw ValidationError("multipart upload needs an 'image' part");
      bytes = req.get_file_value("image").content;
    } else {
      bytes = req.body;
    }
    if (bytes.empty()) throw ValidationError("upload body is empty");
    const auto [uid, description] = svc.upload_image(req.matches[1], bytes);
    send_json(res, 201, {{"upload_id", uid}, {"description", description}});
  }));

  server.Patch(R"(/projects/([^/]+)/uploads/([^/]+))", guard([&svc](const httplib::Request& req, httplib::Response& res) {
    const auto body = parse_body(req);
    if (!body.contains("description")) throw ValidationError("request needs a 'description'");
    send_json(res, 200, to_json(svc.patch_upload(req.matches[1], req.matches[2], body.at("description").get<std::string>())));
  }));

  server.Post(R"(/projects/([^/]+)/stages/([^/]+))", guard([&svc](const httplib::Request& req, httplib::Response& res) {
    const auto stage = stage_from_string(req.matches[2].str());
    const auto body = parse_body(req);
    StageOptions opts;
    opts.refresh_suggestions = body.value("refresh_suggestions", false);
    send_json(res, 202, to_json(svc.run_stage(req.matches[1], stage, opts)));
  }));

  server.Post(R"(/projects/([^/]+)/scenes/([^/]+)/regenerate)",
              guard([&svc](const httplib::Request& req, httplib::Response& res) {
                const auto body = parse_body(req);
                RegenRequest r;
                r.index = parse_index(req.matches[2]);
                if (body.contains("goal") && !body.at("goal").is_null()) r.goal = body.at("goal").get<std::string>();
                if (body.contains("positivity") && !body.at("positivity").is_null()) {
                  r.positivity = body.at("positivity").get<int>();
                }
                send_json(res, 202, to_json(svc.regenerate_scene(req.matches[1], r)));
              }));

  server.Patch(R"(/projects/([^/]+)/scenes/([^/]+))", guard([&svc](const httplib::Request& req, httplib::Response& res) {
    const auto patch = scene_patch_from_json(parse_body(req));
    send_json(res, 200, to_json(svc.patch_scene(req.matches[1], parse_index(req.matches[2]), patch)));
  }));

  server.Get(R"(/jobs/([^/]+))", guard([&svc](const httplib::Request& req, httplib::Response& res) {
    send_json(res, 200, to_json(svc.job(req.matches[1])));
  }));

  server.Post(R"(/projects/([^/]+)/selections)", guard([&svc](const httplib::Request& req, httplib::Response& res) {
    send_json(res, 200, to_json(svc.select(req.matches[1], selection_from_json(parse_body(req)))));
  }));

  server.Get(R"(/projects/([^/]+)/songs)", guard([&svc](const httplib::Request& req, httplib::Response& res) {
    const auto rank = req.has_param("rank") ? req.get_param_value("rank") : std::string("match");
    SongRanking ranking;
    if (rank == "match") {
      ranking = SongRanking::Match;
    } else if (rank == "popularity") {
      ranking = SongRanking::Popularity;
    } else {
      throw ValidationError("rank must be 'match' or 'popularity'");
    }
    send_json(res, 200, {{"rank", rank}, {"songs", songs_json(svc.songs(req.matches[1], ranking))}});
  }));

  server.Get(R"(/projects/([^/]+)/manifest)", guard([&svc](const httplib::Request& req, httplib::Response& res) {
    send_json(res, 200, to_json(svc.get_manifest(req.matches[1])));
  }));

  server.Get(R"(/projects/([^/]+)/files/((?:images|uploads)/[A-Za-z0-9._-]+))",
             guard([&svc](const httplib::Request& req, httplib::Response& res) {
               const auto bytes = svc.store().images(req.matches[1])->get(req.matches[2]);
               res.status = 200;
               res.set_content(bytes, "image/png");
             }));
}

ApiServer::ApiServer(std::shared_ptr<CampaignService> service) : impl_(std::make_unique<Impl>()) {
  if (!service) throw ValidationError("api server needs a service");
  impl_->service = std::move(service);
  impl_->routes();
}

ApiServer::~ApiServer() { stop(); }

int ApiServer::bind(const std::string& host, int port) {
  int bound = -1;
  if (port == 0) {
    bound = impl_->server.bind_to_any_port(host);
  } else if (impl_->server.bind_to_port(host, port)) {
    bound = port;
  }
  if (bound < 0) throw IoError("cannot bind " + host + ":" + std::to_string(port));
  impl_->bound = true;
  return bound;
}

void ApiServer::run() {
  if (!impl_->bound) throw PreconditionError("bind() before run()");
  impl_->server.listen_after_bind();
}

void ApiServer::stop() { impl_->server.stop(); }

}  // namespace moodcast
