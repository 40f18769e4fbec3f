#include "moodcast/http_providers.hpp"

#include <cstdlib>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "moodcast/error.hpp"
#include "moodcast/text.hpp"

namespace moodcast {
namespace {

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

SplitUrl split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw ValidationError("endpoint URL needs a scheme: " + url);
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

httplib::Client make_client(const HttpEndpoint& ep, const SplitUrl& u) {
  httplib::Client cli(u.origin);
  cli.set_connection_timeout(ep.timeout);
  cli.set_read_timeout(ep.timeout);
  cli.set_write_timeout(ep.timeout);
  if (!ep.api_key.empty()) cli.set_bearer_token_auth(ep.api_key);
  return cli;
}

// Maps a transport outcome onto the provider error hierarchy.
void check(const httplib::Result& res, const std::string& what) {
  if (!res) {
    const auto err = res.error();
    const auto msg = what + ": " + httplib::to_string(err);
    if (err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read ||
        err == httplib::Error::Write) {
      throw TimeoutError(msg);
    }
    throw TransportError(msg);
  }
  const int status = res->status;
  if (status == 429) throw RateLimitError(what + ": rate limited (HTTP 429)");
  if (status >= 500) throw TransportError(what + ": HTTP " + std::to_string(status));
  if (status >= 400) {
    throw TransportError(what + ": HTTP " + std::to_string(status) + " " + res->body.substr(0, 200), 1, false);
  }
}

nlohmann::json parse_body(const std::string& body, const std::string& what) {
  try {
    return nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    throw UpstreamFormatError(what + ": response is not JSON");
  }
}

std::string chat_content(const nlohmann::json& j, const std::string& what) {
  try {
    const auto& content = j.at("choices").at(0).at("message").at("content");
    if (!content.is_string()) throw UpstreamFormatError(what + ": content is not a string");
    return content.get<std::string>();
  } catch (const nlohmann::json::exception&) {
    throw UpstreamFormatError(what + ": missing choices[0].message.content");
  }
}

std::vector<ImageData> artifacts(const nlohmann::json& j, const std::string& what) {
  std::vector<ImageData> out;
  try {
    for (const auto& a : j.at("artifacts")) out.push_back(base64_decode(a.at("base64").get<std::string>()));
  } catch (const nlohmann::json::exception&) {
    throw UpstreamFormatError(what + ": missing artifacts[].base64");
  } catch (const DecodeError&) {
    throw UpstreamFormatError(what + ": artifact is not valid base64");
  }
  return out;
}

HttpEndpoint endpoint(std::string url, std::string key, std::string model) {
  HttpEndpoint ep;
  ep.url = std::move(url);
  ep.api_key = std::move(key);
  ep.model = std::move(model);
  return ep;
}

std::string env(const char* name) {
  const char* v = std::getenv(name);
  return v ? std::string(v) : std::string();
}

}  // namespace

std::string HttpTextProvider::generate_text(const TextRequest& req) {
  validate(req);
  const auto u = split_url(ep_.url);
  nlohmann::json body = {{"messages", {{{"role", "user"}, {"content", req.prompt}}}},
                         {"max_tokens", req.max_length},
                         {"temperature", req.temperature}};
  if (!ep_.model.empty()) body["model"] = ep_.model;
  const auto payload = body.dump();
  return with_retry(ep_.retry, [&] {
    auto cli = make_client(ep_, u);
    auto res = cli.Post(u.path, payload, "application/json");
    check(res, "text generation");
    return chat_content(parse_body(res->body, "text generation"), "text generation");
  });
}

std::vector<ImageData> HttpImageProvider::generate_images(const ImageRequest& req) {
  validate(req);
  const auto u = split_url(ep_.url);
  const nlohmann::json body = {{"text_prompts", {{{"text", req.prompt}}}},
                               {"width", req.width},
                               {"height", req.height},
                               {"samples", req.count},
                               {"seed", req.seed % 4294967295ULL}};
  const auto payload = body.dump();
  return with_retry(ep_.retry, [&] {
    auto cli = make_client(ep_, u);
    httplib::Headers headers = {{"Accept", "application/json"}};
    auto res = cli.Post(u.path + "/text-to-image", headers, payload, "application/json");
    check(res, "image generation");
    auto images = artifacts(parse_body(res->body, "image generation"), "image generation");
    if (images.size() != static_cast<std::size_t>(req.count)) {
      throw UpstreamFormatError("image generation: expected " + std::to_string(req.count) + " images, got " +
                                std::to_string(images.size()));
    }
    return images;
  });
}

ImageData HttpImageProvider::restyle_image(const ImageEditRequest& req) {
  validate(req);
  const auto u = split_url(ep_.url);
  // The upstream strength means "how much of the source survives".
  const auto keep = format_number(1.0 - req.strength);
  return with_retry(ep_.retry, [&] {
    auto cli = make_client(ep_, u);
    httplib::MultipartFormDataItems items = {
        {"init_image", req.source_image, "init.png", "image/png"},
        {"init_image_mode", "IMAGE_STRENGTH", "", ""},
        {"image_strength", keep, "", ""},
        {"text_prompts[0][text]", req.style_prompt, "", ""},
        {"seed", std::to_string(req.seed % 4294967295ULL), "", ""},
    };
    httplib::Headers headers = {{"Accept", "application/json"}};
    auto res = cli.Post(u.path + "/image-to-image", headers, items);
    check(res, "image restyle");
    auto images = artifacts(parse_body(res->body, "image restyle"), "image restyle");
    if (images.empty()) throw UpstreamFormatError("image restyle: no artifacts returned");
    return images.front();
  });
}

std::string HttpVisionProvider::describe_image(const DescriptionRequest& req) {
  validate(req);
  decode_png(req.image);
  const auto u = split_url(ep_.url);
  nlohmann::json content = nlohmann::json::array();
  content.push_back({{"type", "text"}, {"text", "Provide a brief, one-sentence description of the image content."}});
  content.push_back({{"type", "image_url"},
                     {"image_url", {{"url", "data:image/png;base64," + base64_encode(req.image)}}}});
  nlohmann::json body = {{"messages", {{{"role", "user"}, {"content", content}}}}, {"max_tokens", 120}};
  if (!ep_.model.empty()) body["model"] = ep_.model;
  const auto payload = body.dump();
  return with_retry(ep_.retry, [&] {
    auto cli = make_client(ep_, u);
    auto res = cli.Post(u.path, payload, "application/json");
    check(res, "image description");
    return trim(chat_content(parse_body(res->body, "image description"), "image description"));
  });
}

Providers providers_from_env(const FixtureSet& fixtures, bool force_mock, ProviderMode* mode) {
  Providers p = make_mock_providers(fixtures, true);
  ProviderMode m;
  if (!force_mock) {
    if (auto url = env("TEXTGEN_ENDPOINT"); !url.empty()) {
      p.text = std::make_shared<HttpTextProvider>(endpoint(url, env("TEXTGEN_API_KEY"), env("TEXTGEN_MODEL")));
      m.text_live = true;
    }
    if (auto url = env("IMAGEGEN_ENDPOINT"); !url.empty()) {
      p.image = std::make_shared<HttpImageProvider>(endpoint(url, env("IMAGEGEN_API_KEY"), {}));
      m.image_live = true;
    }
    if (auto url = env("VISION_ENDPOINT"); !url.empty()) {
      p.vision = std::make_shared<HttpVisionProvider>(endpoint(url, env("VISION_API_KEY"), env("VISION_MODEL")));
      m.vision_live = true;
    }
  }
  m.mock = !(m.text_live || m.image_live || m.vision_live);
  if (mode) *mode = m;
  return p;
}

}  // namespace moodcast
