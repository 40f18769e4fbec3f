#pragma once

#include <memory>
#include <string>

#include "moodcast/service.hpp"

namespace moodcast {

/// JSON over HTTP for the editor UI. Errors are returned as
/// {"error": {"kind": ..., "message": ...}} with a status derived from the
/// error kind (see http_status).
class ApiServer {
 public:
  explicit ApiServer(std::shared_ptr<CampaignService> service);
  ~ApiServer();
  ApiServer(const ApiServer&) = delete;
  ApiServer& operator=(const ApiServer&) = delete;

  /// Binds without serving. Port 0 picks a free port; returns the bound port.
  int bind(const std::string& host, int port);
  /// Serves until stop(); requires a prior bind().
  void run();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

int http_status(ErrorKind kind) noexcept;

}  // namespace moodcast
