#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "scistory/error.hpp"
#include "scistory/service/pipeline.hpp"

namespace httplib {
class Server;
}

namespace scistory::service {

// HTTP status for a library error code.
int http_status(ErrorCode code) noexcept;

/// JSON API over a Pipeline. Errors come back as
/// {"error": {"code", "message", "stage"?}} with a matching status. When
/// `ui_dir` exists it is served at "/".
class HttpServer {
 public:
  explicit HttpServer(Pipeline& pipeline, std::filesystem::path ui_dir = {});
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds and returns the port (a free one when `port` is 0); Error{io} on failure.
  int bind(const std::string& host, int port);
  // Blocks until stop().
  void listen();
  void stop();

 private:
  void routes();

  Pipeline& pipeline_;
  std::filesystem::path ui_dir_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace scistory::service
