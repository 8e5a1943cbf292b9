#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "frontdoor/engine.hpp"

namespace tscdn {

struct ServeOptions {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  std::optional<std::filesystem::path> ui_dir;
};

// HTTP front end over one engine snapshot. Routes:
//   /api/*, /healthz               JSON
//   /cdn/<hash>.<ext>              stored object bytes
//   /archives/<archive_id>/<page>  rewritten export pages
//   /                              static UI bundle when ui_dir is set
class HttpServer {
 public:
  HttpServer(std::shared_ptr<const Engine> engine, ServeOptions options);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds and serves on a background thread; returns the bound port.
  // Throws Error(io) if the port cannot be bound.
  int start();
  // Binds and serves on the calling thread until stop().
  void run();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace tscdn
