#include "frontdoor/server.hpp"

#include <thread>

#include <httplib.h>

#include "common/error.hpp"
#include "common/fsutil.hpp"
#include "frontdoor/api.hpp"
#include "frontdoor/pipeline.hpp"
#include "ingest/links.hpp"

namespace tscdn {

namespace fs = std::filesystem;

struct HttpServer::Impl {
  std::shared_ptr<const Engine> engine;
  ServeOptions options;
  httplib::Server server;
  std::thread thread;
  int port = 0;

  void send(httplib::Response& res, const ApiResponse& r) {
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  }

  void send_object(httplib::Response& res, const std::string& name) {
    const StoredObject* obj = is_stored_name(name) ? engine->store().find(name) : nullptr;
    std::optional<std::string> bytes = obj ? engine->store().read_object(name) : std::nullopt;
    if (!bytes) {
      send(res, error_response(Errc::not_found, "no stored object named " + name));
      return;
    }
    res.status = 200;
    res.set_header("Cache-Control", "public, max-age=31536000, immutable");
    res.set_content(std::move(*bytes), content_type_for(obj->extension));
  }

  void install_routes() {
    server.Get("/healthz", [this](const httplib::Request& req, httplib::Response& res) {
      send(res, handle_api(*engine, req.path, params_of(req)));
    });
    server.Get(R"(/api/.*)", [this](const httplib::Request& req, httplib::Response& res) {
      send(res, handle_api(*engine, req.path, params_of(req)));
    });
    server.Get(R"(/cdn/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      send_object(res, req.matches[1]);
    });
    server.Get(R"(/archives/([^/]+)/(?:.*/)?cdn/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      send_object(res, req.matches[2]);
    });
    server.Get(R"(/archives/([^/]+)/(.+))", [this](const httplib::Request& req, httplib::Response& res) {
      std::string archive = req.matches[1];
      auto rel = canonicalize_relative(std::string(req.matches[2]));
      std::optional<std::string> page;
      if (is_valid_slug(archive) && rel)
        page = fsutil::read_file(CdnLayout{engine->store().root()}.rewritten(archive) / fsutil::utf8_path(*rel));
      if (!page) {
        send(res, error_response(Errc::not_found, "no archived page at " + req.path));
        return;
      }
      res.set_content(std::move(*page), content_type_for(extension_of(*rel)));
    });
    if (options.ui_dir && !server.set_mount_point("/", fsutil::path_utf8(*options.ui_dir)))
      throw Error(Errc::not_found, "UI directory not found: " + fsutil::path_utf8(*options.ui_dir));
    server.set_error_handler([this](const httplib::Request& req, httplib::Response& res) {
      if (res.status == 404 && res.body.empty())
        send(res, error_response(Errc::not_found, "no such resource: " + req.path));
    });
  }

  static ApiParams params_of(const httplib::Request& req) {
    ApiParams p;
    for (const auto& [k, v] : req.params) p.emplace(k, v);
    return p;
  }

  void bind() {
    if (options.port == 0) {
      port = server.bind_to_any_port(options.host);
      if (port < 0) throw Error(Errc::io, "cannot bind " + options.host);
    } else {
      if (!server.bind_to_port(options.host, options.port))
        throw Error(Errc::io, "cannot bind " + options.host + ":" + std::to_string(options.port));
      port = options.port;
    }
  }
};

HttpServer::HttpServer(std::shared_ptr<const Engine> engine, ServeOptions options) : impl_(std::make_unique<Impl>()) {
  impl_->engine = std::move(engine);
  impl_->options = std::move(options);
  impl_->install_routes();
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::start() {
  impl_->bind();
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return impl_->port;
}

void HttpServer::run() {
  impl_->bind();
  impl_->server.listen_after_bind();
}

void HttpServer::stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace tscdn
