#include <httplib.h>

#include <fmt/format.h>

#include "figura/service.hpp"

namespace figura {

struct HttpServer::Impl {
  explicit Impl(MetaphorService& s) : service(s) {}
  MetaphorService& service;
  httplib::Server server;
  bool bound = false;
};

namespace {

void send(httplib::Response& res, const ApiResponse& api) {
  res.status = api.status;
  res.set_content(api.body.dump(), "application/json");
}

std::optional<std::string> query(const httplib::Request& req, const char* key) {
  if (!req.has_param(key)) return std::nullopt;
  return req.get_param_value(key);
}

}  // namespace

HttpServer::HttpServer(MetaphorService& service) : impl_(std::make_unique<Impl>(service)) {
  auto& svr = impl_->server;
  auto& api = impl_->service;

  svr.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                           {"Access-Control-Allow-Headers", "Content-Type"},
                           {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  svr.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  svr.Post("/session", [&api](const httplib::Request&, httplib::Response& res) {
    send(res, api.create_session());
  });
  svr.Post(R"(/session/([^/]+)/message)", [&api](const httplib::Request& req, httplib::Response& res) {
    send(res, api.post_message(req.matches[1].str(), std::string_view(req.body)));
  });
  svr.Get(R"(/session/([^/]+))", [&api](const httplib::Request& req, httplib::Response& res) {
    send(res, api.get_session(req.matches[1].str()));
  });
  svr.Get("/metrics", [&api](const httplib::Request&, httplib::Response& res) {
    send(res, api.get_metrics());
  });
  svr.Post("/generate", [&api](const httplib::Request& req, httplib::Response& res) {
    send(res, api.batch_generate(std::string_view(req.body)));
  });
  svr.Get("/metaphors", [&api](const httplib::Request& req, httplib::Response& res) {
    send(res, api.list_metaphors(query(req, "target"), query(req, "pos")));
  });

  svr.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
    if (!res.body.empty()) return;
    const auto code = res.status == 404 ? ApiErrorCode::not_found
                      : res.status >= 500 ? ApiErrorCode::internal
                                          : ApiErrorCode::bad_request;
    const int status = res.status;
    send(res, ApiResponse::error(code, fmt::format("{} {}", req.method, req.path)));
    res.status = status;
  });
  svr.set_exception_handler(
      [](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        std::string message = "unexpected error";
        try {
          std::rethrow_exception(ep);
        } catch (const std::exception& e) {
          message = e.what();
        } catch (...) {
        }
        send(res, ApiResponse::error(ApiErrorCode::internal, message));
      });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  int bound = port;
  if (port == 0) {
    bound = impl_->server.bind_to_any_port(host);
    if (bound < 0) throw Error(fmt::format("cannot bind {}", host));
  } else if (!impl_->server.bind_to_port(host, port)) {
    throw Error(fmt::format("cannot bind {}:{}", host, port));
  }
  impl_->bound = true;
  return bound;
}

void HttpServer::listen() {
  if (!impl_->bound) throw PreconditionError("HttpServer::listen before bind");
  impl_->server.listen_after_bind();
}

void HttpServer::stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

bool HttpServer::running() const { return impl_->server.is_running(); }

}  // namespace figura
