#include "scistory/service/http_server.hpp"

#include <sstream>

#include <httplib.h>

#include "scistory/error.hpp"

namespace scistory::service {

using nlohmann::json;

int http_status(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::not_found:
      return 404;
    case ErrorCode::too_large:
      return 413;
    case ErrorCode::empty_collection:
      return 409;
    case ErrorCode::parameter:
    case ErrorCode::schema:
    case ErrorCode::empty_document:
    case ErrorCode::oversize_sentence:
    case ErrorCode::metadata:
    case ErrorCode::parse:
    case ErrorCode::validation:
      return 400;
    default:
      return 500;
  }
}

namespace {

void send_json(httplib::Response& res, const json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), "application/json; charset=utf-8");
}

void send_error(httplib::Response& res, const Error& e) {
  json err = {{"code", to_string(e.code())}, {"message", e.what()}};
  if (const auto* s = dynamic_cast<const StageError*>(&e)) err["stage"] = s->stage();
  send_json(res, {{"error", err}}, http_status(e.code()));
}

// Wraps a handler so library errors become JSON error responses.
template <class Fn>
httplib::Server::Handler guarded(Fn fn) {
  return [fn](const httplib::Request& req, httplib::Response& res) {
    try {
      fn(req, res);
    } catch (const Error& e) {
      send_error(res, e);
    } catch (const json::exception& e) {
      send_error(res, Error(ErrorCode::parse, std::string("bad JSON body: ") + e.what()));
    }
  };
}

std::string query(const httplib::Request& req, const char* key, const std::string& fallback) {
  return req.has_param(key) ? req.get_param_value(key) : fallback;
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

json body_json(const httplib::Request& req) {
  try {
    return json::parse(req.body);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::parse, std::string("request body is not JSON: ") + e.what());
  }
}

std::string string_field(const json& body, const char* key) {
  const auto it = body.find(key);
  if (it == body.end() || it->is_null()) return {};
  if (!it->is_string()) throw Error(ErrorCode::schema, std::string("'") + key + "' must be a string");
  return it->get<std::string>();
}

}  // namespace

HttpServer::HttpServer(Pipeline& pipeline, std::filesystem::path ui_dir)
    : pipeline_(pipeline), ui_dir_(std::move(ui_dir)), server_(std::make_unique<httplib::Server>()) {
  server_->set_payload_max_length(2 * kMaxUploadBytes + 4096);
  routes();
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = server_->bind_to_any_port(host);
    if (bound < 0) throw Error(ErrorCode::io, "cannot bind " + host);
    return bound;
  }
  if (!server_->bind_to_port(host, port)) throw Error(ErrorCode::io, "cannot bind " + host + ":" + std::to_string(port));
  return port;
}

void HttpServer::listen() { server_->listen_after_bind(); }

void HttpServer::stop() {
  if (server_ && server_->is_running()) server_->stop();
}

void HttpServer::routes() {
  auto& s = *server_;
  Pipeline& p = pipeline_;

  s.Post("/api/documents", guarded([&p](const httplib::Request& req, httplib::Response& res) {
    if (req.body.size() > 2 * kMaxUploadBytes) {
      throw StageError("upload", Error(ErrorCode::too_large, "request body too large"));
    }
    const json body = body_json(req);
    if (!body.is_object()) throw Error(ErrorCode::schema, "request body must be an object");
    const text::DocumentMeta meta{string_field(body, "title"), string_field(body, "pub_date")};
    std::string raw;
    text::InputFormat format = text::InputFormat::plain;
    if (body.contains("structured")) {
      raw = body["structured"].dump();
      format = text::InputFormat::structured;
    } else if (body.contains("text")) {
      raw = string_field(body, "text");
    } else {
      throw Error(ErrorCode::schema, "body needs 'text' or 'structured'");
    }
    const auto record = p.analyze_document(raw, format, meta);
    send_json(res, {{"doc_id", record.document.id}}, 201);
  }));

  s.Get("/api/documents", guarded([&p](const httplib::Request&, httplib::Response& res) {
    send_json(res, repository::to_json(p.repository().list()));
  }));

  s.Get("/api/documents/:id/storyline", guarded([&p](const httplib::Request& req, httplib::Response& res) {
    const auto granularity = storyline::granularity_from_string(query(req, "granularity", "paragraph"));
    const auto layout = p.get_storyline(req.path_params.at("id"), granularity, split_csv(query(req, "entities", "")));
    send_json(res, storyline::to_json(layout));
  }));

  s.Get("/api/documents/:id/text", guarded([&p](const httplib::Request& req, httplib::Response& res) {
    send_json(res, p.text_view(req.path_params.at("id")));
  }));

  s.Get("/api/documents/:id/entities", guarded([&p](const httplib::Request& req, httplib::Response& res) {
    send_json(res, p.entity_ranking(req.path_params.at("id")));
  }));

  s.Get("/api/documents/:id/cooccurrence", guarded([&p](const httplib::Request& req, httplib::Response& res) {
    const auto level = analytics::level_from_string(query(req, "level", "sentence"));
    send_json(res, p.cooccurrence_view(req.path_params.at("id"), level));
  }));

  s.Get("/api/collection/evolution", guarded([&p](const httplib::Request&, httplib::Response& res) {
    send_json(res, evolution_json(p.get_collection_views()));
  }));

  s.Get("/api/collection/communities", guarded([&p](const httplib::Request&, httplib::Response& res) {
    send_json(res, communities_json(p.get_collection_views()));
  }));

  s.Post("/api/gazetteer", guarded([&p](const httplib::Request& req, httplib::Response& res) {
    const json body = body_json(req);
    if (!body.is_object()) throw Error(ErrorCode::schema, "request body must be an object");
    entities::GazetteerEntry entry{string_field(body, "id"), string_field(body, "canonical"), {}};
    if (body.contains("aliases")) {
      if (!body["aliases"].is_array()) throw Error(ErrorCode::schema, "'aliases' must be an array of strings");
      for (const auto& a : body["aliases"]) {
        if (!a.is_string()) throw Error(ErrorCode::schema, "'aliases' must be an array of strings");
        entry.aliases.push_back(a.get<std::string>());
      }
    }
    const auto stored = p.update_gazetteer(std::move(entry));
    send_json(res, {{"id", stored.id}, {"canonical", stored.canonical}, {"aliases", stored.aliases}});
  }));

  if (!ui_dir_.empty() && std::filesystem::is_directory(ui_dir_)) s.set_mount_point("/", ui_dir_.string());
}

}  // namespace scistory::service
