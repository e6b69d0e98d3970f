#include "amrst/remote_client.hpp"

#include <chrono>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "amrst/errors.hpp"

namespace amrst {

struct RemoteBackendClient::Impl {
  RemoteConfig config;
  httplib::Client http;
  std::size_t repairs = 0;

  explicit Impl(RemoteConfig cfg) : config(std::move(cfg)), http(config.endpoint) {
    http.set_connection_timeout(0, config.timeout_ms * 1000);
    http.set_read_timeout(config.timeout_ms / 1000, (config.timeout_ms % 1000) * 1000);
    http.set_write_timeout(config.timeout_ms / 1000, (config.timeout_ms % 1000) * 1000);
    http.set_keep_alive(true);
  }

  static bool transient(const httplib::Result& res) {
    if (!res) return true;  // transport error including timeouts
    return res->status >= 500;
  }

  [[noreturn]] static void raise_transport(const httplib::Result& res, const std::string& what) {
    if (!res) {
      const auto err = res.error();
      if (err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read ||
          err == httplib::Error::Write)
        throw BackendError(BackendError::Kind::Timeout, what + ": timed out");
      throw BackendError(BackendError::Kind::Unreachable,
                         what + ": " + httplib::to_string(err));
    }
    throw BackendError(BackendError::Kind::HttpStatus,
                       what + ": HTTP " + std::to_string(res->status));
  }

  nlohmann::json round_trip(const std::string& method, const std::string& path,
                            const nlohmann::json* body) {
    const std::string what = method + " " + path;
    httplib::Result res;
    for (int attempt = 0; attempt <= config.retries; ++attempt) {
      if (body)
        res = http.Post(path, body->dump(), "application/json");
      else
        res = http.Get(path);
      if (res && res->status >= 200 && res->status < 300) {
        try {
          return nlohmann::json::parse(res->body);
        } catch (const nlohmann::json::exception& e) {
          throw BackendError(BackendError::Kind::Protocol,
                             what + ": malformed JSON response: " + e.what());
        }
      }
      if (res && res->status >= 400 && res->status < 500)
        throw BackendError(BackendError::Kind::HttpStatus,
                           what + ": HTTP " + std::to_string(res->status));
      if (attempt == config.retries || !transient(res)) break;
    }
    raise_transport(res, what);
  }

  std::string string_field(const nlohmann::json& j, const char* field, const std::string& what) {
    if (!j.contains(field) || !j[field].is_string())
      throw BackendError(BackendError::Kind::Protocol,
                         what + ": response lacks string field '" + field + "'");
    return j[field].get<std::string>();
  }
};

RemoteBackendClient::RemoteBackendClient(RemoteConfig config)
    : impl_(std::make_unique<Impl>(std::move(config))) {}

RemoteBackendClient::~RemoteBackendClient() = default;

AmrGraph RemoteBackendClient::encode(const std::string& text) {
  nlohmann::json body{{"text", text}};
  const auto res = impl_->round_trip("POST", "/encode", &body);
  const std::string penman = impl_->string_field(res, "penman", "POST /encode");
  try {
    return parse_penman(penman);
  } catch (const ParseError&) {
    ++impl_->repairs;
    return parse_penman_lenient(penman);
  }
}

std::string RemoteBackendClient::decode(const AmrGraph& graph, const std::string& style) {
  nlohmann::json body{{"penman", serialize_penman(graph)}, {"style", style}};
  const auto res = impl_->round_trip("POST", "/decode", &body);
  return impl_->string_field(res, "text", "POST /decode");
}

std::string RemoteBackendClient::stylize(const std::string& text, const std::string& style) {
  nlohmann::json body{{"text", text}, {"style", style}};
  const auto res = impl_->round_trip("POST", "/stylize", &body);
  return impl_->string_field(res, "text", "POST /stylize");
}

void RemoteBackendClient::finetune(const std::string& role, const std::string& style,
                                   const std::vector<std::pair<std::string, AmrGraph>>& pairs) {
  nlohmann::json body;
  body["role"] = role;
  if (!style.empty()) body["style"] = style;
  auto arr = nlohmann::json::array();
  for (const auto& [text, graph] : pairs)
    arr.push_back({{"text", text}, {"penman", serialize_penman(graph)}});
  body["pairs"] = std::move(arr);
  const auto res = impl_->round_trip("POST", "/finetune", &body);
  const std::string job = impl_->string_field(res, "job", "POST /finetune");

  const std::string poll_path = "/finetune/" + job;
  for (int poll = 0; poll < impl_->config.max_polls; ++poll) {
    const auto status_res = impl_->round_trip("GET", poll_path, nullptr);
    const std::string status = impl_->string_field(status_res, "status", "GET " + poll_path);
    if (status == "done") return;
    if (status == "failed")
      throw BackendError(BackendError::Kind::Protocol, "fine-tune job " + job + " failed");
    if (status != "running")
      throw BackendError(BackendError::Kind::Protocol,
                         "fine-tune job " + job + " reported unknown status '" + status + "'");
    std::this_thread::sleep_for(std::chrono::milliseconds(impl_->config.poll_interval_ms));
  }
  throw BackendError(BackendError::Kind::Timeout,
                     "fine-tune job " + job + " did not finish within the polling budget");
}

std::pair<std::string, double> RemoteBackendClient::classify(const std::string& text) {
  nlohmann::json body{{"text", text}};
  const auto res = impl_->round_trip("POST", "/classify", &body);
  const std::string style = impl_->string_field(res, "style", "POST /classify");
  double confidence = 0.0;
  if (res.contains("confidence") && res["confidence"].is_number())
    confidence = res["confidence"].get<double>();
  return {style, confidence};
}

bool RemoteBackendClient::reachable() {
  auto res = impl_->http.Get("/finetune/__health");
  return static_cast<bool>(res);  // any HTTP answer counts, including 404
}

std::size_t RemoteBackendClient::repair_count() const { return impl_->repairs; }

namespace {

class RemoteEncoder : public EncoderBackend {
 public:
  explicit RemoteEncoder(std::shared_ptr<RemoteBackendClient> client)
      : client_(std::move(client)) {}
  AmrGraph to_amr(const std::string& sentence) override { return client_->encode(sentence); }
  void fine_tune(const std::vector<std::pair<std::string, AmrGraph>>& pairs) override {
    client_->finetune("encoder", "", pairs);
  }

 private:
  std::shared_ptr<RemoteBackendClient> client_;
};

class RemoteDecoder : public DecoderBackend {
 public:
  RemoteDecoder(std::shared_ptr<RemoteBackendClient> client, std::string style)
      : client_(std::move(client)), style_(std::move(style)) {}
  std::string to_text(const AmrGraph& graph) override { return client_->decode(graph, style_); }
  void fine_tune(const std::vector<std::pair<std::string, AmrGraph>>& pairs) override {
    client_->finetune("decoder", style_, pairs);
  }

 private:
  std::shared_ptr<RemoteBackendClient> client_;
  std::string style_;
};

class RemoteStyler : public StylerBackend {
 public:
  explicit RemoteStyler(std::shared_ptr<RemoteBackendClient> client)
      : client_(std::move(client)) {}
  std::string stylize(const std::string& sentence, const std::string& style) override {
    return client_->stylize(sentence, style);
  }

 private:
  std::shared_ptr<RemoteBackendClient> client_;
};

}  // namespace

Backends make_remote_backends(std::shared_ptr<RemoteBackendClient> client,
                              const std::vector<std::string>& styles) {
  Backends b;
  b.encoder = std::make_shared<RemoteEncoder>(client);
  b.styler = std::make_shared<RemoteStyler>(client);
  for (const auto& style : styles)
    b.decoders[style] = std::make_shared<RemoteDecoder>(client, style);
  return b;
}

}  // namespace amrst
