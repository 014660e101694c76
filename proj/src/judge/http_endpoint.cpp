#include <cstdlib>

#include "httplib.h"
#include "json.hpp"
#include "tsteval/error.hpp"
#include "tsteval/judge.hpp"

namespace tsteval {
namespace {

class HttpEndpoint final : public CompletionEndpoint {
 public:
  explicit HttpEndpoint(EndpointConfig c) : c_(std::move(c)) {
    if (c_.base_url.empty()) throw ConfigError("judge endpoint needs base_url");
    if (c_.model_id.empty()) throw ConfigError("judge endpoint needs model_id");
    if (!c_.auth_token_env.empty())
      if (const char* v = std::getenv(c_.auth_token_env.c_str())) token_ = v;
  }

  std::string model_id() const override { return c_.model_id; }

  std::string complete(const std::string& prompt) override {
    httplib::Client client(c_.base_url);
    const auto secs = static_cast<time_t>(c_.timeout_seconds);
    client.set_connection_timeout(secs);
    client.set_read_timeout(secs);
    httplib::Headers headers;
    if (!token_.empty()) headers.emplace("Authorization", "Bearer " + token_);
    nlohmann::json body = {{"model", c_.model_id},
                           {"prompt", prompt},
                           {"temperature", c_.temperature},
                           {"max_tokens", c_.max_tokens}};
    auto res = client.Post(c_.path, headers, body.dump(), "application/json");
    if (!res) throw Error("http error: " + httplib::to_string(res.error()));
    if (res->status != 200) throw Error("http status " + std::to_string(res->status));
    const auto j = nlohmann::json::parse(res->body, nullptr, false);
    if (j.is_discarded()) throw Error("endpoint returned non-JSON body");
    try {
      const auto& choice = j.at("choices").at(0);
      if (choice.contains("text")) return choice.at("text").get<std::string>();
      return choice.at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception&) {
      throw Error("endpoint response lacks choices[0].text");
    }
  }

 private:
  EndpointConfig c_;
  std::string token_;
};

}  // namespace

std::unique_ptr<CompletionEndpoint> make_http_endpoint(const EndpointConfig& config) {
  return std::make_unique<HttpEndpoint>(config);
}

}  // namespace tsteval
