#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "tsteval/prompts.hpp"
#include "tsteval/score_table.hpp"
#include "tsteval/types.hpp"

namespace tsteval {

/// Single text-completion contract; implementations may throw on transport
/// failures, which the batch runner retries.
class CompletionEndpoint {
 public:
  virtual ~CompletionEndpoint() = default;
  virtual std::string complete(const std::string& prompt) = 0;
  virtual std::string model_id() const = 0;
};

struct EndpointConfig {
  std::string base_url;
  std::string path = "/v1/completions";
  std::string model_id;
  std::string auth_token_env;   // name of the environment variable
  double timeout_seconds = 60.0;
  double temperature = 0.0;
  int max_tokens = 16;
};

/// OpenAI-style completions over HTTP(S). Reads the response text from
/// choices[0].text or choices[0].message.content.
std::unique_ptr<CompletionEndpoint> make_http_endpoint(const EndpointConfig& config);

struct JudgeOptions {
  int max_in_flight = 4;
  int max_retries = 3;
  std::chrono::milliseconds initial_backoff{500};
  double backoff_factor = 2.0;
  std::chrono::milliseconds min_interval{0};  // between request starts
  bool offline = false;
};

struct JudgeResponse {
  std::string instance_id;
  TemplateId template_id = TemplateId::style_likert;
  std::string model_id;
  std::string raw_text;
  std::optional<double> parsed;
  bool cached = false;
  bool failed = false;   // retries exhausted
  std::string error;
};

/// sha256 of template, instance and model ids.
std::string judge_cache_key(TemplateId t, std::string_view instance_id, std::string_view model_id);

struct CacheEntry {
  std::string key;
  std::string template_id;
  std::string instance_id;
  std::string model_id;
  std::string prompt;
  std::string raw_text;
  std::string timestamp;
};

/// Append-only cache file of line-delimited records. One writer per file.
class JudgeCache {
 public:
  JudgeCache() = default;
  /// Loads existing records; a missing file is an empty cache. Later
  /// records win for repeated keys.
  explicit JudgeCache(std::filesystem::path path);

  std::optional<CacheEntry> lookup(const std::string& key) const;
  /// Appends to the file immediately (when a path is set).
  void append(CacheEntry entry);
  std::size_t size() const;

 private:
  std::filesystem::path path_;
  mutable std::mutex mu_;
  std::map<std::string, CacheEntry> entries_;
};

struct JudgeStats {
  std::size_t requests = 0;    // network calls made, including retries
  std::size_t cache_hits = 0;
  std::size_t failures = 0;
  std::size_t parse_failures = 0;
};

/// One response per (instance, template) in instance-major order. Offline
/// mode never calls the endpoint and throws DataError naming every missing
/// (instance, template) pair. Endpoint may be null in offline mode.
std::vector<JudgeResponse> judge_batch(const std::vector<EvaluationInstance>& instances,
                                       const std::vector<TemplateId>& templates, CompletionEndpoint* endpoint,
                                       const std::string& model_id, JudgeCache& cache, const JudgeOptions& options,
                                       JudgeStats* stats = nullptr);

/// Raw ratings of one template as a column named "<metric>@<model>".
ScoreColumn judged_column(const std::vector<JudgeResponse>& responses, TemplateId t,
                          const std::vector<std::string>& row_ids);

}  // namespace tsteval
