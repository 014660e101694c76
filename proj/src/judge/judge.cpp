#include "tsteval/judge.hpp"

#include <spdlog/spdlog.h>

#include <atomic>
#include <ctime>
#include <fstream>
#include <thread>
#include <unordered_map>

#include "json.hpp"
#include "tsteval/error.hpp"
#include "tsteval/hashing.hpp"

namespace tsteval {

std::string judge_cache_key(TemplateId t, std::string_view instance_id, std::string_view model_id) {
  std::string s(to_string(t));
  s += '\x1f';
  s += instance_id;
  s += '\x1f';
  s += model_id;
  return sha256_hex(s);
}

JudgeCache::JudgeCache(std::filesystem::path path) : path_(std::move(path)) {
  std::ifstream in(path_);
  if (!in) return;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      CacheEntry e;
      e.key = j.at("key").get<std::string>();
      e.template_id = j.value("template_id", "");
      e.instance_id = j.value("instance_id", "");
      e.model_id = j.value("model_id", "");
      e.prompt = j.value("prompt", "");
      e.raw_text = j.at("raw_text").get<std::string>();
      e.timestamp = j.value("timestamp", "");
      entries_[e.key] = std::move(e);
    } catch (const nlohmann::json::exception& ex) {
      throw DataError("judge cache line " + std::to_string(line_no) + ": " + ex.what());
    }
  }
}

std::optional<CacheEntry> JudgeCache::lookup(const std::string& key) const {
  std::lock_guard lock(mu_);
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void JudgeCache::append(CacheEntry e) {
  std::lock_guard lock(mu_);
  if (!path_.empty()) {
    std::ofstream out(path_, std::ios::app);
    if (!out) throw DataError("cannot append to judge cache " + path_.string());
    nlohmann::ordered_json j;
    j["key"] = e.key;
    j["template_id"] = e.template_id;
    j["instance_id"] = e.instance_id;
    j["model_id"] = e.model_id;
    j["prompt"] = e.prompt;
    j["raw_text"] = e.raw_text;
    j["timestamp"] = e.timestamp;
    out << j.dump() << '\n';
  }
  entries_[e.key] = std::move(e);
}

std::size_t JudgeCache::size() const {
  std::lock_guard lock(mu_);
  return entries_.size();
}

namespace {

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

class RateLimiter {
 public:
  explicit RateLimiter(std::chrono::milliseconds interval) : interval_(interval) {}
  void wait() {
    if (interval_.count() <= 0) return;
    std::chrono::steady_clock::time_point slot;
    {
      std::lock_guard lock(mu_);
      const auto now = std::chrono::steady_clock::now();
      slot = std::max(now, next_);
      next_ = slot + interval_;
    }
    std::this_thread::sleep_until(slot);
  }

 private:
  std::chrono::milliseconds interval_;
  std::mutex mu_;
  std::chrono::steady_clock::time_point next_{};
};

}  // namespace

std::vector<JudgeResponse> judge_batch(const std::vector<EvaluationInstance>& instances,
                                       const std::vector<TemplateId>& templates, CompletionEndpoint* endpoint,
                                       const std::string& model_id, JudgeCache& cache, const JudgeOptions& options,
                                       JudgeStats* stats) {
  struct Job {
    const EvaluationInstance* inst;
    TemplateId t;
    std::string key;
  };
  std::vector<Job> jobs;
  for (const auto& inst : instances)
    for (auto t : templates) jobs.push_back({&inst, t, judge_cache_key(t, inst.instance_id, model_id)});

  std::vector<JudgeResponse> out(jobs.size());
  std::vector<std::size_t> todo;
  JudgeStats local;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    auto& r = out[i];
    r.instance_id = jobs[i].inst->instance_id;
    r.template_id = jobs[i].t;
    r.model_id = model_id;
    if (auto hit = cache.lookup(jobs[i].key)) {
      r.raw_text = hit->raw_text;
      r.cached = true;
      ++local.cache_hits;
    } else {
      todo.push_back(i);
    }
  }
  if (!todo.empty() && options.offline) {
    std::string missing;
    for (auto i : todo) {
      if (!missing.empty()) missing += ", ";
      missing += "(" + jobs[i].inst->instance_id + ", " + std::string(to_string(jobs[i].t)) + ")";
    }
    throw DataError("offline judge: cache misses for " + missing);
  }
  if (!todo.empty() && !endpoint) throw ConfigError("judge needs an endpoint for uncached requests");

  RateLimiter limiter(options.min_interval);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> requests{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= todo.size()) return;
      const auto i = todo[k];
      auto& r = out[i];
      std::string prompt;
      try {
        prompt = render_prompt(jobs[i].t, *jobs[i].inst);
      } catch (const DataError& e) {
        r.failed = true;
        r.error = e.what();
        continue;
      }
      auto backoff = options.initial_backoff;
      for (int attempt = 0;; ++attempt) {
        limiter.wait();
        ++requests;
        try {
          r.raw_text = endpoint->complete(prompt);
          cache.append({jobs[i].key, std::string(to_string(jobs[i].t)), r.instance_id, model_id, prompt, r.raw_text,
                        utc_now()});
          break;
        } catch (const std::exception& e) {
          r.error = e.what();
          if (attempt >= options.max_retries) {
            r.failed = true;
            break;
          }
          spdlog::warn("judge request ({}, {}) failed: {}; retrying", r.instance_id, to_string(jobs[i].t), e.what());
          std::this_thread::sleep_for(backoff);
          backoff = std::chrono::milliseconds(
              static_cast<long long>(static_cast<double>(backoff.count()) * options.backoff_factor));
        }
      }
    }
  };
  const std::size_t n_workers = std::min<std::size_t>(std::max(options.max_in_flight, 1), todo.size());
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  local.requests = requests.load();

  for (auto& r : out) {
    if (r.failed) {
      ++local.failures;
      spdlog::warn("judge ({}, {}) failed: {}", r.instance_id, to_string(r.template_id), r.error);
      continue;
    }
    r.parsed = parse_rating(r.raw_text, rating_kind(r.template_id));
    if (!r.parsed) {
      ++local.parse_failures;
      spdlog::warn("judge ({}, {}): no valid rating in '{}'", r.instance_id, to_string(r.template_id), r.raw_text);
    }
  }
  if (stats) *stats = local;
  return out;
}

ScoreColumn judged_column(const std::vector<JudgeResponse>& responses, TemplateId t,
                          const std::vector<std::string>& row_ids) {
  std::unordered_map<std::string_view, std::size_t> rows;
  for (std::size_t i = 0; i < row_ids.size(); ++i) rows.emplace(row_ids[i], i);
  ScoreColumn col(row_ids.size());
  for (const auto& r : responses) {
    if (r.template_id != t) continue;
    auto it = rows.find(r.instance_id);
    if (it != rows.end()) col[it->second] = r.parsed;
  }
  return col;
}

}  // namespace tsteval
