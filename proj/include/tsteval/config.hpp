#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tsteval/registry.hpp"
#include "tsteval/types.hpp"

namespace tsteval {

/// Command-line overrides of single config keys.
struct ConfigOverrides {
  std::optional<std::string> mode;
  std::optional<std::string> dimension;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
};

/// One run's declarative configuration. Relative paths resolve against the
/// directory holding the config file.
class RunConfig {
 public:
  static RunConfig load(const std::filesystem::path& path, const ConfigOverrides& overrides = {});
  static RunConfig from_json(nlohmann::json j, std::filesystem::path base_dir, const ConfigOverrides& overrides = {});

  const nlohmann::json& json() const { return j_; }
  /// sha256 of the canonical (sorted-key) JSON after overrides.
  const std::string& hash() const { return hash_; }
  const std::filesystem::path& base_dir() const { return base_; }

  std::filesystem::path resolve(const std::string& p) const;
  std::optional<std::filesystem::path> path(const char* key) const;
  std::filesystem::path required_path(const char* key) const;
  std::filesystem::path output_dir() const;

  Mode mode() const;
  std::optional<Dimension> dimension() const;
  std::uint64_t seed() const;
  int workers() const;
  std::vector<std::string> metrics() const;
  /// Score tables consumed by downstream commands; defaults to
  /// <output_dir>/scores.tsv.
  std::vector<std::filesystem::path> score_inputs() const;
  Registry registry() const;

  /// Nested lookup with a default, e.g. get<int>("smatch", "restarts", 4).
  template <class T>
  T get(const char* section, const char* key, T fallback) const {
    auto s = j_.find(section);
    if (s == j_.end() || !s->is_object()) return fallback;
    auto v = s->find(key);
    if (v == s->end() || v->is_null()) return fallback;
    try {
      return v->get<T>();
    } catch (const nlohmann::json::exception&) {
      throw_type(section, key);
    }
  }

 private:
  [[noreturn]] static void throw_type(const char* section, const char* key);

  nlohmann::json j_;
  std::filesystem::path base_;
  std::string hash_;
};

}  // namespace tsteval
