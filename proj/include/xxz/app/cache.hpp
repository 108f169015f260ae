#pragma once

#include <atomic>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace xxz::app {

std::uint64_t fnv1a(const std::string& s);

// One file per key, named by the key's FNV-1a hash; the full key is stored
// inside so hash collisions read as misses. Values round-trip exactly.
class ResultCache {
 public:
  ResultCache() = default;
  explicit ResultCache(std::filesystem::path dir);

  bool enabled() const { return !dir_.empty(); }
  const std::filesystem::path& dir() const { return dir_; }

  std::optional<std::vector<double>> get(const std::string& key) const;
  void put(const std::string& key, const std::vector<double>& values) const;
  std::vector<double> fetch(const std::string& key,
                            const std::function<std::vector<double>()>& compute) const;

  // Records that failed to parse and were recomputed.
  int corrupted() const { return corrupted_.load(); }

 private:
  std::filesystem::path file_for(const std::string& key) const;

  std::filesystem::path dir_;
  mutable std::atomic<int> corrupted_{0};
};

// Canonical key from module, operation and parameters, with doubles in hex.
std::string cache_key(const std::string& module, const std::string& op,
                      const std::vector<std::pair<std::string, double>>& params);

}  // namespace xxz::app
