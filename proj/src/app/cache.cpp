#include "xxz/app/cache.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "../textio.hpp"

namespace xxz::app {

namespace {

constexpr const char* kMagic = "xxzent-result 1";

}  // namespace

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string cache_key(const std::string& module, const std::string& op,
                      const std::vector<std::pair<std::string, double>>& params) {
  std::string k = module + "/" + op;
  for (const auto& [name, v] : params) k += " " + name + "=" + detail::hex_double(v);
  return k;
}

ResultCache::ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path ResultCache::file_for(const std::string& key) const {
  char name[32];
  std::snprintf(name, sizeof name, "%016llx.rec", static_cast<unsigned long long>(fnv1a(key)));
  return dir_ / name;
}

std::optional<std::vector<double>> ResultCache::get(const std::string& key) const {
  if (!enabled()) return std::nullopt;
  const auto file = file_for(key);
  std::ifstream in(file, std::ios::binary);
  if (!in) return std::nullopt;
  std::string magic, stored, values, end;
  const bool ok = static_cast<bool>(std::getline(in, magic)) &&
                  static_cast<bool>(std::getline(in, stored)) &&
                  static_cast<bool>(std::getline(in, values)) &&
                  static_cast<bool>(std::getline(in, end));
  auto corrupt = [&]() -> std::optional<std::vector<double>> {
    ++corrupted_;
    std::cerr << "warning: ignoring corrupted cache record " << file.string() << "\n";
    return std::nullopt;
  };
  if (!ok || magic != kMagic || end != "end") return corrupt();
  if (stored != key) return std::nullopt;
  std::vector<double> out;
  std::istringstream vs(values);
  std::string tok;
  while (vs >> tok) {
    const auto v = detail::parse_hex_double(tok);
    if (!v) return corrupt();
    out.push_back(*v);
  }
  return out;
}

void ResultCache::put(const std::string& key, const std::vector<double>& values) const {
  if (!enabled()) return;
  std::string body = std::string(kMagic) + "\n" + key + "\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) body += ' ';
    body += detail::hex_double(values[i]);
  }
  body += "\nend\n";
  detail::atomic_write(file_for(key), body);
}

std::vector<double> ResultCache::fetch(const std::string& key,
                                       const std::function<std::vector<double>()>& compute) const {
  if (auto hit = get(key)) return *hit;
  std::vector<double> v = compute();
  put(key, v);
  return v;
}

}  // namespace xxz::app
