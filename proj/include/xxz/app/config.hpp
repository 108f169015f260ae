#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "xxz/entanglement.hpp"

namespace xxz::app {

enum class Command { Table, Fig, Sweep, Check };

struct RunConfig {
  Command command = Command::Check;
  int table_id = 0;
  int fig_id = 0;
  // Unset lists fall back to the command's defaults; an empty list is honored.
  std::optional<std::vector<Method>> methods;
  std::optional<std::vector<int>> sizes;
  std::optional<std::vector<double>> deltas;
  std::optional<std::vector<int>> sectors;
  double phi = 0.0;
  TwistConvention convention = TwistConvention::Tabulated;
  std::filesystem::path out;
  int precision = 12;
  std::filesystem::path cache_dir;
  int jobs = 1;
  // Largest chain served by exact diagonalization.
  int ed_max_L = 16;

  void validate() const;
};

// Flat "key = value" lines; '#' starts a comment; blank lines ignored.
std::map<std::string, std::string> parse_config_text(const std::string& text);
std::map<std::string, std::string> read_config_file(const std::filesystem::path& file);

// Keys: method, L, delta, gamma, phi, sectors, convention, out, precision,
// cache, jobs, ed_max_L.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

Method parse_method(const std::string& s);
std::vector<Method> parse_methods(const std::string& s);
std::vector<int> parse_int_list(const std::string& s);
// "a:b:step" ranges or comma lists; pi multiples such as "2pi/3" are accepted.
std::vector<double> parse_real_list(const std::string& s);
double parse_real(const std::string& s);

}  // namespace xxz::app
