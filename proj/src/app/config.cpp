#include "xxz/app/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "xxz/errors.hpp"

namespace xxz::app {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(trim(cur));
  return parts;
}

double plain_number(const std::string& s) {
  double v = 0.0;
  const char* b = s.data();
  const char* e = b + s.size();
  if (b != e && *b == '+') ++b;
  auto res = std::from_chars(b, e, v);
  if (b == e || res.ec != std::errc() || res.ptr != e) throw UsageError("not a number: '" + s + "'");
  return v;
}

int plain_int(const std::string& s) {
  int v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw UsageError("not an integer: '" + s + "'");
  return v;
}

}  // namespace

double parse_real(const std::string& raw) {
  const std::string s = trim(raw);
  const auto at = s.find("pi");
  if (at == std::string::npos) return plain_number(s);
  // [sign][k]pi[/m]
  std::string head = s.substr(0, at);
  double k = 1.0;
  if (head == "-") k = -1.0;
  else if (head == "+" || head.empty()) k = 1.0;
  else k = plain_number(head);
  const std::string tail = s.substr(at + 2);
  double m = 1.0;
  if (!tail.empty()) {
    if (tail[0] != '/') throw UsageError("not a number: '" + s + "'");
    m = plain_number(tail.substr(1));
    if (m == 0.0) throw UsageError("division by zero in '" + s + "'");
  }
  return k * std::numbers::pi / m;
}

std::vector<double> parse_real_list(const std::string& raw) {
  const std::string s = trim(raw);
  std::vector<double> out;
  if (s.empty()) return out;
  if (s.find(':') != std::string::npos) {
    const auto parts = split(s, ':');
    if (parts.size() != 3) throw UsageError("range must be a:b:step, got '" + s + "'");
    const double a = parse_real(parts[0]), b = parse_real(parts[1]), step = parse_real(parts[2]);
    if (!(step > 0.0)) throw UsageError("range step must be positive");
    if (b < a) throw UsageError("range end precedes start");
    const long n = std::lround(std::floor((b - a) / step + 1e-9)) + 1;
    if (n > 1000000) throw UsageError("range too long");
    for (long i = 0; i < n; ++i) {
      double v = a + static_cast<double>(i) * step;
      if (std::abs(v) < 1e-12 * step) v = 0.0;
      out.push_back(v);
    }
    return out;
  }
  for (const auto& p : split(s, ',')) out.push_back(parse_real(p));
  return out;
}

std::vector<int> parse_int_list(const std::string& raw) {
  const std::string s = trim(raw);
  std::vector<int> out;
  if (s.empty()) return out;
  for (const auto& p : split(s, ',')) out.push_back(plain_int(p));
  return out;
}

Method parse_method(const std::string& raw) {
  const std::string s = trim(raw);
  if (s == "ed") return Method::ED;
  if (s == "bethe") return Method::Bethe;
  if (s == "ff") return Method::FreeFermion;
  if (s == "cft") return Method::CFT;
  throw UsageError("unknown method '" + s + "' (expected ed, bethe, ff or cft)");
}

std::vector<Method> parse_methods(const std::string& raw) {
  std::vector<Method> out;
  if (trim(raw).empty()) return out;
  for (const auto& p : split(raw, ',')) {
    const Method m = parse_method(p);
    bool seen = false;
    for (Method q : out) seen = seen || q == m;
    if (!seen) out.push_back(m);
  }
  return out;
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw UsageError("config line " + std::to_string(lineno) + ": empty key");
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

std::map<std::string, std::string> read_config_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw UsageError("cannot read config file " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "method") {
    cfg.methods = parse_methods(value);
  } else if (key == "L") {
    cfg.sizes = parse_int_list(value);
  } else if (key == "delta") {
    cfg.deltas = parse_real_list(value);
  } else if (key == "gamma") {
    std::vector<double> d;
    for (double g : parse_real_list(value)) {
      double v = -std::cos(g);
      if (std::abs(v) < 1e-15) v = 0.0;
      d.push_back(v);
    }
    cfg.deltas = d;
  } else if (key == "phi") {
    cfg.phi = parse_real(value);
  } else if (key == "sectors") {
    cfg.sectors = parse_int_list(value);
  } else if (key == "convention") {
    const std::string v = trim(value);
    if (v == "tabulated") cfg.convention = TwistConvention::Tabulated;
    else if (v == "consistent") cfg.convention = TwistConvention::Consistent;
    else throw UsageError("convention must be tabulated or consistent");
  } else if (key == "out") {
    cfg.out = trim(value);
  } else if (key == "precision") {
    cfg.precision = plain_int(trim(value));
  } else if (key == "cache") {
    cfg.cache_dir = trim(value);
  } else if (key == "jobs") {
    cfg.jobs = plain_int(trim(value));
  } else if (key == "ed_max_L") {
    cfg.ed_max_L = plain_int(trim(value));
  } else {
    throw UsageError("unknown setting '" + key + "'");
  }
}

void RunConfig::validate() const {
  if (precision < 6 || precision > 15) throw UsageError("precision must lie in [6, 15]");
  if (jobs < 1) throw UsageError("jobs must be positive");
  if (ed_max_L < 4) throw UsageError("ed_max_L must be at least 4");
  if (command == Command::Table && (table_id < 1 || table_id > 5))
    throw UsageError("table id must lie in 1..5");
  if (command == Command::Fig && (fig_id < 1 || fig_id > 2))
    throw UsageError("fig id must be 1 or 2");
  if (sizes)
    for (int L : *sizes)
      if (L < 4 || L % 2 != 0) throw UsageError("chain lengths must be even and at least 4");
  if (sectors)
    for (int n : *sectors)
      if (n < 0) throw UsageError("sector indices must be non-negative");
  if (!std::isfinite(phi)) throw UsageError("phi must be finite");
}

}  // namespace xxz::app
