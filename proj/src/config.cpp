#include "toroidal_lab/config.hpp"

#include "toroidal_lab/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

namespace tlab {

namespace {

std::string trim(std::string_view s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string_view::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return std::string(s.substr(a, b - a + 1));
}

template <class T>
T parse_integer(const std::string& key, const std::string& v) {
  T out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) throw ParseError("bad integer for " + key + ": '" + v + "'");
  return out;
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw ParseError("");
    return d;
  } catch (const std::exception&) {
    throw ParseError("bad number for " + key + ": '" + v + "'");
  }
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Real parse_real(const std::string& key, const std::string& v, int bits) {
  try {
    return Real::parse(v, bits);
  } catch (const ParseError& e) {
    throw ParseError(key + ": " + e.what());
  } catch (const DomainError& e) {
    throw ParseError(key + ": " + e.what());
  }
}

}  // namespace

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  const int bits = cfg.precision_bits;
  if (key == "tau_re") cfg.tau_re = parse_real(key, v, bits);
  else if (key == "tau_im") cfg.tau_im = parse_real(key, v, bits);
  else if (key == "p") cfg.p = parse_real(key, v, bits);
  else if (key == "q") cfg.q = parse_real(key, v, bits);
  else if (key == "theta1") cfg.theta1 = parse_real(key, v, bits);
  else if (key == "theta2") cfg.theta2 = parse_real(key, v, bits);
  else if (key == "precision_bits") {
    cfg.precision_bits = parse_integer<int>(key, v);
    if (cfg.precision_bits < 53) throw ParseError("precision_bits must be at least 53");
  } else if (key == "N") cfg.N = parse_integer<std::int64_t>(key, v);
  else if (key == "box") cfg.box = parse_integer<int>(key, v);
  else if (key == "box_m") cfg.box_m = parse_integer<int>(key, v);
  else if (key == "trunc") cfg.trunc = parse_integer<int>(key, v);
  else if (key == "tol") cfg.tol = parse_double(key, v);
  else if (key == "delta0") cfg.delta0 = parse_double(key, v);
  else if (key == "margin_a") cfg.margin_a = parse_double(key, v);
  else if (key == "recipe") cfg.recipe = v;
  else if (key == "select") cfg.select = v;
  else if (key == "out") cfg.out = v;
  else if (key == "seed") cfg.seed = parse_integer<std::uint64_t>(key, v);
  else if (key == "format") {
    if (v != "json" && v != "csv") throw ParseError("format must be json or csv");
    cfg.format = v;
  } else {
    throw ParseError("unknown key '" + key + "'");
  }
}

RunConfig parse_config(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> kv;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ParseError("line " + std::to_string(lineno) + ": expected key=value");
    kv.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  RunConfig cfg;
  // precision first: it governs how decimal tokens are read
  for (const auto& [k, v] : kv)
    if (k == "precision_bits") apply_setting(cfg, k, v);
  for (const auto& [k, v] : kv)
    if (k != "precision_bits") apply_setting(cfg, k, v);
  return cfg;
}

std::string serialize_config(const RunConfig& cfg) {
  std::map<std::string, std::string> kv{
      {"N", std::to_string(cfg.N)},
      {"box", std::to_string(cfg.box)},
      {"box_m", std::to_string(cfg.box_m)},
      {"delta0", format_double(cfg.delta0)},
      {"format", cfg.format},
      {"margin_a", format_double(cfg.margin_a)},
      {"out", cfg.out},
      {"p", cfg.p.canonical()},
      {"precision_bits", std::to_string(cfg.precision_bits)},
      {"q", cfg.q.canonical()},
      {"recipe", cfg.recipe},
      {"seed", std::to_string(cfg.seed)},
      {"select", cfg.select},
      {"tau_im", cfg.tau_im.canonical()},
      {"tau_re", cfg.tau_re.canonical()},
      {"theta1", cfg.theta1.canonical()},
      {"theta2", cfg.theta2.canonical()},
      {"tol", format_double(cfg.tol)},
      {"trunc", std::to_string(cfg.trunc)},
  };
  std::string out;
  for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
  return out;
}

GroupParams to_params(const RunConfig& cfg) {
  return GroupParams(cplx(cfg.tau_re.to_double(), cfg.tau_im.to_double()), cfg.p, cfg.q, cfg.precision_bits);
}

std::vector<int> parse_selection(const std::string& s, int count) {
  const std::string t = trim(s);
  std::vector<int> out;
  if (t == "all") {
    for (int i = 1; i <= count; ++i) out.push_back(i);
    return out;
  }
  if (t.empty() || t == "none") return out;
  std::set<int> ids;
  std::stringstream ss(t);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto dash = item.find('-');
    int lo, hi;
    if (dash == std::string::npos) {
      lo = hi = parse_integer<int>("select", item);
    } else {
      lo = parse_integer<int>("select", trim(item.substr(0, dash)));
      hi = parse_integer<int>("select", trim(item.substr(dash + 1)));
    }
    if (lo < 1 || hi > count || lo > hi) throw ParseError("selection out of range: '" + item + "'");
    for (int i = lo; i <= hi; ++i) ids.insert(i);
  }
  return {ids.begin(), ids.end()};
}

}  // namespace tlab
