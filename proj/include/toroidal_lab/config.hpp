#pragma once

// Flat key=value run configuration. Lines starting with '#' are comments.
// Real-valued parameters accept every Real token ("1/3", "sqrt(2)", "golden", ...).

#include "toroidal_lab/group_core.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tlab {

struct RunConfig {
  Real tau_re = Real::from_int(0);
  Real tau_im = Real::from_int(1);
  Real p = Real::from_int(0);
  Real q = Real::from_surd(0, 1, 2);
  Real theta1 = Real::from_int(0);
  Real theta2 = Real::from_rational(Rational(1, 3));
  int precision_bits = 53;
  std::int64_t N = 1000;       // scan depth
  int box = 16;                // eta box (divisors, margins, resonance search)
  int box_m = 16;              // xi box of the divisor table
  int trunc = 32;              // eta-mode truncation of the dbar solve
  double tol = 1e-6;           // residual tolerance (solve) / quadrature tolerance (verify)
  double delta0 = 0.25;
  double margin_a = 0.1;       // exponent a of the (H)'_S and Kazama margins
  std::string recipe = "smooth";
  std::string select = "all";  // verify: "all", "" or a list such as "1,3,5-7"
  std::string out = ".";
  std::uint64_t seed = 20240601;
  std::string format = "json";
};

// ParseError on unknown keys, malformed lines or values.
RunConfig parse_config(std::string_view text);
// Applies one key=value on top of an existing config.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);
// Canonical text: fixed key order, canonical Real tokens, %.17g doubles.
std::string serialize_config(const RunConfig& cfg);

GroupParams to_params(const RunConfig& cfg);

// "all" -> 1..count, "" or "none" -> empty, otherwise a comma list of ids and ranges.
std::vector<int> parse_selection(const std::string& s, int count);

}  // namespace tlab
