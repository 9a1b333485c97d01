#include "toroidal_lab/report.hpp"

#include "toroidal_lab/errors.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace tlab {

namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json num(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

std::string quote(const std::string& s) { return Json(s).dump(); }

void dump(const Json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += inner + quote(it.key()) + ": ";
        dump(it.value(), out, indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[";
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += ", ";
        first = false;
        dump(e, out, indent + 1);
      }
      out += "]";
      return;
    }
    case Json::value_t::number_float:
      if (std::isfinite(j.get<double>()))
        out += fmt(j.get<double>());
      else
        out += num(j.get<double>()).dump();
      return;
    default:
      out += j.dump();
  }
}

Json mode_json(const std::vector<int>& m) { return Json(m); }

}  // namespace

std::string dump_json(const Json& j) {
  std::string out;
  dump(j, out, 0);
  out += "\n";
  return out;
}

Json to_json(const RunConfig& cfg) {
  return {{"tau_re", cfg.tau_re.canonical()}, {"tau_im", cfg.tau_im.canonical()}, {"p", cfg.p.canonical()},
          {"q", cfg.q.canonical()},           {"theta1", cfg.theta1.canonical()}, {"theta2", cfg.theta2.canonical()},
          {"precision_bits", cfg.precision_bits}, {"N", cfg.N}, {"box", cfg.box}, {"box_m", cfg.box_m},
          {"trunc", cfg.trunc}, {"tol", num(cfg.tol)}, {"delta0", num(cfg.delta0)}, {"margin_a", num(cfg.margin_a)},
          {"recipe", cfg.recipe}, {"seed", cfg.seed}};
}

Json to_json(const DerivedConstants& c) {
  return {{"lambda", {num(c.lambda.real()), num(c.lambda.imag())}},
          {"mu", {num(c.mu.real()), num(c.mu.imag())}},
          {"nu", {num(c.nu.real()), num(c.nu.imag())}},
          {"log_abs_lambda", num(c.log_abs_lambda)},
          {"q_turns", num(c.q_turns)},
          {"theta2_turns", num(c.theta2_turns)}};
}

Json to_json(const LaurentSeries1& s) {
  Json re = Json::array(), im = Json::array();
  for (const auto& x : s.coeffs) {
    re.push_back(num(x.real()));
    im.push_back(num(x.imag()));
  }
  return {{"m_min", s.m_min}, {"m_max", s.m_max}, {"radius", num(s.radius)}, {"re", re}, {"im", im}};
}

Json to_json(const LaurentSeries2& s) {
  Json re = Json::array(), im = Json::array();
  for (const auto& x : s.coeffs) {
    re.push_back(num(x.real()));
    im.push_back(num(x.imag()));
  }
  return {{"n_min", s.n_min}, {"n_max", s.n_max}, {"m_min", s.m_min}, {"m_max", s.m_max},
          {"index", "a[n][m] multiplies xi^m eta^n"}, {"re", re}, {"im", im}};
}

Json to_json(const ClassificationReport& r) {
  Json j{{"verdict", to_string(r.verdict)},
         {"r", num(r.r)},
         {"N", r.N},
         {"delta0", num(r.delta0)},
         {"precision_bits", r.sequence.precision_bits},
         {"resonant", r.resonant}};
  if (r.verdict == Verdict::theta_evidence) {
    j["A"] = num(r.A);
    j["log_A"] = num(r.log_A);
    j["delta"] = num(r.delta);
  }
  if (r.witness_n) {
    j["witness_n"] = *r.witness_n;
    j["witness_log_margin"] = num(r.witness_log_margin);
  }
  return j;
}

Json to_json(const ContinuedFraction& cf) {
  Json q = Json::array();
  for (const auto& a : cf.quotients) q.push_back(a.str());
  return {{"quotients", q}, {"terminated", cf.terminated}, {"exhausted", cf.exhausted}};
}

Json to_json(const AssumptionReport& r) {
  Json j{{"pass", r.pass}, {"scanned", r.scanned}, {"n_box", r.n_box}};
  if (r.witness) j["witness"] = *r.witness;
  return j;
}

Json to_json(const Character& c) {
  const Triviality t = is_trivial_flat(c);
  return {{"character", {{"phase1", c.phase1().canonical()}, {"phase2", c.phase2().canonical()}}},
          {"trivial", t.trivial},
          {"flag", t.flag == TrivialityFlag::exact ? "exact" : "numerical"}};
}

Json to_json(const DivisorTable& t) {
  const auto& m = t.min_entry();
  Json res = Json::array();
  for (const auto& [mm, nn] : t.resonances) res.push_back({mm, nn});
  return {{"box_n", t.box_n},
          {"box_m", t.box_m},
          {"resonance_tol", num(t.resonance_tol)},
          {"min", {{"m", m.m}, {"n", m.n}, {"abs", num(std::abs(m.value))}}},
          {"resonances", res}};
}

Json to_json(const Claim41Report& r) {
  Json terms = Json::array();
  for (const auto& t : r.terms) terms.push_back({{"n", t.n}, {"value", num(t.value)}, {"bound", num(t.bound)}});
  return {{"d0_integral", num(r.d0_integral)},
          {"d0_flat", num(r.d0_flat)},
          {"terms", terms},
          {"total", num(r.total)},
          {"bound", num(r.bound)},
          {"slack", num(r.slack)},
          {"tail_fraction", num(r.tail_fraction)},
          {"first_bound", num(r.first_bound)},
          {"penultimate_bound", num(r.penultimate_bound)},
          {"quadrature_error", num(r.quadrature_error)},
          {"holds", r.holds}};
}

Json to_json(const Lemma42Report& r) {
  return {{"lhs", num(r.lhs)}, {"rhs", num(r.rhs)}, {"ratio", num(r.ratio)}, {"holds", r.holds}};
}

Json to_json(const ChainReport& r) {
  Json profile = Json::array();
  for (std::size_t i = 0; i < r.eta_profile.size(); ++i) {
    const int n = static_cast<int>(i) - r.eta_profile_offset;
    if (r.eta_profile[i] > 0.0) profile.push_back({{"n", n}, {"sup", num(r.eta_profile[i])}});
  }
  return {{"F_sup", num(r.F_sup)},
          {"holomorphy_residual", num(r.holomorphy_residual)},
          {"eta_profile", profile},
          {"eta_mode_max", num(r.eta_mode_max)},
          {"constancy_ok", r.constancy_ok},
          {"holomorphy_ok", r.holomorphy_ok},
          {"a0", to_json(r.a0)},
          {"A", to_json(r.A)},
          {"A_sup", num(r.A_sup)},
          {"equivariance_before", num(r.equivariance_before)},
          {"equivariance_after", num(r.equivariance_after)}};
}

Json to_json(const PipelineReport& r) {
  Json trunc = Json::array();
  for (const auto& t : r.truncation) trunc.push_back({{"trunc", t.trunc}, {"residual", num(t.residual)}});
  Json j{{"recipe", r.recipe},
         {"constants", to_json(r.constants)},
         {"form", {{"support", num(r.support)},
                   {"support_leak", num(r.support_leak)},
                   {"equivariance_residual", num(r.form_equivariance)},
                   {"closedness", num(r.closedness)},
                   {"weighted_l2", num(r.input_weighted_l2)}}},
         {"solve", {{"min_divisor", num(r.min_divisor)},
                    {"min_divisor_mode", mode_json(r.min_divisor_mode)},
                    {"skipped_modes", r.skipped_modes},
                    {"dbar_residual", num(r.dbar_residual)},
                    {"max_mode_residual", num(r.max_mode_residual)}}},
         {"truncation_study", trunc},
         {"chain", to_json(r.chain)},
         {"final", {{"dbar_residual", num(r.final_dbar_residual)},
                    {"equivariance_residual", num(r.final_equivariance)},
                    {"round_trip", num(r.round_trip)},
                    {"support_decay", num(r.support_decay)}}},
         {"failures", r.failures},
         {"passed", r.passed()}};
  if (r.claim41) j["claim41"] = to_json(*r.claim41);
  if (r.lemma42) j["lemma42"] = to_json(*r.lemma42);
  return j;
}

Json to_json(const ResonantObstruction& e) {
  return {{"error", "ResonantObstruction"},
          {"stage", e.stage},
          {"mode", mode_json(e.mode)},
          {"data_abs", num(e.data_abs)},
          {"divisor_abs", num(e.divisor_abs)},
          {"message", e.what()}};
}

std::string distances_csv(const DistanceSequence& d) {
  std::string out = "n,d_n,log_d_n,log_error,exact_zero\n";
  for (const auto& e : d.entries) {
    out += std::to_string(e.n) + "," + fmt(e.exact_zero ? 0.0 : e.value()) + "," + fmt(e.log_value) + "," +
           fmt(e.log_error) + "," + (e.exact_zero ? "1" : "0") + "\n";
  }
  return out;
}

std::string divisors_csv(const DivisorTable& t) {
  std::string out = "m,n,re,im,abs\n";
  for (const auto& e : t.entries) {
    out += std::to_string(e.m) + "," + std::to_string(e.n) + "," + fmt(e.value.real()) + "," + fmt(e.value.imag()) +
           "," + fmt(std::abs(e.value)) + "\n";
  }
  return out;
}

std::string series_csv(const LaurentSeries2& s) {
  std::string out = "n,m,re,im\n";
  for (int n = s.n_min; n <= s.n_max; ++n)
    for (int m = s.m_min; m <= s.m_max; ++m) {
      const cplx a = s.at(n, m);
      out += std::to_string(n) + "," + std::to_string(m) + "," + fmt(a.real()) + "," + fmt(a.imag()) + "\n";
    }
  return out;
}

std::string grid_csv(const CoverSection& g, int v_stride) {
  const LogPolarGrid& gr = g.spectral().grid();
  const Field vals = g.grid_values();
  std::string out = "u,alpha,v,beta,re,im\n";
  for (int iv = 0; iv < gr.n_v; iv += std::max(1, v_stride))
    for (int iu = 0; iu < gr.n_u; ++iu)
      for (int ia = 0; ia < gr.k_xi; ++ia)
        for (int ib = 0; ib < gr.k_eta; ++ib) {
          const cplx x = vals[gr.index(iv, iu, ia, ib)];
          out += fmt(gr.u(iu)) + "," + fmt(gr.alpha(ia)) + "," + fmt(gr.v(iv)) + "," + fmt(gr.beta(ib)) + "," +
                 fmt(x.real()) + "," + fmt(x.imag()) + "\n";
        }
  return out;
}

void write_text(const std::string& dir, const std::string& name, const std::string& text) {
  std::filesystem::create_directories(dir);
  const auto path = std::filesystem::path(dir) / name;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path.string());
  f << text;
}

}  // namespace tlab
