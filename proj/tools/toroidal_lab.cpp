// toroidal-lab: classify | solve | verify | divisors | demo

#include "toroidal_lab/acceptance.hpp"
#include "toroidal_lab/bundle_arith.hpp"
#include "toroidal_lab/config.hpp"
#include "toroidal_lab/diophantine.hpp"
#include "toroidal_lab/errors.hpp"
#include "toroidal_lab/pipeline.hpp"
#include "toroidal_lab/report.hpp"
#include "toroidal_lab/small_divisor.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <limits>
#include <regex>
#include <sstream>

namespace {

using namespace tlab;

enum Exit { kOk = 0, kFailed = 1, kConfig = 2, kPrecision = 3, kResonant = 4, kResidual = 5 };

struct Flags {
  std::string config_path;
  std::vector<std::string> settings;  // key=value overrides, applied in order
  std::optional<int> precision;
  std::optional<std::int64_t> N;
  std::optional<int> box;
  std::optional<int> trunc;
  std::optional<double> tol;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> format;
  std::optional<std::string> select;
};

struct Loaded {
  RunConfig cfg;
  bool tol_given = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read config file '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Config file first, then --set, then the dedicated flags; precision is applied
// before any real-valued token is parsed.
Loaded load(const Flags& f) {
  std::string text = f.config_path.empty() ? std::string() : read_file(f.config_path);
  std::string extra;
  for (const auto& s : f.settings) {
    if (s.find('=') == std::string::npos) throw ParseError("--set expects key=value, got '" + s + "'");
    extra += s + "\n";
  }
  auto add = [&](const char* key, const std::string& v) { extra += std::string(key) + "=" + v + "\n"; };
  if (f.precision) add("precision_bits", std::to_string(*f.precision));
  if (f.N) add("N", std::to_string(*f.N));
  if (f.box) add("box", std::to_string(*f.box));
  if (f.trunc) add("trunc", std::to_string(*f.trunc));
  if (f.tol) {
    std::ostringstream s;
    s.precision(17);
    s << *f.tol;
    add("tol", s.str());
  }
  if (f.out) add("out", *f.out);
  if (f.seed) add("seed", std::to_string(*f.seed));
  if (f.format) add("format", *f.format);
  if (f.select) add("select", *f.select);
  Loaded l;
  const std::string all = text + "\n" + extra;
  l.cfg = parse_config(all);
  static const std::regex tol_line(R"((^|\n)[ \t]*tol[ \t]*=)");
  l.tol_given = std::regex_search(all, tol_line);
  return l;
}

Json base_report(const std::string& command, const RunConfig& cfg) {
  Json j;
  j["schema"] = kSchema;
  j["command"] = command;
  j["config"] = to_json(cfg);
  return j;
}

void emit(const RunConfig& cfg, const Json& report, const std::string& csv_name, const std::string& csv) {
  const std::string text = dump_json(report);
  write_text(cfg.out, "report.json", text);
  if (!csv_name.empty()) write_text(cfg.out, csv_name, csv);
  if (cfg.format == "csv" && !csv_name.empty())
    std::cout << csv;
  else
    std::cout << text;
}

cplx tau_of(const RunConfig& cfg) { return {cfg.tau_re.to_double(), cfg.tau_im.to_double()}; }

// "superliouville(d,b)" inputs are classified through their certified witnesses:
// a finite scan can never reach n = b^b^...
std::optional<std::pair<int, std::int64_t>> super_liouville_origin(const Real& x) {
  if (x.kind() != Real::Kind::enclosure) return std::nullopt;
  static const std::regex re(R"(superliouville\((\d+),(\d+)\))");
  std::smatch m;
  const std::string& o = x.enclosure().origin;
  if (!std::regex_match(o, m, re)) return std::nullopt;
  return std::make_pair(std::stoi(m[1]), std::stoll(m[2]));
}

int cmd_classify(const RunConfig& cfg) {
  const GroupParams params = to_params(cfg);
  Json j = base_report("classify", cfg);

  const ContinuedFraction cp = continued_fraction_prefix(cfg.p, 64);
  const ContinuedFraction cq = continued_fraction_prefix(cfg.q, 64);
  std::string toroidal;
  if (cfg.p.is_rational() && cfg.q.is_rational())
    toroidal = "not toroidal";
  else if (cfg.p.kind() == Real::Kind::surd || cfg.q.kind() == Real::Kind::surd)
    toroidal = "toroidal";
  else
    toroidal = "toroidal (numerical: no termination within the certified prefix)";
  j["toroidal"] = {{"verdict", toroidal}, {"p_continued_fraction", to_json(cp)}, {"q_continued_fraction", to_json(cq)}};

  ClassificationReport theta;
  DistanceSequence lattice;
  const auto sl = super_liouville_origin(cfg.q);
  if (sl && cfg.p.is_rational() && cfg.p.rational() == 0) {
    const SuperLiouville s = make_super_liouville(sl->first, sl->second);
    lattice = witness_sequence(s);
    theta = exp_bound_scan(lattice, cfg.delta0);
    j["classification_source"] = "super-Liouville witnesses";
  } else {
    lattice = distance_sequence_lattice(cfg.p, cfg.q, cfg.N, cfg.precision_bits);
    for (const auto& e : lattice.entries) {
      if (!e.exact_zero && e.log_lower() == -std::numeric_limits<double>::infinity())
        throw PrecisionExhausted("d_" + std::to_string(e.n) + " is not certified at " +
                                 std::to_string(cfg.precision_bits) + " bits; lower N or raise --precision");
    }
    theta = exp_bound_scan(lattice, cfg.delta0);
    theta.r = exponent_statistic(lattice, std::min<std::int64_t>(100, cfg.N), cfg.N);
    j["classification_source"] = "lattice scan";
  }
  if (toroidal == "not toroidal") theta.verdict = Verdict::inconclusive;
  j["classification"] = to_json(theta);

  const DistanceSequence fiber = distance_sequence_fiber(cfg.q, cfg.theta2, cfg.N, cfg.precision_bits);
  const ClassificationReport abe = exp_bound_scan(fiber, cfg.delta0);
  j["abe_condition"] = to_json(abe);
  j["assumption"] = to_json(thm_assumption_check(params, cfg.theta1, cfg.theta2, cfg.N));
  j["hs_margin"] = hs_margin(params.tau, cfg.q.to_double(), cfg.theta2.to_double(), cfg.margin_a, cfg.box);
  try {
    j["kazama_margin"] = kazama_margin(params.tau, cfg.p, cfg.q, cfg.margin_a, cfg.box);
  } catch (const ResonanceError& e) {
    j["kazama_margin"] = "inf";
    j["kazama_resonance"] = e.mode;
  }
  Json res = Json::array();
  for (const auto& r : resonance_search(params, cfg.theta1, cfg.theta2, cfg.box, 1e-12))
    res.push_back({r[0], r[1], r[2]});
  j["resonances"] = res;

  write_text(cfg.out, "distances.csv", distances_csv(lattice));
  write_text(cfg.out, "fiber_distances.csv", distances_csv(fiber));
  emit(cfg, j, "", "");
  if (cfg.format == "csv") std::cout << distances_csv(lattice);
  return kOk;
}

PipelineConfig pipeline_config(const RunConfig& cfg) {
  if (!cfg.p.is_rational() || cfg.p.rational() != 0 || !cfg.theta1.is_rational() || cfg.theta1.rational() != 0)
    throw DomainError("solve requires p = theta1 = 0");
  if (cfg.trunc < 1) throw DomainError("trunc must be positive");
  PipelineConfig pc;
  pc.params = to_params(cfg);
  pc.theta2 = cfg.theta2;
  pc.recipe = cfg.recipe;
  pc.solve.trunc = cfg.trunc;
  pc.residual_tol = cfg.tol;
  pc.truncations.clear();
  for (int t : {8, 16, 32})
    if (t < cfg.trunc) pc.truncations.push_back(t);
  pc.truncations.push_back(cfg.trunc);
  return pc;
}

int cmd_solve(const RunConfig& cfg) {
  Json j = base_report("solve", cfg);
  const PipelineConfig pc = pipeline_config(cfg);
  const AssumptionReport assumption = thm_assumption_check(pc.params, cfg.theta1, cfg.theta2, cfg.N);
  j["assumption"] = to_json(assumption);
  const DerivedConstants c = derive_constants(pc.params, pc.theta2);
  const DivisorTable table = divisor_min_scan(c, cfg.box, cfg.box_m);
  try {
    const PipelineReport r = run_pipeline(pc);
    j["pipeline"] = to_json(r);
    int code = r.passed() ? kOk : kResidual;
    if (code == kOk && !assumption.pass) {
      j["error"] = "the vanishing hypothesis fails for this bundle";
      code = kConfig;
    }
    j["exit_code"] = code;
    write_text(cfg.out, "divisors.csv", divisors_csv(table));
    emit(cfg, j, "grid.csv", grid_csv(r.chain.g_tilde, 16));
    return code;
  } catch (const ResonantObstruction& e) {
    j["resonant_obstruction"] = to_json(e);
    j["exit_code"] = static_cast<int>(kResonant);
    write_text(cfg.out, "divisors.csv", divisors_csv(table));
    emit(cfg, j, "", "");
    return kResonant;
  }
}

int cmd_verify(const RunConfig& cfg, bool tol_given) {
  AcceptanceOptions opt;
  opt.selection = parse_selection(cfg.select, kCriterionCount);
  opt.seed = cfg.seed;
  if (tol_given) opt.quadrature_tol = cfg.tol;
  Json j = base_report("verify", cfg);
  j["quadrature_tol"] = opt.quadrature_tol;
  Json rows = Json::array();
  bool all = true;
  for (int id : opt.selection) {
    const CriterionResult r = run_criterion(id, opt);
    all = all && r.passed;
    std::cerr << (r.passed ? "PASS " : "FAIL ") << r.id << " " << r.name << ": " << r.detail << "\n";
    rows.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
  }
  j["criteria"] = rows;
  j["vacuous"] = opt.selection.empty();
  j["passed"] = all;
  if (opt.selection.empty()) std::cerr << "vacuous: no criteria selected\n";
  std::string csv = "id,name,passed\n";
  for (const auto& r : rows)
    csv += std::to_string(r["id"].get<int>()) + "," + r["name"].get<std::string>() + "," +
           (r["passed"].get<bool>() ? "1" : "0") + "\n";
  emit(cfg, j, cfg.format == "csv" ? "criteria.csv" : "", csv);
  return all ? kOk : kFailed;
}

int cmd_divisors(const RunConfig& cfg) {
  const DerivedConstants c = derive_constants(to_params(cfg), cfg.theta2);
  const DivisorTable t = divisor_min_scan(c, cfg.box, cfg.box_m);
  Json j = base_report("divisors", cfg);
  j["constants"] = to_json(c);
  j["divisors"] = to_json(t);
  emit(cfg, j, "divisors.csv", divisors_csv(t));
  return kOk;
}

// Golden classification plus the default pipeline, written under out/.
int cmd_demo(RunConfig cfg) {
  const std::string root = cfg.out;
  RunConfig cls = cfg;
  cls.q = Real::golden();
  cls.out = root + "/classify";
  std::cout << "== classify q=golden\n";
  const int a = cmd_classify(cls);
  RunConfig sol = cfg;
  sol.out = root + "/solve";
  std::cout << "\n== solve " << sol.recipe << "\n";
  const int b = cmd_solve(sol);
  std::cout << "\n";
  return a != kOk ? a : b;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"toroidal-lab: toroidal groups, flat bundles and the dbar harness"};
  app.require_subcommand(1);
  Flags f;
  auto add_common = [&](CLI::App* s) {
    s->add_option("--config", f.config_path, "flat key=value config file");
    s->add_option("--set", f.settings, "key=value override (repeatable)");
    s->add_option("--precision", f.precision, "precision in bits");
    s->add_option("--N", f.N, "scan depth");
    s->add_option("--box", f.box, "eta box");
    s->add_option("--trunc", f.trunc, "eta-mode truncation");
    s->add_option("--tol", f.tol, "residual tolerance (solve) or quadrature tolerance (verify)");
    s->add_option("--out", f.out, "output directory");
    s->add_option("--seed", f.seed, "seed for randomized fixtures");
    s->add_option("--format", f.format, "stdout format")->check(CLI::IsMember({"json", "csv"}));
    s->add_option("--select", f.select, "criteria: all, none or a list such as 1,3,5-7");
  };
  std::string chosen;
  for (const char* name : {"classify", "solve", "verify", "divisors", "demo"}) {
    CLI::App* s = app.add_subcommand(name);
    add_common(s);
    s->callback([&chosen, name]() { chosen = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfig;
  }

  try {
    const Loaded l = load(f);
    if (chosen == "classify") return cmd_classify(l.cfg);
    if (chosen == "solve") return cmd_solve(l.cfg);
    if (chosen == "verify") return cmd_verify(l.cfg, l.tol_given);
    if (chosen == "divisors") return cmd_divisors(l.cfg);
    return cmd_demo(l.cfg);
  } catch (const PrecisionExhausted& e) {
    std::cerr << "precision exhausted: " << e.what() << "\n";
    return kPrecision;
  } catch (const ResonantObstruction& e) {
    std::cerr << "resonant obstruction: " << e.what() << "\n";
    return kResonant;
  } catch (const ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  }
}
