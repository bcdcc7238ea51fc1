#include "alignlab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "alignlab/error.hpp"
#include "alignlab/fixtures.hpp"
#include "alignlab/informativeness.hpp"
#include "alignlab/io.hpp"
#include "alignlab/oracle.hpp"
#include "alignlab/parallel.hpp"
#include "alignlab/probe.hpp"
#include "alignlab/solver.hpp"
#include "alignlab/sweep.hpp"
#include "alignlab/verify.hpp"

namespace alignlab {

namespace {

struct RunConfig {
  std::string command;
  std::string data;
  std::string out = ".";
  std::optional<int> k;
  double lambda = 0.0;
  std::vector<double> lambdas;
  std::uint64_t seed = 0;
  int restarts = 8;
  bool svg = false;
  bool raw = false;
  std::string preset = "thm2-linear";
  std::vector<std::uint64_t> seeds;
  ProbeConfig probe = fixtures::probe_defaults();
  Tolerances tol = kTol;
  Json synth_overrides = Json::object();
};

// Option handles, used to tell explicit flags from config-file values.
struct Given {
  CLI::Option* data = nullptr;
  CLI::Option* out = nullptr;
  CLI::Option* k = nullptr;
  CLI::Option* lambda = nullptr;
  CLI::Option* lambdas = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* restarts = nullptr;
  CLI::Option* svg = nullptr;
  CLI::Option* raw = nullptr;
  CLI::Option* preset = nullptr;
  CLI::Option* seeds = nullptr;
  CLI::Option* steps = nullptr;
  CLI::Option* lr = nullptr;
  CLI::Option* hidden = nullptr;
  CLI::Option* config = nullptr;
};

bool given(const CLI::Option* o) { return o != nullptr && o->count() > 0; }

template <class T>
std::vector<T> parse_list(const std::string& s, const char* what) {
  std::vector<T> out;
  std::stringstream in(s);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    if (cell.empty()) continue;
    std::istringstream cs(cell);
    T v{};
    cs >> v;
    if (!cs || !cs.eof()) throw Error(ErrorKind::InvalidConfig, std::string("bad ") + what + " entry '" + cell + "'");
    out.push_back(v);
  }
  if (out.empty()) throw Error(ErrorKind::InvalidConfig, std::string("empty ") + what + " list");
  return out;
}

Tolerances tolerances_from_json(const Json& j, Tolerances t) {
  if (!j.is_object()) throw Error(ErrorKind::InvalidConfig, "tolerances must be an object");
  t.ortho = j.value("ortho", t.ortho);
  t.psd = j.value("psd", t.psd);
  t.resid = j.value("resid", t.resid);
  t.sym = j.value("sym", t.sym);
  t.pd = j.value("pd", t.pd);
  t.rank_cut = j.value("rank_cut", t.rank_cut);
  t.spectral_gap = j.value("spectral_gap", t.spectral_gap);
  t.intersection = j.value("intersection", t.intersection);
  t.sigma_range = j.value("sigma_range", t.sigma_range);
  t.standardized = j.value("standardized", t.standardized);
  return t;
}

void merge_config_file(RunConfig& rc, const Given& g, const std::string& path) {
  const Json j = read_json(path);
  if (!j.is_object()) throw Error(ErrorKind::InvalidConfig, path + ": top level must be an object");
  try {
    if (!given(g.data) && j.contains("data")) rc.data = j.at("data").get<std::string>();
    if (!given(g.out) && j.contains("out")) rc.out = j.at("out").get<std::string>();
    if (!given(g.k) && j.contains("k")) rc.k = j.at("k").get<int>();
    if (!given(g.lambda) && j.contains("lambda")) rc.lambda = j.at("lambda").get<double>();
    if (!given(g.lambdas) && j.contains("lambdas")) rc.lambdas = j.at("lambdas").get<std::vector<double>>();
    if (!given(g.seed) && j.contains("seed")) rc.seed = j.at("seed").get<std::uint64_t>();
    if (!given(g.restarts) && j.contains("restarts")) rc.restarts = j.at("restarts").get<int>();
    if (!given(g.svg) && j.contains("svg")) rc.svg = j.at("svg").get<bool>();
    if (!given(g.raw) && j.contains("raw")) rc.raw = j.at("raw").get<bool>();
    if (!given(g.preset) && j.contains("preset")) rc.preset = j.at("preset").get<std::string>();
    if (!given(g.seeds) && j.contains("seeds")) rc.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    if (!given(g.steps) && j.contains("steps")) rc.probe.steps = j.at("steps").get<int>();
    if (!given(g.lr) && j.contains("lr")) rc.probe.lr = j.at("lr").get<double>();
    if (!given(g.hidden) && j.contains("hidden")) rc.probe.hidden = j.at("hidden").get<int>();
    if (j.contains("tolerances")) rc.tol = tolerances_from_json(j.at("tolerances"), rc.tol);
    if (j.contains("synth")) rc.synth_overrides = j.at("synth");
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::InvalidConfig, path + ": " + e.what());
  }
}

void check_run_config(const RunConfig& rc) {
  if (rc.k && *rc.k < 1) throw Error(ErrorKind::InvalidConfig, "--k must be >= 1");
  if (!std::isfinite(rc.lambda) || rc.lambda < 0.0) throw Error(ErrorKind::InvalidConfig, "--lambda must be >= 0");
  for (double l : rc.lambdas)
    if (!std::isfinite(l) || l < 0.0) throw Error(ErrorKind::InvalidConfig, "--lambdas entries must be >= 0");
  if (rc.restarts < 1) throw Error(ErrorKind::InvalidConfig, "--restarts must be >= 1");
}

// ---------------------------------------------------------------- data

struct Loaded {
  Dataset data;
  bool input_standardized = false;
  std::string origin;
};

Loaded load(const RunConfig& rc, const char* fallback_preset) {
  Loaded l;
  if (rc.data.empty()) {
    if (fallback_preset == nullptr) throw Error(ErrorKind::InvalidConfig, rc.command + " needs --data");
    const std::string p = fallback_preset;
    l.data = synth_generate(p == "thm2-nonlinear" ? fixtures::nonlinear_thm2() : fixtures::linear_thm2());
    l.origin = "fixture:" + p;
  } else {
    l.data = read_dataset(rc.data);
    l.origin = rc.data;
  }
  l.input_standardized = l.data.standardized;
  if (!l.data.standardized && !rc.raw) l.data = standardize(l.data, rc.tol);
  return l;
}

Json data_json(const Loaded& l) {
  return Json{{"origin", l.origin},
              {"input_standardized", l.input_standardized},
              {"standardized", l.data.standardized},
              {"n", l.data.n()},
              {"d1", l.data.d1()},
              {"d2", l.data.d2()},
              {"c1", l.data.c1()},
              {"c2", l.data.c2()}};
}

Json num(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json nums(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

Json nums(const Vec& v) { return nums(std::vector<double>(v.data(), v.data() + v.size())); }

Json losses_json(const LossBreakdown& l) {
  return Json{{"lambda", num(l.lambda)},
              {"pred1", num(l.pred1)},
              {"pred2", num(l.pred2)},
              {"align", num(l.align)},
              {"total", num(l.total)}};
}

Json sigma_json(const InformativenessReport& r) {
  return Json{{"sigma11", num(r.sigma[0][0])},
              {"sigma12", num(r.sigma[0][1])},
              {"sigma21", num(r.sigma[1][0])},
              {"sigma22", num(r.sigma[1][1])}};
}

Json report_json(const InformativenessReport& r) {
  Json sigma = Json::array();
  for (const auto& row : r.sigma) sigma.push_back(Json::array({num(row[0]), num(row[1])}));
  return Json{{"sigma", sigma},
              {"sigma_k1", nums(r.sigma_k1)},
              {"sigma_k2", nums(r.sigma_k2)},
              {"sigma11_z", r.sigma11_z ? num(*r.sigma11_z) : Json(nullptr)},
              {"min_norm_ols", r.min_norm_ols}};
}

// σ needs standardized targets, so --raw runs on unstandardized data skip report.json.
void write_report(const fs::path& out, const Loaded& l, const ModelParams& p, int k, const Tolerances& tol,
                  std::ostream& log) {
  if (!l.data.standardized) {
    log << "report.json skipped: data not standardized\n";
    return;
  }
  write_json(out / "report.json", report_json(full_report(l.data, &p, k, tol)));
}

void write_params(const fs::path& out, const ModelParams& p) {
  write_csv(out / "v1.csv", p.v1);
  write_csv(out / "v2.csv", p.v2);
  write_csv(out / "w1.csv", p.w1);
  write_csv(out / "w2.csv", p.w2);
  write_csv(out / "q1.csv", p.q1);
}

// ---------------------------------------------------------------- commands

int cmd_gen(const RunConfig& rc, std::ostream& out, const Given& g) {
  SynthConfig cfg;
  if (rc.preset == "thm2-linear")
    cfg = fixtures::linear_thm2();
  else if (rc.preset == "thm2-nonlinear")
    cfg = fixtures::nonlinear_thm2();
  else if (rc.preset != "default")
    throw Error(ErrorKind::InvalidConfig, "unknown preset '" + rc.preset + "'");
  Json merged = to_json(cfg);
  for (const auto& [key, value] : rc.synth_overrides.items()) merged[key] = value;
  if (given(g.seed)) merged["seed"] = rc.seed;
  cfg = synth_config_from_json(merged);

  const Dataset d = synth_generate(cfg);
  const InformativenessReport rep = full_report(d, nullptr, 1, rc.tol);
  Json meta{{"config", to_json(cfg)}, {"preset", rc.preset}, {"sigma", sigma_json(rep)}};
  write_dataset(rc.out, d, meta);
  out << "wrote dataset " << rc.out << " (n=" << d.n() << ")\n";
  return kExitOk;
}

int cmd_check(const RunConfig& rc, std::ostream& out) {
  const Loaded l = load(rc, nullptr);
  const int k = rc.k.value_or(fixtures::kLinearK);
  const AssumptionReport r = check_assumptions(l.data, k, rc.tol);
  Json j{{"data", data_json(l)},
         {"k", r.k},
         {"standardized", r.standardized},
         {"sample_size_ok", r.sample_size_ok},
         {"rank_x1", r.rank_x1},
         {"rank_x2", r.rank_x2},
         {"full_rank_x1", r.full_rank_x1},
         {"full_rank_x2", r.full_rank_x2},
         {"topk_gap_x1", num(r.topk_gap_x1)},
         {"topk_gap_x2", num(r.topk_gap_x2)},
         {"distinct_topk_x1", r.distinct_topk_x1},
         {"distinct_topk_x2", r.distinct_topk_x2},
         {"y1_spectrum", nums(r.y1_spectrum)},
         {"y2_spectrum", nums(r.y2_spectrum)},
         {"dominance_ok_y1", r.dominance_ok_y1},
         {"dominance_ok_y2", r.dominance_ok_y2},
         {"sigma_values",
          Json{{"sigma22", num(r.sigma22)}, {"sigma2k", num(r.sigma2k)}, {"sigma21", num(r.sigma21)}, {"sigma1k", num(r.sigma1k)}}},
         {"thm2_i", r.thm2_i},
         {"thm2_ii", r.thm2_ii}};
  write_json(fs::path(rc.out) / "assumptions.json", j);
  out << "thm2_i=" << r.thm2_i << " thm2_ii=" << r.thm2_ii << "\n";
  return kExitOk;
}

int cmd_solve(const RunConfig& rc, std::ostream& out) {
  const Loaded l = load(rc, nullptr);
  const int k = rc.k.value_or(fixtures::kLinearK);
  const ClosedFormSolution s = solve_closed_form(l.data, k, rc.lambda, rc.tol);
  const SpectralLosses sp = spectral_losses(l.data, s);
  const fs::path dir = rc.out;
  write_params(dir, s.params);
  Json j{{"data", data_json(l)},
         {"method", "closed_form"},
         {"k", k},
         {"losses", losses_json(s.losses)},
         {"h1_values", nums(s.h1_values)},
         {"h2_values", nums(s.h2_values)},
         {"spectral", Json{{"pred1_plus_lambda_align", num(sp.pred1_plus_lambda_align)}, {"pred2", num(sp.pred2)}}},
         {"sigma11_z", num(explained_fraction(l.data.x1 * s.params.v1, l.data.y1, rc.tol))}};
  write_json(dir / "losses.json", j);
  write_report(dir, l, s.params, k, rc.tol, out);
  out << "total=" << format_double(s.losses.total) << "\n";
  return kExitOk;
}

int cmd_oracle(const RunConfig& rc, std::ostream& out) {
  const Loaded l = load(rc, nullptr);
  const int k = rc.k.value_or(fixtures::kLinearK);
  OracleOptions opt;
  opt.restarts = rc.restarts;
  opt.seed = rc.seed;
  const OracleRun r = oracle_minimize(l.data, k, rc.lambda, opt);
  const fs::path dir = rc.out;
  write_params(dir, r.params);
  Json j{{"data", data_json(l)},
         {"method", "als_oracle"},
         {"k", k},
         {"losses", losses_json(r.losses)},
         {"restart", r.restart},
         {"restarts", rc.restarts},
         {"seed", rc.seed},
         {"sweeps", r.trace.size()}};
  write_json(dir / "losses.json", j);
  std::string trace = "sweep,total\n";
  for (std::size_t i = 0; i < r.trace.size(); ++i) trace += std::to_string(i + 1) + "," + format_double(r.trace[i]) + "\n";
  write_atomic(dir / "trace.csv", trace);
  write_report(dir, l, r.params, k, rc.tol, out);
  out << "total=" << format_double(r.losses.total) << "\n";
  return kExitOk;
}

std::string fmt6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string sweep_svg(const std::vector<SweepPoint>& pts) {
  const double w = 640, h = 420, m = 60;
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& p : pts) {
    if (p.degenerate) continue;
    x0 = std::min(x0, p.losses.align);
    x1 = std::max(x1, p.losses.align);
    y0 = std::min(y0, p.losses.pred1);
    y1 = std::max(y1, p.losses.pred1);
  }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 - x0 <= 0) x1 = x0 + 1;
  if (y1 - y0 <= 0) y1 = y0 + 1;
  auto sx = [&](double v) { return m + (v - x0) / (x1 - x0) * (w - 2 * m); };
  auto sy = [&](double v) { return h - m - (v - y0) / (y1 - y0) * (h - 2 * m); };

  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"420\" viewBox=\"0 0 640 420\">\n";
  s += "<rect width=\"640\" height=\"420\" fill=\"white\"/>\n";
  s += "<line x1=\"60\" y1=\"360\" x2=\"580\" y2=\"360\" stroke=\"black\"/>\n";
  s += "<line x1=\"60\" y1=\"60\" x2=\"60\" y2=\"360\" stroke=\"black\"/>\n";
  s += "<text x=\"320\" y=\"400\" text-anchor=\"middle\" font-size=\"14\">alignment loss</text>\n";
  s += "<text x=\"18\" y=\"210\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 18 210)\">prediction loss 1</text>\n";
  s += "<text x=\"60\" y=\"376\" font-size=\"10\">" + fmt6(x0) + "</text>\n";
  s += "<text x=\"580\" y=\"376\" text-anchor=\"end\" font-size=\"10\">" + fmt6(x1) + "</text>\n";
  s += "<text x=\"56\" y=\"360\" text-anchor=\"end\" font-size=\"10\">" + fmt6(y0) + "</text>\n";
  s += "<text x=\"56\" y=\"64\" text-anchor=\"end\" font-size=\"10\">" + fmt6(y1) + "</text>\n";
  for (const auto& p : pts) {
    if (p.degenerate) continue;
    const std::string cx = fmt6(sx(p.losses.align)), cy = fmt6(sy(p.losses.pred1));
    s += "<circle cx=\"" + cx + "\" cy=\"" + cy + "\" r=\"4\" fill=\"steelblue\"/>\n";
    s += "<text x=\"" + cx + "\" y=\"" + cy + "\" dx=\"6\" dy=\"-6\" font-size=\"10\">&#955;=" + fmt6(p.lambda) + "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

int cmd_sweep(const RunConfig& rc, std::ostream& out) {
  const Loaded l = load(rc, nullptr);
  const int k = rc.k.value_or(fixtures::kLinearK);
  const std::vector<double> lambdas = rc.lambdas.empty() ? fixtures::kLinearLambdas : rc.lambdas;
  const std::vector<SweepPoint> pts = lambda_sweep(l.data, k, lambdas);
  std::string csv = "lambda,pred1,pred2,align,total,sigma11_z,drift\n";
  for (const auto& p : pts)
    csv += format_double(p.lambda) + "," + format_double(p.losses.pred1) + "," + format_double(p.losses.pred2) + "," +
           format_double(p.losses.align) + "," + format_double(p.losses.total) + "," + format_double(p.sigma11_z) +
           "," + format_double(p.drift) + "\n";
  const fs::path dir = rc.out;
  write_atomic(dir / "sweep.csv", csv);
  if (rc.svg) write_atomic(dir / "sweep.svg", sweep_svg(pts));
  out << "pareto_monotone=" << pareto_monotone(pts) << "\n";
  return kExitOk;
}

Json step_json(const StepCheck& s) {
  Json ev = Json::object();
  for (const auto& [key, v] : s.evidence) ev[key] = num(v);
  return Json{{"name", s.name}, {"premise", s.premise}, {"conclusion", s.conclusion}, {"passed", s.passed}, {"evidence", ev}};
}

int cmd_verify(const RunConfig& rc, std::ostream& out) {
  const ProofSuiteReport proof = proof_step_suite(rc.seed);
  Json steps = Json::array();
  for (const auto& s : proof.steps) steps.push_back(step_json(s));
  Json proof_j{{"seed", proof.seed},
               {"steps", steps},
               {"generic_dims", proof.generic_dims},
               {"generic_drift", nums(proof.generic_drift)},
               {"generic_contradiction", proof.generic_contradiction},
               {"passed", proof.passed}};

  Thm1Config t1;
  t1.restarts = rc.restarts;
  const Thm1Report thm1 = thm1_equivalence(t1);
  Json recs = Json::array();
  for (const auto& r : thm1.records)
    recs.push_back(Json{{"instance", r.instance},
                        {"lambda", r.lambda},
                        {"closed_total", num(r.closed_total)},
                        {"oracle_total", num(r.oracle_total)},
                        {"rel_gap", num(r.rel_gap)},
                        {"spectral_rel_err1", num(r.spectral_rel_err1)},
                        {"spectral_rel_err2", num(r.spectral_rel_err2)},
                        {"oracle_sweeps", r.oracle_iterations}});
  const bool thm1_ok = thm1.max_rel_gap <= 1e-4 && thm1.closed_never_worse && thm1.max_spectral_rel_err <= 1e-8;
  Json thm1_j{{"records", recs},
              {"max_rel_gap", num(thm1.max_rel_gap)},
              {"max_spectral_rel_err", num(thm1.max_spectral_rel_err)},
              {"closed_never_worse", thm1.closed_never_worse},
              {"passed", thm1_ok}};

  const Loaded l = load(rc, "thm2-linear");
  const int k = rc.k.value_or(fixtures::kLinearK);
  const std::vector<double> lambdas = rc.lambdas.empty() ? fixtures::kLinearLambdas : rc.lambdas;
  const Thm2Scenario sc = thm2_scenario(l.data, k, lambdas);
  const double inc_frac = sc.pred1_increase / sc.y1_energy;
  const double drop = sc.sigma11 - sc.sigma11_z_last;
  const bool thm2_ok = sc.regime.i && sc.regime.ii && sc.pareto && sc.sigma_bounded &&
                       inc_frac >= fixtures::kLinearPred1Margin && drop > fixtures::kLinearSigmaMargin;
  Json thm2_j{{"data", data_json(l)},
              {"k", k},
              {"lambdas", nums(lambdas)},
              {"thm2_i", sc.regime.i},
              {"thm2_ii", sc.regime.ii},
              {"pareto_monotone", sc.pareto},
              {"pred1_increase_fraction", num(inc_frac)},
              {"sigma11", num(sc.sigma11)},
              {"sigma11_z_at_max_lambda", num(sc.sigma11_z_last)},
              {"sigma_bounded", sc.sigma_bounded},
              {"passed", thm2_ok}};

  const bool all = proof.passed && thm1_ok && thm2_ok;
  write_json(fs::path(rc.out) / "verify.json",
             Json{{"proof_steps", proof_j}, {"thm1_equivalence", thm1_j}, {"thm2_scenario", thm2_j}, {"passed", all}});
  out << "proof_steps=" << proof.passed << " thm1=" << thm1_ok << " thm2=" << thm2_ok << "\n";
  return all ? kExitOk : kExitValidation;
}

int cmd_probe(const RunConfig& rc, std::ostream& out) {
  const Loaded l = load(rc, "thm2-nonlinear");
  ProbeConfig pc = rc.probe;
  pc.k = rc.k.value_or(fixtures::kNonlinearK);
  const std::vector<double> lambdas =
      rc.lambdas.empty() ? linspace(0.0, 1.0, fixtures::kProbeLambdaCount) : rc.lambdas;
  const std::vector<std::uint64_t> seeds = rc.seeds.empty() ? fixtures::kProbeSeeds : rc.seeds;
  const ProbeSweep sw = train_sweep(l.data, lambdas, seeds, pc);

  std::string csv = "lambda,seed,pred1,pred2,align,converged\n";
  Json runs = Json::array();
  for (const auto& r : sw.runs) {
    csv += format_double(r.lambda) + "," + std::to_string(r.seed) + "," + format_double(r.losses.pred1) + "," +
           format_double(r.losses.pred2) + "," + format_double(r.losses.align) + "," + (r.converged ? "1" : "0") + "\n";
    runs.push_back(Json{{"lambda", r.lambda}, {"seed", r.seed}, {"monotone", r.monotone}, {"converged", r.converged}});
  }
  Json best = Json::array();
  for (const auto& b : sw.best)
    best.push_back(Json{{"lambda", b.lambda},
                        {"best_pred1", num(b.best_pred1)},
                        {"best_pred2", num(b.best_pred2)},
                        {"align_at_best", num(b.align_at_best)},
                        {"seeds_used", b.seeds_used}});
  const double endpoint = sw.best.back().best_pred1 - sw.best.front().best_pred1;
  Json summary{{"data", data_json(l)},
               {"config", Json{{"hidden", pc.hidden}, {"k", pc.k}, {"steps", pc.steps}, {"lr", pc.lr}}},
               {"seeds", seeds},
               {"best", best},
               {"runs", runs},
               {"endpoint_pred1_increase", num(endpoint)},
               {"y1_energy", num(l.data.y1.squaredNorm())}};
  const fs::path dir = rc.out;
  write_atomic(dir / "probe_sweep.csv", csv);
  write_json(dir / "probe_summary.json", summary);
  out << "endpoint_pred1_increase=" << format_double(endpoint) << "\n";
  return kExitOk;
}

void add_common(CLI::App* sub, RunConfig& rc, Given& g, std::string& lambdas_text, std::string& seeds_text) {
  g.data = sub->add_option("--data", rc.data, "dataset directory");
  g.out = sub->add_option("--out", rc.out, "output directory");
  g.k = sub->add_option("--k", rc.k, "representation dimension K");
  g.lambda = sub->add_option("--lambda", rc.lambda, "alignment weight");
  g.lambdas = sub->add_option("--lambdas", lambdas_text, "comma separated alignment weights");
  g.seed = sub->add_option("--seed", rc.seed, "seed");
  g.restarts = sub->add_option("--restarts", rc.restarts, "oracle restarts");
  g.svg = sub->add_flag("--svg", rc.svg, "also write sweep.svg");
  g.raw = sub->add_flag("--raw", rc.raw, "do not standardize the loaded data");
  g.preset = sub->add_option("--preset", rc.preset, "gen preset: thm2-linear, thm2-nonlinear, default");
  g.seeds = sub->add_option("--seeds", seeds_text, "comma separated probe seeds");
  g.steps = sub->add_option("--steps", rc.probe.steps, "probe gradient steps");
  g.lr = sub->add_option("--lr", rc.probe.lr, "probe step size");
  g.hidden = sub->add_option("--hidden", rc.probe.hidden, "probe hidden width");
  g.config = sub->add_option("--config", "JSON config; explicit flags win");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"alignlab: alignment versus information loss in linear multimodal models"};
  app.require_subcommand(1);
  RunConfig rc;
  std::string lambdas_text, seeds_text, config_path;
  Given g;
  const char* names[][2] = {{"gen", "generate a synthetic dataset directory"},
                            {"check", "write assumptions.json"},
                            {"solve", "closed-form solution: params CSVs and losses.json"},
                            {"oracle", "ALS oracle: params CSVs, losses.json and trace.csv"},
                            {"sweep", "closed-form lambda sweep: sweep.csv (and sweep.svg)"},
                            {"verify", "proof-step, equivalence and information-loss suites: verify.json"},
                            {"probe", "nonlinear encoder sweep: probe_sweep.csv and probe_summary.json"}};
  std::vector<std::pair<CLI::App*, Given>> subs;
  for (const auto& [name, help] : names) {
    CLI::App* sub = app.add_subcommand(name, help);
    Given gs;
    add_common(sub, rc, gs, lambdas_text, seeds_text);
    subs.emplace_back(sub, gs);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "alignlab: " << e.what() << "\n";
    return kExitValidation;
  }

  try {
    for (const auto& [sub, gs] : subs)
      if (sub->parsed()) {
        rc.command = sub->get_name();
        g = gs;
        if (given(g.config)) config_path = g.config->as<std::string>();
      }
    if (given(g.lambdas)) rc.lambdas = parse_list<double>(lambdas_text, "lambda");
    if (given(g.seeds)) rc.seeds = parse_list<std::uint64_t>(seeds_text, "seed");
    if (!config_path.empty()) merge_config_file(rc, g, config_path);
    check_run_config(rc);
    apply_thread_env();

    if (rc.command == "gen") return cmd_gen(rc, out, g);
    if (rc.command == "check") return cmd_check(rc, out);
    if (rc.command == "solve") return cmd_solve(rc, out);
    if (rc.command == "oracle") return cmd_oracle(rc, out);
    if (rc.command == "sweep") return cmd_sweep(rc, out);
    if (rc.command == "verify") return cmd_verify(rc, out);
    if (rc.command == "probe") return cmd_probe(rc, out);
    err << "alignlab: unknown command\n";
    return kExitValidation;
  } catch (const Error& e) {
    err << "alignlab: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return e.kind() == ErrorKind::Io ? kExitIo : kExitValidation;
  } catch (const fs::filesystem_error& e) {
    err << "alignlab: Io: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    err << "alignlab: " << e.what() << "\n";
    return kExitValidation;
  }
}

}  // namespace alignlab
