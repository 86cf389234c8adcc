// Copyright 2026 The mmlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli/commands.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <filesystem>
#include <map>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>
#include <string_view>
#include <utility>

#ifdef MMLAB_CLI11_SINGLE_HEADER
#include "CLI11.hpp"
#else
#include <CLI/CLI.hpp>
#endif

#include "cli/config.h"
#include "cli/output.h"
#include "cli/parallel.h"
#include "cli/svg.h"
#include "mmlab/bounds.h"
#include "mmlab/error.h"
#include "mmlab/oracles.h"
#include "mmlab/stability.h"

namespace mmlab::cli {
namespace {

using nlohmann::json;

constexpr int kFigureDim = 50;
constexpr int kFigureSamples = 1000;
constexpr double kFigureMu = 0.1;
constexpr double kFigureStep = 0.02;
constexpr long kFigureIterations = 20000;
constexpr double kFigureRadius = 100.0;
constexpr long kFigureStride = 10;

// Seeds the replacement sample of a stability run apart from the data.
constexpr std::uint64_t kReplacementSalt = 0x5851f42d4c957f2dULL;

[[noreturn]] void Invalid(const std::string& message) {
  throw Error(ErrorCode::kValidation, message);
}

bool ConstantSteps(const AlgorithmSpec& spec) {
  return spec.step_w.kind() == Schedule::Kind::kConstant &&
         spec.step_theta.kind() == Schedule::Kind::kConstant;
}

// Constants for bound columns: explicit ones win, otherwise the analytic
// region constants when every radius is finite.
std::optional<Constants> BoundConstants(const ExperimentConfig& cfg,
                                        const Objective& obj,
                                        const Dataset& data) {
  if (cfg.constants) return cfg.constants;
  if (!obj.w_bounded() || !obj.theta_bounded()) return std::nullopt;
  return AnalyticConstants(obj, MaxSampleNorm(data));
}

std::string PlotSvg(const std::string& title, const GenRiskCurve& curve,
                    const BoundCurve& bound) {
  PlotSpec plot;
  plot.title = title;
  plot.y_label = "generalization risk";
  std::vector<double> x(curve.t.begin(), curve.t.end());
  std::vector<double> abs_risk(curve.gen_risk.size());
  std::transform(curve.gen_risk.begin(), curve.gen_risk.end(), abs_risk.begin(),
                 [](double v) { return std::abs(v); });
  plot.series.push_back({"gen risk", x, curve.gen_risk, "#1f77b4"});
  plot.series.push_back({"|gen risk|", x, abs_risk, "#ff7f0e"});
  if (bound) {
    std::vector<double> y(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) y[k] = bound.at(curve.t[k]);
    plot.series.push_back({bound.name, x, y, "#d62728", true, true});
  }
  return RenderSvg(plot);
}

std::string GenRiskCsv(const GenRiskCurve& curve) {
  std::ostringstream body;
  WriteGenRiskCurveCsv(curve, body);
  return body.str();
}

double MaxAbs(const std::vector<double>& v) {
  double m = 0.0;
  for (const double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Runs `body` for every seed on the worker pool and prints the collected
// messages in seed order.
void ForEachSeed(const std::vector<std::uint64_t>& seeds,
                 const std::function<std::string(std::uint64_t)>& body,
                 std::ostream& out) {
  std::vector<std::string> messages(seeds.size());
  ParallelFor(static_cast<int>(seeds.size()),
              [&](int i) { messages[i] = body(seeds[i]); });
  for (const auto& m : messages) out << m;
}

// ---- bounds ----------------------------------------------------------------

const std::set<std::string>& KnownParams() {
  static const std::set<std::string> keys = {
      "L",       "L_w",         "ell", "mu", "n", "T", "alpha",
      "alpha_w", "alpha_theta", "eta", "D",  "c", "r"};
  return keys;
}

const std::vector<std::string>& KnownTheorems() {
  static const std::vector<std::string> names = {"lemma1", "thm2", "remark1",
                                                 "thm3",   "thm4", "cor1",
                                                 "thm5",   "thm6", "lemma6"};
  return names;
}

// Raised when a theorem lacks an input; `all` skips such theorems.
class MissingParam : public Error {
 public:
  using Error::Error;
};

class Params {
 public:
  explicit Params(const std::string& text) {
    std::string_view rest = text;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      std::string item(rest.substr(0, comma));
      rest = comma == std::string_view::npos ? std::string_view()
                                             : rest.substr(comma + 1);
      item.erase(0, item.find_first_not_of(" \t"));
      item.erase(item.find_last_not_of(" \t") + 1);
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string::npos) {
        Invalid(fmt::format("parameter '{}' is not key=value", item));
      }
      const std::string key = item.substr(0, eq);
      const std::string value = item.substr(eq + 1);
      if (KnownParams().count(key) == 0) {
        Invalid(fmt::format("unknown parameter '{}'", key));
      }
      if (!raw_.emplace(key, value).second) {
        Invalid(fmt::format("parameter '{}' given twice", key));
      }
      if (key != "eta") numbers_[key] = ParseNumber(key, value);
    }
    if (raw_.count("eta") != 0) {
      try {
        eta_ = raw_["eta"].find(':') == std::string::npos
                   ? Schedule::Constant(ParseNumber("eta", raw_["eta"]))
                   : Schedule::Parse(raw_["eta"]);
      } catch (const Error& e) {
        Invalid(fmt::format("parameter 'eta': {}", e.what()));
      }
    }
    CheckInteger("n", 1);
    CheckInteger("T", 0);
  }

  bool Has(const std::string& key) const { return raw_.count(key) != 0; }

  double Num(const std::string& key) const {
    auto it = numbers_.find(key);
    if (it == numbers_.end()) {
      throw MissingParam(ErrorCode::kValidation,
                         fmt::format("missing parameter '{}'", key));
    }
    return it->second;
  }

  long Int(const std::string& key) const { return static_cast<long>(Num(key)); }

  Schedule Eta() const {
    if (!eta_) {
      throw MissingParam(ErrorCode::kValidation, "missing parameter 'eta'");
    }
    return *eta_;
  }

  double ConstantEta() const {
    const Schedule s = Eta();
    if (s.kind() != Schedule::Kind::kConstant) {
      Invalid("parameter 'eta' must be a constant step here");
    }
    return s.value();
  }

  double AlphaW() const {
    return Has("alpha_w") ? Num("alpha_w") : Num("alpha");
  }
  double AlphaTheta() const {
    return Has("alpha_theta") ? Num("alpha_theta") : AlphaW();
  }

  // Lipschitz constants are only required when `lipschitz` is set; L_w
  // defaults to L.
  Constants Consts(bool lipschitz, bool smoothness, bool mu) const {
    Constants c;
    if (lipschitz) {
      c.lipschitz = Num("L");
      c.lipschitz_w = Has("L_w") ? Num("L_w") : c.lipschitz;
    }
    if (smoothness) c.smoothness = Num("ell");
    c.mu = mu ? Num("mu") : (Has("mu") ? Num("mu") : 0.0);
    return c;
  }

 private:
  static double ParseNumber(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(v, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (v.empty() || used != v.size() || !std::isfinite(x)) {
      Invalid(
          fmt::format("parameter '{}': '{}' is not a finite number", key, v));
    }
    return x;
  }

  void CheckInteger(const std::string& key, double min_value) const {
    auto it = numbers_.find(key);
    if (it == numbers_.end()) return;
    const double x = it->second;
    if (x != std::floor(x) || x < min_value || x > 9.0e15) {
      Invalid(fmt::format("parameter '{}' must be an integer >= {}", key,
                          min_value));
    }
  }

  std::map<std::string, std::string> raw_;
  std::map<std::string, double> numbers_;
  std::optional<Schedule> eta_;
};

std::vector<BoundReport> TheoremRows(const std::string& theorem,
                                     const Params& p) {
  std::vector<BoundReport> rows;
  if (theorem == "lemma1") {
    const Constants c = p.Consts(false, true, false);
    for (const auto regime :
         {ExpansivityRegime::kNonconvexGda, ExpansivityRegime::kNonconvexPpm,
          ExpansivityRegime::kConvexConcaveGda,
          ExpansivityRegime::kConvexConcavePpm, ExpansivityRegime::kScScGda,
          ExpansivityRegime::kScScPpm}) {
      rows.push_back(Lemma1Coefficient(regime, c, p.AlphaW(), p.AlphaTheta()));
    }
  } else if (theorem == "thm2") {
    const bool with_step = p.Has("alpha") || p.Has("alpha_w");
    const Constants c = p.Consts(true, with_step, true);
    const long n = p.Int("n");
    if (with_step) {
      rows.push_back(Thm2Bound(Family::kGda, c, n, p.AlphaW()));
      rows.push_back(Thm2Bound(Family::kGdmax, c, n, p.AlphaW()));
    }
    rows.push_back(Thm2Bound(Family::kPpm, c, n, 0.0));
    rows.push_back(Thm2Bound(Family::kPpmax, c, n, 0.0));
  } else if (theorem == "remark1") {
    rows.push_back(Remark1Bound(p.AlphaW(), p.Consts(true, true, false),
                                p.Int("n"), p.Int("T")));
  } else if (theorem == "thm3") {
    const Constants c = p.Consts(true, false, false);
    rows.push_back(Thm3Bound(p.Eta(), c, p.Int("n"), p.Int("T"), false));
    rows.push_back(Thm3Bound(p.Eta(), c, p.Int("n"), p.Int("T"), true));
  } else if (theorem == "thm4") {
    rows.push_back(Thm4Bound(p.Num("D"), p.ConstantEta(), p.Int("T")));
  } else if (theorem == "cor1") {
    const Constants c = p.Consts(true, false, false);
    for (const bool ppmax : {false, true}) {
      const Cor1Result r =
          Cor1Schedule(p.Int("n"), p.Num("D"), p.ConstantEta(), c, ppmax);
      const std::string prefix = ppmax ? "cor1_ppmax" : "cor1_ppm";
      BoundReport iterations{prefix + "_iterations", r.iterations, {}};
      BoundReport excess{prefix + "_excess", r.excess_bound, {}};
      rows.push_back(iterations);
      rows.push_back(excess);
    }
  } else if (theorem == "thm5") {
    const Thm5Result r =
        Thm5Bounds(p.Num("c"), p.Num("r"), p.Consts(true, true, true),
                   p.Int("n"), p.Int("T"));
    rows.push_back(r.sgda);
    rows.push_back(r.sgdmax);
  } else if (theorem == "thm6") {
    rows.push_back(Thm6Bound(p.Num("c"), p.Consts(true, true, false),
                             p.Int("n"), p.Int("T")));
  } else if (theorem == "lemma6") {
    BoundReport r;
    r.name = "lemma6_smoothness";
    r.value = Lemma6Smoothness(p.Consts(false, true, true));
    rows.push_back(r);
  }
  return rows;
}

}  // namespace

double MaxSampleNorm(const Dataset& data) {
  return data.samples().rowwise().norm().maxCoeff();
}

BoundCurve GenRiskBound(const Objective& obj, const AlgorithmSpec& spec,
                        const Constants& constants, long n) {
  const Family family = spec.family;
  const bool proximal = family == Family::kPpm || family == Family::kPpmax;
  switch (obj.kind()) {
    case ObjectiveKind::kScScQuadratic: {
      if (!(constants.mu > 0.0)) return {};
      double step = 0.0;
      if (!proximal) {
        if (!ConstantSteps(spec)) return {};
        step = spec.step_w.value();
      }
      const BoundReport r = Thm2Bound(family, constants, n, step);
      const double v = r.value;
      return {r.name, [v](long) { return v; }};
    }
    case ObjectiveKind::kBilinear: {
      if (proximal) {
        const bool ppmax = family == Family::kPpmax;
        const Schedule eta = spec.eta;
        return {ppmax ? "thm3_ppmax" : "thm3_ppm", [=](long t) {
                  return Thm3Bound(eta, constants, n, t, ppmax).value;
                }};
      }
      if (family == Family::kGda && ConstantSteps(spec) &&
          spec.step_w.value() == spec.step_theta.value()) {
        const double alpha = spec.step_w.value();
        return {"remark1", [=](long t) {
                  return Remark1Bound(alpha, constants, n, t).value;
                }};
      }
      return {};
    }
    case ObjectiveKind::kToyNcSc: {
      if (spec.mode != Mode::kStochastic || !(constants.mu > 0.0) ||
          spec.step_w.kind() != Schedule::Kind::kInverseT) {
        return {};
      }
      const double c = spec.step_w.value();
      if (family == Family::kGda &&
          spec.step_theta.kind() == Schedule::Kind::kInverseT) {
        const double r = spec.step_theta.value() / c;
        return {"thm5_sgda", [=](long t) {
                  return Thm5Bounds(c, r, constants, n, t).sgda.value;
                }};
      }
      if (family == Family::kGdmax) {
        return {"thm5_sgdmax", [=](long t) {
                  return Thm5Bounds(c, 1.0, constants, n, t).sgdmax.value;
                }};
      }
      return {};
    }
  }
  return {};
}

const std::vector<std::string>& FigureIds() {
  static const std::vector<std::string> ids = {
      "scsc-sgda",    "scsc-sppm",    "scsc-gda",       "scsc-ppm",
      "scsc-gdmax",   "scsc-sgdmax",  "bilinear-sgda",  "bilinear-sppm",
      "bilinear-gda", "bilinear-ppm", "bilinear-gdmax", "bilinear-sgdmax"};
  return ids;
}

FigureSetup MakeFigureSetup(const std::string& id, std::uint64_t seed) {
  const auto& ids = FigureIds();
  if (std::find(ids.begin(), ids.end(), id) == ids.end()) {
    Invalid(fmt::format("unknown figure id '{}'", id));
  }
  const auto dash = id.find('-');
  const std::string kind = id.substr(0, dash);
  std::string algo = id.substr(dash + 1);

  AlgorithmSpec spec;
  spec.mode = Mode::kFullBatch;
  if (algo.front() == 's') {
    spec.mode = Mode::kStochastic;
    algo.erase(0, 1);
  }
  spec.family = ParseFamily(algo);
  spec.step_w = Schedule::Constant(kFigureStep);
  spec.step_theta = Schedule::Constant(kFigureStep);
  spec.eta = Schedule::Constant(kFigureStep);

  Objective obj =
      kind == "scsc"
          ? Objective::ScScQuadratic(kFigureDim, kFigureMu, kFigureRadius,
                                     kFigureRadius)
          : Objective::Bilinear(kFigureDim, kFigureRadius, kFigureRadius);
  Dataset data = MakeGaussianDataset(kFigureDim, kFigureSamples, seed);
  const Constants constants = AnalyticConstants(obj, MaxSampleNorm(data));
  obj = obj.WithConstants(constants);
  BoundCurve bound = GenRiskBound(obj, spec, constants, kFigureSamples);
  return FigureSetup{id,
                     obj,
                     std::move(data),
                     spec,
                     constants,
                     kFigureIterations,
                     kFigureStride,
                     Vector::Zero(kFigureDim),
                     Vector::Zero(kFigureDim),
                     Vector::Zero(kFigureDim),
                     seed,
                     std::move(bound)};
}

void CmdReproduce(const std::string& figure_id, std::uint64_t seed,
                  const std::string& out_dir, std::ostream& out) {
  const FigureSetup s = MakeFigureSetup(figure_id, seed);
  const json canonical = {{"command", "reproduce"}, {"figure", figure_id},
                          {"seed", seed},           {"d", kFigureDim},
                          {"n", kFigureSamples},    {"mu", kFigureMu},
                          {"step", kFigureStep},    {"T", s.T},
                          {"rho", kFigureRadius},   {"stride", s.stride}};
  const std::string hash = ConfigHash(canonical);

  OutputSet files(out_dir, figure_id);
  files.Begin();
  const GenRiskCurve curve =
      MakeGenRiskCurve(s.spec, s.objective, s.data, s.population_mean, s.w0,
                       s.theta0, s.T, seed, s.stride);
  const auto csv =
      files.Write(figure_id + ".csv", CsvWithHash(hash, GenRiskCsv(curve)));
  files.Write(
      figure_id + ".svg",
      PlotSvg(fmt::format("{} (seed {})", figure_id, seed), curve, s.bound));
  files.Finish();

  out << fmt::format("{}: max|gen_risk|={:.6g}", figure_id,
                     MaxAbs(curve.gen_risk));
  if (s.bound) {
    out << fmt::format(" {}={:.6g}", s.bound.name, s.bound.at(s.T));
  }
  out << fmt::format(" -> {}\n", csv.string());
}

void CmdRun(const std::string& config_path, std::ostream& out) {
  const ExperimentConfig cfg = LoadConfig(config_path);
  OutputSet files(cfg.out, cfg.name + "_run");
  files.Begin();
  ForEachSeed(
      cfg.seeds,
      [&](std::uint64_t seed) {
        const std::string hash = ConfigHash(cfg.RunCanonical(seed));
        const std::string stem = fmt::format("{}_seed{}", cfg.name, seed);
        const Objective obj = cfg.MakeObjective();
        const Dataset data = MakeGaussianDataset(cfg.d, cfg.n, seed);
        RunOptions options;
        options.stride = cfg.stride;
        const Trajectory traj =
            Run(cfg.algorithm, obj, data, cfg.w0.Resolve(cfg.d),
                cfg.theta0.Resolve(cfg.d), cfg.T, seed, options);
        std::ostringstream body;
        WriteTrajectoryCsv(traj, body);
        files.Write(stem + "_trajectory.csv", CsvWithHash(hash, body.str()));

        std::string message = fmt::format("{}: {} rows", stem, traj.size());
        if (obj.kind() != ObjectiveKind::kToyNcSc && obj.HasClosedFormMax()) {
          const GenRiskCurve curve = GenRiskCurveFromRun(
              traj, obj, data, Vector::Zero(cfg.d), cfg.algorithm);
          files.Write(stem + "_gen_risk.csv",
                      CsvWithHash(hash, GenRiskCsv(curve)));
          BoundCurve bound;
          if (auto c = BoundConstants(cfg, obj, data)) {
            bound = GenRiskBound(obj, cfg.algorithm, *c, cfg.n);
          }
          files.Write(stem + "_gen_risk.svg", PlotSvg(stem, curve, bound));
          message +=
              fmt::format(", max|gen_risk|={:.6g}", MaxAbs(curve.gen_risk));
        }
        return message + "\n";
      },
      out);
  files.Finish();
}

void CmdStability(const std::string& config_path, std::ostream& out) {
  const ExperimentConfig cfg = LoadConfig(config_path);
  OutputSet files(cfg.out, cfg.name + "_stability");
  files.Begin();
  const AlgorithmSpec& spec = cfg.algorithm;
  const bool bilinear_columns =
      cfg.objective == ObjectiveKind::kBilinear &&
      spec.family == Family::kGda && spec.mode == Mode::kFullBatch &&
      ConstantSteps(spec) && spec.step_w.value() == spec.step_theta.value();
  ForEachSeed(
      cfg.seeds,
      [&](std::uint64_t seed) {
        const std::string hash = ConfigHash(cfg.RunCanonical(seed));
        const std::string stem = fmt::format("{}_seed{}", cfg.name, seed);
        const Objective obj = cfg.MakeObjective();
        const Dataset data = MakeGaussianDataset(cfg.d, cfg.n, seed);
        Rng rng(seed ^ kReplacementSalt);
        const Vector z_new = GaussianSampler(cfg.d)(rng);
        const Dataset neighbor =
            MakeNeighborDataset(data, cfg.replace_index, z_new);
        RunOptions options;
        options.stride = cfg.stride;
        const StabilityTrace trace =
            PairedRun(spec, obj, data, neighbor, cfg.w0.Resolve(cfg.d),
                      cfg.theta0.Resolve(cfg.d), cfg.T, seed, options);

        BoundCurve bound;
        if (auto c = BoundConstants(cfg, obj, data)) {
          bound = GenRiskBound(obj, spec, *c, cfg.n);
        }
        const Vector dz = z_new - data.sample(cfg.replace_index);
        const double alpha = spec.step_w.value();

        fmt::memory_buffer buf;
        auto it = std::back_inserter(buf);
        fmt::format_to(it, "t,delta_w,delta_theta,delta");
        if (bound) fmt::format_to(it, ",gen_bound");
        if (bilinear_columns)
          fmt::format_to(it, ",exact_delta,persistent_delta");
        buf.push_back('\n');
        for (std::size_t k = 0; k < trace.size(); ++k) {
          const long t = trace.t[k];
          fmt::format_to(it, "{},{:.17g},{:.17g},{:.17g}", t, trace.delta_w[k],
                         trace.delta_theta[k], trace.delta[k]);
          if (bound) fmt::format_to(it, ",{:.17g}", bound.at(t));
          if (bilinear_columns) {
            const double exact =
                t < 1 ? 0.0 : BilinearExactDelta(alpha, cfg.n, t, dz);
            const double persistent =
                t < 1 ? 0.0 : BilinearPersistentDelta(alpha, cfg.n, t, dz);
            fmt::format_to(it, ",{:.17g},{:.17g}", exact, persistent);
          }
          buf.push_back('\n');
        }
        files.Write(
            stem + "_stability.csv",
            CsvWithHash(hash, std::string_view(buf.data(), buf.size())));
        return fmt::format("{}: final delta={:.6g}\n", stem,
                           trace.size() ? trace.delta.back() : 0.0);
      },
      out);
  files.Finish();
}

void CmdBounds(const std::string& theorem, const std::string& params,
               std::ostream& out) {
  const auto& known = KnownTheorems();
  if (theorem != "all" &&
      std::find(known.begin(), known.end(), theorem) == known.end()) {
    Invalid(fmt::format("unknown theorem '{}'", theorem));
  }
  const Params p(params);
  std::vector<BoundReport> rows;
  if (theorem == "all") {
    for (const auto& name : known) {
      try {
        auto part = TheoremRows(name, p);
        rows.insert(rows.end(), part.begin(), part.end());
      } catch (const MissingParam&) {
      } catch (const Error& e) {
        // Inputs outside a theorem's domain (e.g. mu = 0) skip it.
        if (e.code() != ErrorCode::kUndefinedBound &&
            e.code() != ErrorCode::kInvalidArgument) {
          throw;
        }
      }
    }
    if (rows.empty()) Invalid("no theorem applies to the given parameters");
  } else {
    try {
      rows = TheoremRows(theorem, p);
    } catch (const MissingParam& e) {
      Invalid(fmt::format("{}: {}", theorem, e.what()));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kUndefinedBound &&
          e.code() != ErrorCode::kInvalidArgument) {
        throw;
      }
      Invalid(fmt::format("{}: {}", theorem, e.what()));
    }
  }
  out << "name,value,conditions_ok\n";
  for (const auto& r : rows) {
    out << fmt::format("{},{},{}\n", r.name, FormatBoundValue(r.value),
                       r.conditions_ok() ? "true" : "false");
  }
}

int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err) {
  CLI::App app{
      "Stability and generalization experiments for minimax "
      "learners",
      "mmlab"};
  app.require_subcommand(1);

  std::string figure_id;
  std::uint64_t seed = 1;
  std::string out_dir = "out";
  auto* reproduce = app.add_subcommand(
      "reproduce", "Run a fixed figure experiment and write CSV and SVG");
  reproduce->add_option("figure_id", figure_id, "Figure id")
      ->required()
      ->check(CLI::IsMember(FigureIds()));
  reproduce->add_option("--seed", seed, "Data and sampling seed");
  reproduce->add_option("--out", out_dir, "Output directory");

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run an experiment config");
  run->add_option("--config", config_path, "JSON config")->required();

  std::string theorem = "all";
  std::string params;
  auto* bounds = app.add_subcommand("bounds", "Print bound values as CSV");
  bounds->add_option("--theorem", theorem,
                     "lemma1, thm2, remark1, thm3, thm4, cor1, thm5, thm6, "
                     "lemma6 or all");
  bounds->add_option("--params", params, "Comma-separated key=value list");

  auto* stability =
      app.add_subcommand("stability", "Run paired neighbouring-dataset runs");
  stability->add_option("--config", config_path, "JSON config")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitValidation;
  }

  try {
    if (*reproduce) {
      CmdReproduce(figure_id, seed, out_dir, out);
    } else if (*run) {
      CmdRun(config_path, out);
    } else if (*bounds) {
      CmdBounds(theorem, params, out);
    } else if (*stability) {
      CmdStability(config_path, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::kValidation ? kExitValidation : kExitRuntime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace mmlab::cli
