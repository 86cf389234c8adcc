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

#include "cli/config.h"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <utility>

#include "mmlab/error.h"

namespace mmlab::cli {
namespace {

using nlohmann::json;

[[noreturn]] void Fail(const std::string& key, const std::string& message) {
  throw Error(ErrorCode::kValidation,
              fmt::format("config key '{}': {}", key, message));
}

// Typed access to one JSON object; remembers which keys were consumed so
// leftovers can be reported as unknown.
class Reader {
 public:
  Reader(const json& obj, std::string prefix)
      : obj_(obj), prefix_(std::move(prefix)) {
    if (!obj_.is_object()) Fail(Path(""), "expected an object");
  }

  std::string Path(const std::string& key) const {
    if (prefix_.empty()) return key;
    if (key.empty()) return prefix_;
    return prefix_ + "." + key;
  }

  const json* Get(const std::string& key) {
    seen_.insert(key);
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  double Number(const std::string& key, double fallback) {
    const json* v = Get(key);
    if (v == nullptr) return fallback;
    return AsNumber(*v, Path(key));
  }

  long Integer(const std::string& key, long fallback, long min_value) {
    const json* v = Get(key);
    const long out = v == nullptr ? fallback : AsInteger(*v, Path(key));
    if (out < min_value) {
      Fail(Path(key), fmt::format("must be >= {}, got {}", min_value, out));
    }
    return out;
  }

  std::string String(const std::string& key, const std::string& fallback) {
    const json* v = Get(key);
    if (v == nullptr) return fallback;
    if (!v->is_string()) Fail(Path(key), "expected a string");
    return v->get<std::string>();
  }

  void RejectUnknown() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (seen_.count(it.key()) == 0) Fail(Path(it.key()), "unknown key");
    }
  }

  static double AsNumber(const json& v, const std::string& path) {
    if (!v.is_number()) Fail(path, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) Fail(path, "must be finite");
    return x;
  }

  static long AsInteger(const json& v, const std::string& path) {
    if (v.is_number_integer()) return v.get<long>();
    if (v.is_number_float()) {
      const double x = v.get<double>();
      if (std::isfinite(x) && x == std::floor(x) && std::abs(x) < 9.0e15) {
        return static_cast<long>(x);
      }
    }
    Fail(path, "expected an integer");
  }

 private:
  const json& obj_;
  std::string prefix_;
  std::set<std::string> seen_;
};

double ReadRadius(Reader& r, const std::string& key) {
  const json* v = r.Get(key);
  if (v == nullptr || v->is_null()) return kUnbounded;
  if (v->is_string() && v->get<std::string>() == "inf") return kUnbounded;
  const double rho = Reader::AsNumber(*v, r.Path(key));
  if (!(rho > 0.0)) Fail(r.Path(key), "radius must be > 0");
  return rho;
}

Schedule ReadSchedule(Reader& r, const std::string& key,
                      const Schedule& fallback) {
  const json* v = r.Get(key);
  if (v == nullptr) return fallback;
  if (!v->is_number() && !v->is_string()) {
    Fail(r.Path(key), "expected a number or '<kind>:<value>'");
  }
  Schedule s = fallback;
  try {
    s = v->is_number() ? Schedule::Constant(Reader::AsNumber(*v, r.Path(key)))
                       : Schedule::Parse(v->get<std::string>());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kValidation) throw;
    Fail(r.Path(key), e.what());
  }
  if (!(s.value() > 0.0)) Fail(r.Path(key), "step size must be > 0");
  return s;
}

InitSpec ReadInit(Reader& r, const std::string& key, int dim) {
  InitSpec init;
  const json* v = r.Get(key);
  if (v == nullptr) return init;
  if (v->is_number()) {
    init.fill = Reader::AsNumber(*v, r.Path(key));
    return init;
  }
  if (!v->is_array()) Fail(r.Path(key), "expected a number or an array");
  if (static_cast<int>(v->size()) != dim) {
    Fail(r.Path(key),
         fmt::format("expected {} entries, got {}", dim, v->size()));
  }
  for (std::size_t i = 0; i < v->size(); ++i) {
    init.values.push_back(
        Reader::AsNumber((*v)[i], fmt::format("{}[{}]", r.Path(key), i)));
  }
  return init;
}

json RadiusJson(double rho) {
  return std::isfinite(rho) ? json(rho) : json(nullptr);
}

json InitJson(const InitSpec& init) {
  return init.values.empty() ? json(init.fill) : json(init.values);
}

}  // namespace

Vector InitSpec::Resolve(int dim) const {
  if (values.empty()) return Vector::Constant(dim, fill);
  return Eigen::Map<const Vector>(values.data(),
                                  static_cast<Eigen::Index>(values.size()));
}

Objective ExperimentConfig::MakeObjective() const {
  Objective obj = [&] {
    switch (objective) {
      case ObjectiveKind::kBilinear:
        return Objective::Bilinear(d, rho_w, rho_theta);
      case ObjectiveKind::kScScQuadratic:
        return Objective::ScScQuadratic(d, mu, rho_w, rho_theta);
      case ObjectiveKind::kToyNcSc:
        break;
    }
    return Objective::ToyNcSc(d, mu, rho_w, rho_theta);
  }();
  if (constants) obj = obj.WithConstants(*constants);
  return obj;
}

json ExperimentConfig::RunCanonical(std::uint64_t seed) const {
  json j = canonical;
  j.erase("seeds");
  j["seed"] = seed;
  return j;
}

ExperimentConfig ParseConfig(const json& j) {
  ExperimentConfig c;
  Reader top(j, "");

  c.name = top.String("name", c.name);
  if (c.name.empty() || c.name.find_first_of("/\\") != std::string::npos) {
    Fail("name", "must be a non-empty file stem");
  }

  const json* objective = top.Get("objective");
  if (objective == nullptr) Fail("objective", "missing");
  {
    Reader r(*objective, "objective");
    try {
      c.objective = ParseObjectiveKind(r.String("kind", ""));
    } catch (const Error& e) {
      Fail("objective.kind", e.what());
    }
    c.mu = r.Number("mu", 0.0);
    if (c.objective == ObjectiveKind::kBilinear) {
      if (c.mu != 0.0) Fail("objective.mu", "bilinear takes no mu");
    } else if (!(c.mu > 0.0)) {
      Fail("objective.mu", "must be > 0");
    }
    r.RejectUnknown();
  }

  constexpr long kIntMax = std::numeric_limits<int>::max();
  c.d = static_cast<int>(top.Integer("d", 0, 1));
  c.n = static_cast<int>(top.Integer("n", 0, 1));
  if (c.d > kIntMax) Fail("d", "too large");
  if (c.n > kIntMax) Fail("n", "too large");

  const json* seed = top.Get("seed");
  const json* seeds = top.Get("seeds");
  if (seed != nullptr && seeds != nullptr) {
    Fail("seeds", "give either 'seed' or 'seeds', not both");
  }
  if (seed != nullptr) {
    const long s = Reader::AsInteger(*seed, "seed");
    if (s < 0) Fail("seed", "must be >= 0");
    c.seeds = {static_cast<std::uint64_t>(s)};
  } else if (seeds != nullptr) {
    if (!seeds->is_array() || seeds->empty()) {
      Fail("seeds", "expected a non-empty array");
    }
    c.seeds.clear();
    std::set<long> unique;
    for (std::size_t i = 0; i < seeds->size(); ++i) {
      const std::string path = fmt::format("seeds[{}]", i);
      const long s = Reader::AsInteger((*seeds)[i], path);
      if (s < 0) Fail(path, "must be >= 0");
      if (!unique.insert(s).second) Fail(path, "duplicate seed");
      c.seeds.push_back(static_cast<std::uint64_t>(s));
    }
  }

  const json* algorithm = top.Get("algorithm");
  if (algorithm == nullptr) Fail("algorithm", "missing");
  {
    Reader r(*algorithm, "algorithm");
    try {
      c.algorithm.family = ParseFamily(r.String("family", ""));
    } catch (const Error& e) {
      Fail("algorithm.family", e.what());
    }
    try {
      c.algorithm.mode = ParseMode(r.String("mode", "full-batch"));
    } catch (const Error& e) {
      Fail("algorithm.mode", e.what());
    }
    c.algorithm.step_w = ReadSchedule(r, "step_w", c.algorithm.step_w);
    c.algorithm.step_theta =
        ReadSchedule(r, "step_theta", c.algorithm.step_theta);
    c.algorithm.eta = ReadSchedule(r, "eta", c.algorithm.eta);
    r.RejectUnknown();
  }

  c.T = top.Integer("T", 0, 0);
  c.stride = top.Integer("stride", 1, 1);
  c.rho_w = ReadRadius(top, "rho_w");
  c.rho_theta = ReadRadius(top, "rho_theta");
  const bool max_family = c.algorithm.family == Family::kGdmax ||
                          c.algorithm.family == Family::kPpmax;
  if (c.objective == ObjectiveKind::kBilinear && max_family &&
      !std::isfinite(c.rho_theta)) {
    Fail("rho_theta", "bilinear max-based families need a bounded theta-set");
  }

  if (const json* k = top.Get("constants"); k != nullptr && !k->is_null()) {
    Reader r(*k, "constants");
    Constants constants;
    const json* L = r.Get("L");
    const json* Lw = r.Get("L_w");
    if (L == nullptr) Fail("constants.L", "missing");
    if (Lw == nullptr) Fail("constants.L_w", "missing");
    constants.lipschitz = Reader::AsNumber(*L, "constants.L");
    constants.lipschitz_w = Reader::AsNumber(*Lw, "constants.L_w");
    // Without an explicit ell, use the objective's analytic smoothness.
    constants.smoothness =
        r.Number("ell", AnalyticSmoothness(c.MakeObjective()));
    constants.mu = c.mu;
    r.RejectUnknown();
    try {
      constants.Validate();
    } catch (const Error& e) {
      Fail("constants", e.what());
    }
    c.constants = constants;
  }

  c.w0 = ReadInit(top, "w0", c.d);
  c.theta0 = ReadInit(top, "theta0", c.d);
  c.replace_index = static_cast<int>(top.Integer("replace_index", 0, 0));
  if (c.replace_index >= c.n) {
    Fail("replace_index", fmt::format("must be < n = {}", c.n));
  }
  c.out = top.String("out", c.out);
  if (c.out.empty()) Fail("out", "must be non-empty");
  top.RejectUnknown();

  json canon;
  canon["name"] = c.name;
  canon["objective"] = {{"kind", ObjectiveKindName(c.objective)}, {"mu", c.mu}};
  canon["d"] = c.d;
  canon["n"] = c.n;
  canon["seeds"] = c.seeds;
  canon["algorithm"] = {{"family", FamilyName(c.algorithm.family)},
                        {"mode", ModeName(c.algorithm.mode)},
                        {"step_w", c.algorithm.step_w.ToString()},
                        {"step_theta", c.algorithm.step_theta.ToString()},
                        {"eta", c.algorithm.eta.ToString()}};
  canon["T"] = c.T;
  canon["stride"] = c.stride;
  canon["rho_w"] = RadiusJson(c.rho_w);
  canon["rho_theta"] = RadiusJson(c.rho_theta);
  if (c.constants) {
    canon["constants"] = {{"L", c.constants->lipschitz},
                          {"L_w", c.constants->lipschitz_w},
                          {"ell", c.constants->smoothness},
                          {"mu", c.constants->mu}};
  } else {
    canon["constants"] = nullptr;
  }
  canon["w0"] = InitJson(c.w0);
  canon["theta0"] = InitJson(c.theta0);
  canon["replace_index"] = c.replace_index;
  c.canonical = std::move(canon);
  return c;
}

ExperimentConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIo, fmt::format("cannot open config '{}'", path));
  }
  std::stringstream buf;
  buf << in.rdbuf();
  json j;
  try {
    j = json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw Error(
        ErrorCode::kValidation,
        fmt::format("config '{}' is not valid JSON: {}", path, e.what()));
  }
  return ParseConfig(j);
}

}  // namespace mmlab::cli
