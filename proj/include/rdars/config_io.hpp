// SPDX-License-Identifier: Apache-2.0
//
// rdars-mimo: statistical-CSI transceiver design for RDARS-aided massive MIMO
// Copyright (C) 2026 The rdars-mimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// JSON configuration files. Every key is optional and falls back to the
// defaults of ScenarioSpec / ExperimentSpec; unknown keys are rejected so that
// a misspelt field cannot silently leave a default in place.

#ifndef RDARS_CONFIG_IO_HPP
#define RDARS_CONFIG_IO_HPP

#include "rdars/experiments.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace rdars {

using Json = nlohmann::json;

namespace detail {

inline void reject_unknown(const Json& j, const std::set<std::string>& known, const std::string& where) {
  if (!j.is_object()) throw DomainError(where + ": expected a JSON object");
  for (const auto& item : j.items())
    if (!known.count(item.key())) throw DomainError(where + ": unknown key '" + item.key() + "'");
}

template <class T>
void read_if(const Json& j, const char* key, T& dst) {
  if (j.contains(key)) dst = j.at(key).get<T>();
}

inline Point3 read_point(const Json& j) {
  const auto v = j.get<std::vector<double>>();
  if (v.size() != 3) throw DomainError("config: positions need three coordinates");
  return {v[0], v[1], v[2]};
}

inline PhaseSolver parse_solver(const std::string& s) {
  if (s == "rga") return PhaseSolver::kRga;
  if (s == "mm") return PhaseSolver::kMm;
  throw DomainError("config: solver must be 'rga' or 'mm'");
}

inline std::string solver_name(PhaseSolver s) { return s == PhaseSolver::kMm ? "mm" : "rga"; }

inline PrelogMode parse_prelog(const std::string& s) {
  if (s == "coherence") return PrelogMode::kCoherence;
  if (s == "pilot") return PrelogMode::kPilot;
  throw DomainError("config: prelog must be 'coherence' or 'pilot'");
}

inline std::string prelog_name(PrelogMode m) { return m == PrelogMode::kPilot ? "pilot" : "coherence"; }

}  // namespace detail

inline ScenarioSpec scenario_from_json(const Json& j) {
  detail::reject_unknown(j,
                         {"L", "Ly", "N", "Ny", "a", "K", "connected_indices", "rician_ris_bs",
                          "rician_user_ris", "c0_db", "exponent_user_ris", "exponent_ris_bs",
                          "exponent_user_bs", "bs", "ris", "user_center", "user_radius", "p_max_dbm",
                          "pilot_power_dbm", "pilot_follows_p_max", "noise_bs_dbm", "noise_ris_dbm",
                          "tau", "tau_c", "weights", "spacing_wavelengths", "wavelength", "seed"},
                         "scenario");
  ScenarioSpec s;
  detail::read_if(j, "L", s.L);
  detail::read_if(j, "Ly", s.Ly);
  detail::read_if(j, "N", s.N);
  detail::read_if(j, "Ny", s.Ny);
  detail::read_if(j, "a", s.a);
  detail::read_if(j, "K", s.K);
  detail::read_if(j, "connected_indices", s.connected_indices);
  detail::read_if(j, "rician_ris_bs", s.rician_ris_bs);
  if (j.contains("rician_user_ris")) {
    const Json& r = j.at("rician_user_ris");
    s.rician_user_ris = r.is_array() ? r.get<std::vector<double>>() : std::vector<double>{r.get<double>()};
  }
  detail::read_if(j, "c0_db", s.c0_db);
  detail::read_if(j, "exponent_user_ris", s.exponent_user_ris);
  detail::read_if(j, "exponent_ris_bs", s.exponent_ris_bs);
  detail::read_if(j, "exponent_user_bs", s.exponent_user_bs);
  if (j.contains("bs")) s.bs = detail::read_point(j.at("bs"));
  if (j.contains("ris")) s.ris = detail::read_point(j.at("ris"));
  if (j.contains("user_center")) s.user_center = detail::read_point(j.at("user_center"));
  detail::read_if(j, "user_radius", s.user_radius);
  detail::read_if(j, "p_max_dbm", s.p_max_dbm);
  detail::read_if(j, "pilot_power_dbm", s.pilot_power_dbm);
  detail::read_if(j, "pilot_follows_p_max", s.pilot_follows_p_max);
  detail::read_if(j, "noise_bs_dbm", s.noise_bs_dbm);
  detail::read_if(j, "noise_ris_dbm", s.noise_ris_dbm);
  detail::read_if(j, "tau", s.tau);
  detail::read_if(j, "tau_c", s.tau_c);
  detail::read_if(j, "weights", s.weights);
  detail::read_if(j, "spacing_wavelengths", s.spacing_wavelengths);
  detail::read_if(j, "wavelength", s.wavelength);
  detail::read_if(j, "seed", s.seed);
  return s;
}

inline Json scenario_to_json(const ScenarioSpec& s) {
  const auto pt = [](const Point3& p) { return Json::array({p[0], p[1], p[2]}); };
  return Json{{"L", s.L},
              {"Ly", s.Ly},
              {"N", s.N},
              {"Ny", s.Ny},
              {"a", s.a},
              {"K", s.K},
              {"connected_indices", s.connected_indices},
              {"rician_ris_bs", s.rician_ris_bs},
              {"rician_user_ris", s.rician_user_ris},
              {"c0_db", s.c0_db},
              {"exponent_user_ris", s.exponent_user_ris},
              {"exponent_ris_bs", s.exponent_ris_bs},
              {"exponent_user_bs", s.exponent_user_bs},
              {"bs", pt(s.bs)},
              {"ris", pt(s.ris)},
              {"user_center", pt(s.user_center)},
              {"user_radius", s.user_radius},
              {"p_max_dbm", s.p_max_dbm},
              {"pilot_power_dbm", s.pilot_power_dbm},
              {"pilot_follows_p_max", s.pilot_follows_p_max},
              {"noise_bs_dbm", s.noise_bs_dbm},
              {"noise_ris_dbm", s.noise_ris_dbm},
              {"tau", s.tau},
              {"tau_c", s.tau_c},
              {"weights", s.weights},
              {"spacing_wavelengths", s.spacing_wavelengths},
              {"wavelength", s.wavelength},
              {"seed", s.seed}};
}

inline ExperimentSpec experiment_from_json(const Json& j) {
  detail::reject_unknown(j,
                         {"experiment", "scenario", "baselines", "grid", "seeds", "draws", "output",
                          "solver", "prelog", "max_iter", "tol", "threads", "wall_time",
                          "regression_count", "regression_seed", "analytic_scale"},
                         "experiment");
  ExperimentSpec e;
  if (j.contains("experiment")) e.kind = parse_experiment(j.at("experiment").get<std::string>());
  if (j.contains("scenario")) e.scenario = scenario_from_json(j.at("scenario"));
  if (j.contains("baselines"))
    for (const auto& b : j.at("baselines")) e.baselines.push_back(parse_baseline(b.get<std::string>()));
  detail::read_if(j, "grid", e.grid);
  detail::read_if(j, "seeds", e.seeds);
  detail::read_if(j, "draws", e.draws);
  detail::read_if(j, "output", e.output);
  if (j.contains("solver")) e.joint_solver = detail::parse_solver(j.at("solver").get<std::string>());
  if (j.contains("prelog")) e.prelog = detail::parse_prelog(j.at("prelog").get<std::string>());
  detail::read_if(j, "max_iter", e.max_iter);
  detail::read_if(j, "tol", e.tol);
  detail::read_if(j, "threads", e.threads);
  detail::read_if(j, "wall_time", e.wall_time);
  detail::read_if(j, "regression_count", e.regression_count);
  detail::read_if(j, "regression_seed", e.regression_seed);
  detail::read_if(j, "analytic_scale", e.analytic_scale);
  return e;
}

inline Json experiment_to_json(const ExperimentSpec& e) {
  Json bases = Json::array();
  for (auto b : e.baselines) bases.push_back(std::string(baseline_label(b)));
  return Json{{"experiment", std::string(experiment_name(e.kind))},
              {"scenario", scenario_to_json(e.scenario)},
              {"baselines", bases},
              {"grid", e.grid},
              {"seeds", e.seeds},
              {"draws", e.draws},
              {"output", e.output},
              {"solver", detail::solver_name(e.joint_solver)},
              {"prelog", detail::prelog_name(e.prelog)},
              {"max_iter", e.max_iter},
              {"tol", e.tol},
              {"threads", e.threads},
              {"wall_time", e.wall_time},
              {"regression_count", e.regression_count},
              {"regression_seed", e.regression_seed},
              {"analytic_scale", e.analytic_scale}};
}

/// Parses a config document; JSON type errors are reported as DomainError.
inline ExperimentSpec parse_experiment_config(const std::string& text) {
  try {
    return experiment_from_json(Json::parse(text));
  } catch (const Json::exception& e) {
    throw DomainError(std::string("config: ") + e.what());
  }
}

inline ExperimentSpec load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_experiment_config(ss.str());
}

}  // namespace rdars

#endif  // RDARS_CONFIG_IO_HPP
