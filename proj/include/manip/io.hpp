// Copyright 2026 The manip Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/// @file io.hpp
/// File formats: chain and weight-matrix JSON inputs; CSV, OBJ and JSON
/// outputs. Numbers are written in shortest round-trip form so that output
/// bytes depend only on the values.

#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>

#include <nlohmann/json.hpp>

#include "manip/chain.hpp"
#include "manip/ellipsoid.hpp"
#include "manip/experiment.hpp"
#include "manip/mesh.hpp"
#include "manip/sweep.hpp"

namespace manip {

using Json = nlohmann::ordered_json;

/// Shortest decimal that parses back to `v`; "inf", "-inf", "nan" for
/// non-finite values and "0" for negative zero.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace detail {

inline Vector3 vec3_from_json(const Json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 3) {
    throw ChainError(what + " must be an array of 3 numbers");
  }
  Vector3 v;
  for (int i = 0; i < 3; ++i) {
    if (!j[static_cast<std::size_t>(i)].is_number()) {
      throw ChainError(what + " must be an array of 3 numbers");
    }
    v[i] = j[static_cast<std::size_t>(i)].get<double>();
  }
  return v;
}

inline Json vector_to_json(const Vector& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i] == 0.0 ? 0.0 : v[i]);
  return arr;
}

}  // namespace detail

/// Parses the chain description. Axes are normalized on load; a zero axis is
/// rejected. Missing limits default to [-pi, pi].
inline KinematicChain chain_from_json(const Json& j) {
  try {
    if (!j.is_object()) throw ChainError("chain file must hold a JSON object");
    if (!j.contains("task_dim") || !j["task_dim"].is_number_integer()) {
      throw ChainError("chain file needs integer task_dim");
    }
    if (!j.contains("joints") || !j["joints"].is_array()) {
      throw ChainError("chain file needs a joints array");
    }
    std::vector<JointSpec> joints;
    std::size_t index = 0;
    for (const Json& jj : j["joints"]) {
      const std::string where = "joints[" + std::to_string(index++) + "]";
      if (!jj.is_object() || !jj.contains("axis")) {
        throw ChainError(where + " needs an axis");
      }
      JointSpec spec;
      const Vector3 axis = detail::vec3_from_json(jj["axis"], where + ".axis");
      if (!(axis.norm() > 0.0)) throw ChainError(where + ".axis is zero");
      spec.axis = axis.normalized();
      if (jj.contains("offset")) {
        spec.offset = detail::vec3_from_json(jj["offset"], where + ".offset");
      }
      if (jj.contains("limits")) {
        const Json& lim = jj["limits"];
        if (!lim.is_array() || lim.size() != 2 || !lim[0].is_number() ||
            !lim[1].is_number()) {
          throw ChainError(where + ".limits must be [lo, hi]");
        }
        spec.lower_limit = lim[0].get<double>();
        spec.upper_limit = lim[1].get<double>();
      }
      joints.push_back(spec);
    }
    Vector3 ee = Vector3::Zero();
    if (j.contains("ee_offset")) ee = detail::vec3_from_json(j["ee_offset"], "ee_offset");
    return KinematicChain(std::move(joints), ee, j["task_dim"].get<int>());
  } catch (const Json::exception& e) {
    throw ChainError(std::string("malformed chain file: ") + e.what());
  }
}

inline KinematicChain parse_chain(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ChainError(std::string("chain file is not valid JSON: ") + e.what());
  }
  return chain_from_json(j);
}

inline KinematicChain load_chain(const std::string& path) {
  return parse_chain(read_text_file(path));
}

inline Json chain_to_json(const KinematicChain& chain) {
  Json j;
  j["task_dim"] = chain.task_dim();
  Json joints = Json::array();
  for (const JointSpec& s : chain.joints()) {
    Json jj;
    jj["axis"] = detail::vector_to_json(s.axis);
    jj["offset"] = detail::vector_to_json(s.offset);
    jj["limits"] = Json::array({s.lower_limit, s.upper_limit});
    joints.push_back(jj);
  }
  j["joints"] = joints;
  j["ee_offset"] = detail::vector_to_json(chain.end_effector_offset());
  return j;
}

/// Dense matrix as a JSON array of equal-length numeric rows.
inline WeightMatrix parse_weight_matrix(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw WeightMatrixError(std::string("weight matrix is not valid JSON: ") + e.what());
  }
  if (!j.is_array() || j.empty()) {
    throw WeightMatrixError("weight matrix must be an array of rows");
  }
  const std::size_t n = j.size();
  Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < n; ++r) {
    if (!j[r].is_array() || j[r].size() != n) {
      throw WeightMatrixError("weight matrix must be square");
    }
    for (std::size_t c = 0; c < n; ++c) {
      if (!j[r][c].is_number()) throw WeightMatrixError("weight entries must be numbers");
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = j[r][c].get<double>();
    }
  }
  return WeightMatrix(std::move(m));
}

inline WeightMatrix load_weight_matrix(const std::string& path) {
  return parse_weight_matrix(read_text_file(path));
}

/// Metric report: r, l, radii, axes (one row per principal axis),
/// rank_deficient.
inline Json metrics_json(const Ellipsoid& ell, const Direction& dir) {
  Json j;
  j["r"] = radius_along(ell, dir);
  j["l"] = pseudo_radius_along(ell, dir);
  j["radii"] = detail::vector_to_json(ell.radii());
  Json axes = Json::array();
  for (Eigen::Index i = 0; i < ell.dim(); ++i) {
    axes.push_back(detail::vector_to_json(ell.axes().col(i)));
  }
  j["axes"] = axes;
  j["rank_deficient"] = ell.rank_deficient();
  return j;
}

inline constexpr const char* kSweepCsvHeader = "dq1_deg,dq2_deg,max_abs_dr,max_abs_dl";
inline constexpr const char* kTrialCsvHeader =
    "config_id,dir_index,draw,delta_r_deg,delta_l_deg,dq_true_deg";

inline void write_sweep_csv(std::ostream& out, const SweepGrid& grid) {
  out << kSweepCsvHeader << '\n';
  for (std::size_t i = 0; i < grid.delta_q1.size(); ++i) {
    for (std::size_t j = 0; j < grid.delta_q2.size(); ++j) {
      const auto ii = static_cast<Eigen::Index>(i);
      const auto jj = static_cast<Eigen::Index>(j);
      out << format_double(rad_to_deg(grid.delta_q1[i])) << ','
          << format_double(rad_to_deg(grid.delta_q2[j])) << ','
          << format_double(grid.max_abs_dr(ii, jj)) << ','
          << format_double(grid.max_abs_dl(ii, jj)) << '\n';
    }
  }
}

inline void write_trials_csv(std::ostream& out,
                             const std::vector<ExperimentTrial>& trials) {
  out << kTrialCsvHeader << '\n';
  for (const ExperimentTrial& t : trials) {
    out << t.config_id << ',' << t.direction_index << ',' << t.draw << ','
        << format_double(rad_to_deg(t.delta_r)) << ','
        << format_double(rad_to_deg(t.delta_l)) << ','
        << format_double(rad_to_deg(t.dq_norm_true)) << '\n';
  }
}

inline Json interval_json(const Interval& iv) { return Json::array({iv.lo, iv.hi}); }

inline Json summary_json(const ExperimentResult& result, double confidence) {
  Json configs = Json::array();
  for (const ConfigSummary& s : result.summaries) {
    Json j;
    j["config_id"] = s.config_id;
    j["trials"] = s.trials;
    j["infinite_delta_r"] = s.infinite_delta_r;
    j["mean_dq_true_deg"] = s.mean_dq_true_deg;
    j["mean_abs_err_r_deg"] = s.mean_abs_err_r_deg;
    j["mean_abs_err_l_deg"] = s.mean_abs_err_l_deg;
    j["ci_err_r_deg"] = interval_json(s.ci_err_r_deg);
    j["ci_err_l_deg"] = interval_json(s.ci_err_l_deg);
    j["mean_err_diff_deg"] = s.mean_err_diff_deg;
    j["ci_err_diff_deg"] = interval_json(s.ci_err_diff_deg);
    configs.push_back(j);
  }
  Json j;
  j["confidence"] = confidence;
  j["configs"] = configs;
  return j;
}

inline void write_obj(std::ostream& out, const SurfaceMesh& mesh) {
  for (const Vector3& v : mesh.vertices) {
    out << "v " << format_double(v.x()) << ' ' << format_double(v.y()) << ' '
        << format_double(v.z()) << '\n';
  }
  for (const auto& f : mesh.faces) {
    out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  }
}

inline void write_polyline_csv(std::ostream& out, const Polyline& line) {
  out << "x,y\n";
  for (const auto& p : line.points) {
    out << format_double(p.x()) << ',' << format_double(p.y()) << '\n';
  }
}

}  // namespace manip
