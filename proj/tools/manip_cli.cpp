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

#include "manip_cli.hpp"

#include <array>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>

#include <openssl/evp.h>

#include "CLI11.hpp"
#include "manip/manip.hpp"

namespace manip::cli {

std::string sha256_hex(const std::string& bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(),
                 nullptr) != 1) {
    throw IoError("SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    hex.push_back(kHex[digest[i] >> 4]);
    hex.push_back(kHex[digest[i] & 0xF]);
  }
  return hex;
}

namespace {

std::string with_suffix(const std::string& output, const std::string& suffix) {
  std::filesystem::path p(output);
  p.replace_extension();
  return p.string() + suffix;
}

}  // namespace

std::string manifest_path(const std::string& output) {
  return with_suffix(output, ".manifest.json");
}

std::string summary_path(const std::string& output) {
  return with_suffix(output, ".summary.json");
}

namespace {

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> values;
  const char* p = text.data();
  const char* end = p + text.size();
  while (true) {
    while (p < end && *p == ' ') ++p;
    double v = 0.0;
    const auto res = std::from_chars(p, end, v);
    if (res.ec != std::errc() || !std::isfinite(v)) {
      throw ParameterError(what + " must be a comma-separated list of numbers");
    }
    values.push_back(v);
    p = res.ptr;
    while (p < end && *p == ' ') ++p;
    if (p == end) break;
    if (*p != ',') throw ParameterError(what + " must be a comma-separated list of numbers");
    ++p;
  }
  return values;
}

Vector to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

/// Input file contents plus their hash for the manifest.
struct InputFile {
  std::string path;
  std::string bytes;
};

InputFile read_input(const std::string& path, const std::string& what) {
  try {
    return {path, read_text_file(path)};
  } catch (const IoError&) {
    throw ValidationError("cannot read " + what + " file '" + path + "'");
  }
}

Json input_json(const InputFile& f) {
  Json j;
  j["path"] = f.path;
  j["sha256"] = sha256_hex(f.bytes);
  return j;
}

void write_file(const std::string& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  body(out);
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

void write_json_file(const std::string& path, const Json& j) {
  write_file(path, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
}

Json make_manifest(const std::string& command, Json parameters, Json inputs,
                   std::optional<std::uint64_t> seed) {
  Json m;
  m["command"] = command;
  m["tool_version"] = kToolVersion;
  m["parameters"] = std::move(parameters);
  m["inputs"] = std::move(inputs);
  if (seed) {
    m["seed"] = *seed;
  } else {
    m["seed"] = nullptr;
  }
  return m;
}

/// Shared by metrics, sweep and mesh: chain file, configuration, optional
/// weight matrix.
struct ChainInputs {
  std::string chain_path;
  std::string q_text;
  std::string upsilon_path;
  bool degrees = false;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--chain", chain_path, "Chain description (JSON)")->required();
    cmd->add_option("--q", q_text, "Configuration, comma-separated")->required();
    cmd->add_option("--upsilon", upsilon_path,
                    "Joint-space weight matrix (JSON array of rows); default identity");
    cmd->add_flag("--deg", degrees, "Interpret --q in degrees");
  }
};

struct LoadedChain {
  KinematicChain chain;
  Configuration q;
  WeightMatrix upsilon;
  Json inputs;
  Json q_json;  // radians
};

LoadedChain load_chain_inputs(const ChainInputs& in) {
  const InputFile chain_file = read_input(in.chain_path, "chain");
  KinematicChain chain = parse_chain(chain_file.bytes);
  Configuration q = to_vector(parse_list(in.q_text, "--q"));
  if (in.degrees) q = q.unaryExpr([](double d) { return deg_to_rad(d); });
  chain.check_configuration(q);

  Json inputs;
  inputs["chain"] = input_json(chain_file);
  std::optional<WeightMatrix> upsilon;
  if (!in.upsilon_path.empty()) {
    const InputFile w = read_input(in.upsilon_path, "weight matrix");
    upsilon = parse_weight_matrix(w.bytes);
    inputs["upsilon"] = input_json(w);
  } else {
    upsilon = WeightMatrix::identity(chain.num_joints());
  }
  if (upsilon->size() != chain.num_joints()) {
    throw WeightMatrixError("weight matrix size does not match the chain's joint count");
  }
  Json q_json = Json::array();
  for (Eigen::Index i = 0; i < q.size(); ++i) q_json.push_back(q[i]);
  return {std::move(chain), std::move(q), std::move(*upsilon), std::move(inputs),
          std::move(q_json)};
}

struct MetricsArgs {
  ChainInputs chain;
  std::string nu_text;
  std::string out;
};

int cmd_metrics(const MetricsArgs& a, std::ostream& out, std::ostream& err) {
  LoadedChain in = load_chain_inputs(a.chain);
  const Vector raw = to_vector(parse_list(a.nu_text, "--nu"));
  if (raw.size() != in.chain.task_dim()) {
    throw ConfigurationSizeError("--nu must have " + std::to_string(in.chain.task_dim()) +
                                 " components");
  }
  const Direction nu = Direction::normalized(raw);
  if (std::abs(raw.norm() - 1.0) > Direction::kUnitTolerance) {
    err << "warning: --nu had norm " << format_double(raw.norm())
        << "; normalized to unit length\n";
  }
  const Ellipsoid ell = core_matrix(jacobian(in.chain, in.q), in.upsilon);
  const Json report = metrics_json(ell, nu);
  if (a.out.empty()) {
    out << report.dump(2) << '\n';
    return kExitOk;
  }
  write_json_file(a.out, report);
  Json params;
  params["q"] = in.q_json;
  params["nu"] = detail::vector_to_json(nu.vector());
  write_json_file(manifest_path(a.out),
                  make_manifest("metrics", params, in.inputs, std::nullopt));
  return kExitOk;
}

struct SweepArgs {
  ChainInputs chain;
  double range_deg = 5.0;
  int grid_n = 21;
  int dir_samples = 0;
  std::string out;
};

int cmd_sweep(const SweepArgs& a, std::ostream&, std::ostream&) {
  LoadedChain in = load_chain_inputs(a.chain);
  SweepOptions opts;
  opts.range = deg_to_rad(a.range_deg);
  opts.grid_n = a.grid_n;
  opts.direction_samples = a.dir_samples;
  if (!(a.range_deg >= 0.0)) throw ParameterError("--range-deg must be non-negative");
  const SweepGrid grid = perturbation_sweep(in.chain, in.q, opts, in.upsilon);
  write_file(a.out, [&](std::ostream& os) { write_sweep_csv(os, grid); });

  Json params;
  params["q"] = in.q_json;
  params["range_deg"] = a.range_deg;
  params["grid_n"] = a.grid_n;
  params["dir_samples"] = grid.direction_samples;
  params["skipped_directions"] = grid.skipped_directions;
  write_json_file(manifest_path(a.out),
                  make_manifest("sweep", params, in.inputs, std::nullopt));
  return kExitOk;
}

struct ExperimentArgs {
  std::string configs = "1,2";
  double sigma_mm = 10.0;
  int draws = 1000;
  std::uint64_t seed = 0;
  double displacement = 0.02;
  double upper_arm = 0.30;
  double forearm = 0.28;
  int steps = 100;
  int bootstrap = 2000;
  std::string out;
};

int cmd_experiment(const ExperimentArgs& a, std::ostream&, std::ostream&) {
  const KinematicChain chain = reduced_arm_model(a.upper_arm, a.forearm);
  std::vector<StartConfiguration> starts;
  for (double id : parse_list(a.configs, "--configs")) {
    if (id == 1.0) {
      starts.push_back(near_singular_start());
    } else if (id == 2.0) {
      starts.push_back(well_conditioned_start());
    } else {
      throw ParameterError("--configs entries must be 1 (near-singular) or 2 (well-conditioned)");
    }
  }
  ExperimentOptions opts;
  opts.noise.sigma = a.sigma_mm / 1000.0;
  opts.noise.seed = a.seed;
  opts.displacement = a.displacement;
  opts.draws = a.draws;
  opts.ik.steps = a.steps;
  opts.bootstrap_resamples = a.bootstrap;
  const ExperimentResult result = run_trials(chain, starts, opts);

  write_file(a.out, [&](std::ostream& os) { write_trials_csv(os, result.trials); });
  write_json_file(summary_path(a.out), summary_json(result, opts.confidence));

  Json params;
  Json ids = Json::array();
  for (const auto& s : starts) {
    Json c;
    c["config_id"] = s.id;
    c["q"] = detail::vector_to_json(s.q);
    ids.push_back(c);
  }
  params["configs"] = ids;
  params["sigma_mm"] = a.sigma_mm;
  params["draws"] = a.draws;
  params["displacement"] = a.displacement;
  params["upper_arm"] = a.upper_arm;
  params["forearm"] = a.forearm;
  params["ik_steps"] = a.steps;
  params["bootstrap_resamples"] = a.bootstrap;
  params["confidence"] = opts.confidence;
  write_json_file(manifest_path(a.out),
                  make_manifest("experiment", params, Json::object(), a.seed));
  return kExitOk;
}

struct MeshArgs {
  ChainInputs chain;
  bool pseudo = false;
  int samples = 64;
  std::string out;
};

int cmd_mesh(const MeshArgs& a, std::ostream&, std::ostream&) {
  LoadedChain in = load_chain_inputs(a.chain);
  const Ellipsoid ell = core_matrix(jacobian(in.chain, in.q), in.upsilon);
  const EllipsoidMesh mesh = ellipsoid_mesh(ell, a.pseudo, a.samples);
  write_file(a.out, [&](std::ostream& os) {
    if (const auto* surface = std::get_if<SurfaceMesh>(&mesh)) {
      write_obj(os, *surface);
    } else {
      write_polyline_csv(os, std::get<Polyline>(mesh));
    }
  });
  Json params;
  params["q"] = in.q_json;
  params["pseudo"] = a.pseudo;
  params["samples"] = a.samples;
  write_json_file(manifest_path(a.out),
                  make_manifest("mesh", params, in.inputs, std::nullopt));
  return kExitOk;
}

std::string one_line(std::string s) {
  for (char& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Manipulability ellipsoid and pseudo-ellipsoid analysis"};
  app.name(args.empty() ? "manip" : std::filesystem::path(args[0]).filename().string());
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  MetricsArgs metrics;
  auto* m = app.add_subcommand("metrics", "Directional radius r and pseudo-radius l as JSON");
  metrics.chain.add_to(m);
  m->add_option("--nu", metrics.nu_text, "Task-space direction, comma-separated")->required();
  m->add_option("--out", metrics.out, "Write the report here instead of stdout");

  SweepArgs sweep;
  auto* s = app.add_subcommand("sweep", "Max |dr| / |dl| grid over joint-angle errors");
  sweep.chain.add_to(s);
  s->add_option("--range-deg", sweep.range_deg, "Half-width of the offset grid, degrees")
      ->capture_default_str();
  s->add_option("--grid-n", sweep.grid_n, "Grid points per joint (odd)")->capture_default_str();
  s->add_option("--dir-samples", sweep.dir_samples,
                "Sampled directions (0: 720 planar, 1024 spatial)")
      ->capture_default_str();
  s->add_option("--out", sweep.out, "Output CSV")->required();

  ExperimentArgs experiment;
  auto* e = app.add_subcommand("experiment", "Synthetic noisy-keypoint experiment");
  e->add_option("--configs", experiment.configs,
                "Start configurations: 1 near-singular, 2 well-conditioned")
      ->capture_default_str();
  e->add_option("--sigma-mm", experiment.sigma_mm, "Keypoint noise std, millimeters")
      ->capture_default_str();
  e->add_option("--draws", experiment.draws, "Noise draws per direction")->capture_default_str();
  e->add_option("--seed", experiment.seed, "Random seed")->capture_default_str();
  e->add_option("--displacement", experiment.displacement, "Hand path length, meters")
      ->capture_default_str();
  e->add_option("--upper-arm", experiment.upper_arm, "Upper-arm length, meters")
      ->capture_default_str();
  e->add_option("--forearm", experiment.forearm, "Forearm length, meters")->capture_default_str();
  e->add_option("--ik-steps", experiment.steps, "Ground-truth IK increments")
      ->capture_default_str();
  e->add_option("--bootstrap", experiment.bootstrap, "Bootstrap resamples")
      ->capture_default_str();
  e->add_option("--out", experiment.out, "Trial CSV; summary and manifest are written alongside")
      ->required();

  MeshArgs mesh;
  auto* h = app.add_subcommand("mesh", "Ellipsoid or pseudo-ellipsoid surface (OBJ / CSV)");
  mesh.chain.add_to(h);
  h->add_flag("--pseudo", mesh.pseudo, "Pseudo-ellipsoid instead of the ellipsoid");
  h->add_option("--samples", mesh.samples, "Directions per revolution (>= 16)")
      ->capture_default_str();
  h->add_option("--out", mesh.out, "Output file (.obj for 3-D, .csv for 2-D)")->required();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& ex) {
    err << "error: " << one_line(ex.what()) << '\n';
    return kExitValidation;
  }

  try {
    if (m->parsed()) return cmd_metrics(metrics, out, err);
    if (s->parsed()) return cmd_sweep(sweep, out, err);
    if (e->parsed()) return cmd_experiment(experiment, out, err);
    if (h->parsed()) return cmd_mesh(mesh, out, err);
  } catch (const ValidationError& ex) {
    err << "error: " << one_line(ex.what()) << '\n';
    return kExitValidation;
  } catch (const NumericalError& ex) {
    err << "error: " << one_line(ex.what()) << '\n';
    return kExitNumerical;
  } catch (const IoError& ex) {
    err << "error: " << one_line(ex.what()) << '\n';
    return kExitIo;
  }
  err << "error: no subcommand\n";
  return kExitValidation;
}

}  // namespace manip::cli
