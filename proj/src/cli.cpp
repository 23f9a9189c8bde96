// Copyright 2026 The gausskit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gausskit/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gausskit/documents.hpp"
#include "gausskit/entanglement.hpp"
#include "gausskit/errors.hpp"
#include "gausskit/nogo.hpp"
#include "gausskit/positive_maps.hpp"

namespace gausskit {

namespace {

using Json = nlohmann::ordered_json;

std::size_t threads_from_env() {
  const char* value = std::getenv("GAUSSKIT_THREADS");
  if (value == nullptr || *value == '\0') return 0;
  try {
    return static_cast<std::size_t>(std::stoul(value));
  } catch (const std::exception&) {
    throw DataError(std::string("GAUSSKIT_THREADS: not a number: ") + value);
  }
}

Json split_to_json(const BipartiteSplit& split) {
  Json j;
  j["a"] = split.a_modes();
  j["b"] = split.b_modes();
  return j;
}

int cmd_validate(const std::string& path, double tol, std::ostream& out) {
  const GaussianState s = parse_state_document(read_text_file(path));
  const CmCheck check = check_cm(s.cm(), tol);
  Json j;
  j["valid"] = check.valid;
  j["symmetric"] = check.symmetric;
  j["min_eigenvalue"] = check.min_eigenvalue;
  try {
    j["symplectic_eigenvalues"] = symplectic_eigenvalues(s.cm());
  } catch (const std::exception& e) {
    j["symplectic_eigenvalues"] = nullptr;
    j["note"] = e.what();
  }
  out << write_document(j);
  return check.valid ? kExitOk : kExitNegative;
}

int cmd_apply(const std::string& map_path, const std::string& state_path, bool determinize_flag,
              std::ostream& out, std::ostream& err) {
  const MapDocument doc = parse_map_document(read_text_file(map_path));
  const GaussianState s = parse_state_document(read_text_file(state_path));
  if (s.modes() != doc.n_in) {
    throw DimensionError("state has " + std::to_string(s.modes()) + " modes, map expects " +
                         std::to_string(doc.n_in));
  }
  if (doc.channel) {
    out << write_state_document(channel_apply(*doc.channel, s));
    return kExitOk;
  }
  bool pinv = false;
  GaussianState result = vacuum(doc.n_out);
  if (determinize_flag) {
    const DeterministicTransform t = determinize(*doc.map, s.cm());
    result = t(s.disp());
    pinv = t.used_pseudo_inverse;
  } else {
    MapOutput o = apply(*doc.map, s);
    result = std::move(o.state);
    pinv = o.used_pseudo_inverse;
  }
  if (pinv) err << "note: singular system, pseudo-inverse used\n";
  out << write_state_document(result);
  return kExitOk;
}

int cmd_measure(const std::string& state_path, const std::vector<std::size_t>& modes, const std::string& povm_path,
                const std::vector<std::string>& quads, const std::vector<double>& outcome, std::ostream& out,
                std::ostream& err) {
  const GaussianState s = parse_state_document(read_text_file(state_path));
  if (modes.empty()) throw DataError("--modes: at least one mode is required");
  const Vector outcome_vec = Eigen::Map<const Vector>(outcome.data(), static_cast<Eigen::Index>(outcome.size()));
  MapOutput o{vacuum(1), false};
  if (!povm_path.empty()) {
    const GaussianState p = parse_state_document(read_text_file(povm_path));
    Vector d = p.disp();
    if (!outcome.empty()) {
      if (outcome_vec.size() != d.size()) throw DimensionError("--outcome: expected one value per quadrature");
      d = outcome_vec;
    }
    if (p.modes() != modes.size()) throw DimensionError("POVM document does not match --modes");
    o = measure_pure_gaussian(s, modes, PureGaussianPOVMElement(p.cm(), d));
  } else {
    if (quads.size() != modes.size()) throw DimensionError("--homodyne: expected one quadrature per mode");
    std::vector<Quadrature> q;
    for (const auto& name : quads) {
      if (name == "X" || name == "x") {
        q.push_back(Quadrature::X);
      } else if (name == "P" || name == "p") {
        q.push_back(Quadrature::P);
      } else {
        throw DataError("--homodyne: unknown quadrature '" + name + "'");
      }
    }
    Vector res = outcome.empty() ? Vector::Zero(static_cast<Eigen::Index>(modes.size())) : outcome_vec;
    if (res.size() != static_cast<Eigen::Index>(modes.size())) {
      throw DimensionError("--outcome: expected one value per measured mode");
    }
    o = homodyne(s, modes, q, res);
  }
  if (o.used_pseudo_inverse) err << "note: singular system, pseudo-inverse used\n";
  out << write_state_document(o.state);
  return kExitOk;
}

int cmd_entanglement(const std::string& path, const std::vector<std::size_t>& a, const std::string& what,
                     std::optional<double> tol, std::ostream& out) {
  const GaussianState s = parse_state_document(read_text_file(path));
  const BipartiteSplit split = BipartiteSplit::from_a_modes(a, s.modes());
  Json j;
  j["split"] = split_to_json(split);
  j["what"] = what;
  if (what == "ppt") {
    const double value = ppt_min_symplectic(s.cm(), split);
    j["value"] = value;
    j["npt"] = value < 1.0 - tol.value_or(kDefaultTol);
    j["status"] = "determinate";
    out << write_document(j);
    return kExitOk;
  }
  if (what != "v") throw DataError("--what: expected 'v' or 'ppt'");
  VOptions options;
  if (tol) options.tol = options.feasibility.tol = *tol;
  const VResult v = v_measure(s.cm(), split, options);
  j["value"] = v.value;
  j["lower"] = v.lower;
  j["upper"] = v.upper;
  j["method"] = v.method;
  j["status"] = v.indeterminate ? "indeterminate" : "determinate";
  out << write_document(j);
  return v.indeterminate ? kExitIndeterminate : kExitOk;
}

int cmd_classify_map(const std::string& path, const std::vector<std::size_t>& a, std::optional<double> tol,
                     std::ostream& out) {
  const MapDocument doc = parse_map_document(read_text_file(path));
  if (!doc.map) throw DataError("classify-map needs a (gamma, d) map document");
  const BipartiteSplit split = BipartiteSplit::from_a_modes(a, doc.n_out + doc.n_in);
  FeasibilityOptions options;
  if (tol) options.tol = *tol;
  const LocalityReport r = classify_map(*doc.map, split, options);
  Json j;
  j["class"] = to_string(r.cls);
  j["split"] = split_to_json(split);
  j["ppt_margin"] = r.ppt_margin;
  j["separability"] = to_string(r.separability.status);
  j["margin_lower"] = r.separability.margin_lower;
  j["margin_upper"] = r.separability.margin_upper;
  if (!r.separability.note.empty()) j["note"] = r.separability.note;
  out << write_document(j);
  return r.cls == LocalityClass::PptUndecided ? kExitIndeterminate : kExitOk;
}

int cmd_nogo(const NogoConfig& config, const std::string& command, const std::string& out_path, std::ostream& out) {
  if (config.trials == 0) throw CLI::ValidationError("--trials", "must be positive");
  const auto start = std::chrono::steady_clock::now();
  const NogoReport report = nogo_montecarlo(config);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const std::string text = write_document(nogo_report_to_json(report, command, wall));
  if (out_path.empty()) {
    out << text;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw DataError("cannot write '" + out_path + "'");
    f << text;
    out << (report.pass ? "PASS" : "FAIL") << " trials=" << report.trials.size()
        << " violations=" << report.violations << " indeterminate=" << report.indeterminate << "\n";
  }
  return report.pass ? kExitOk : kExitNegative;
}

int cmd_positivity(const std::string& path, const PositivityOptions& options, std::ostream& out) {
  const MapDocument doc = parse_map_document(read_text_file(path));
  if (!doc.map) throw DataError("positivity needs a (gamma, d) map document");
  const PositivityVerdict v = is_positive_map(GaussianMapMatrix::from_real(*doc.map), options);
  Json j;
  j["class"] = to_string(v.cls);
  j["output_block_margin"] = v.output_block_margin;
  j["mu_star"] = v.mu_star;
  j["dual_bound"] = v.dual_bound;
  j["restarts"] = v.restarts;
  j["restarts_agreeing"] = v.restarts_agreeing;
  j["restarts_agreed"] = v.restarts_agreed;
  j["used_pseudo_inverse"] = v.used_pseudo_inverse;
  if (v.certificate && v.certificate->available) {
    j["certificate"] = state_to_json(GaussianState(v.certificate->cm));
    j["certificate_output_margin"] = v.certificate_output_margin;
  }
  if (!v.note.empty()) j["note"] = v.note;
  out << write_document(j);
  switch (v.cls) {
    case PositivityClass::NotPositive: return kExitNegative;
    case PositivityClass::PositiveUndetermined: return kExitIndeterminate;
    default: return kExitOk;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gaussian state, map and entanglement toolkit", "gausskit"};
  app.require_subcommand(1);
  std::optional<double> tol;
  app.add_option("--tol", tol, "Override every numerical tolerance (default: library defaults)");

  std::string state_path, map_path, povm_path, out_path, what = "v";
  bool determinize_flag = false;
  std::vector<std::size_t> modes, split;
  std::vector<std::string> quads;
  std::vector<double> outcome;
  NogoConfig nogo;
  PositivityOptions pos;

  auto* validate = app.add_subcommand("validate", "Check a state document");
  validate->add_option("state", state_path)->required();

  auto* apply_cmd = app.add_subcommand("apply", "Apply a map document to a state document");
  apply_cmd->add_option("map", map_path)->required();
  apply_cmd->add_option("state", state_path)->required();
  apply_cmd->add_flag("--determinize", determinize_flag, "Use the trace-preserving form");

  auto* measure = app.add_subcommand("measure", "Condition a state on a measurement outcome");
  measure->add_option("state", state_path)->required();
  measure->add_option("--modes", modes, "Measured modes")->delimiter(',')->required();
  auto* povm_opt = measure->add_option("--povm", povm_path, "Pure POVM state document");
  auto* hom_opt = measure->add_option("--homodyne", quads, "Quadratures X or P, one per mode")->delimiter(',');
  povm_opt->excludes(hom_opt);
  measure->add_option("--outcome", outcome, "Measurement outcome")->delimiter(',');

  auto* ent = app.add_subcommand("entanglement", "Entanglement of a bipartite state");
  ent->add_option("state", state_path)->required();
  ent->add_option("--split", split, "Modes of party A")->delimiter(',')->required();
  ent->add_option("--what", what, "v or ppt")->capture_default_str();

  auto* classify = app.add_subcommand("classify-map", "Locality class of a map");
  classify->add_option("map", map_path)->required();
  classify->add_option("--split", split, "Modes of party A (outputs first, then inputs)")
      ->delimiter(',')
      ->required();

  auto* nogo_cmd = app.add_subcommand("nogo", "Monte-Carlo check of the no-distillation property");
  nogo_cmd->add_option("--trials", nogo.trials)->capture_default_str();
  nogo_cmd->add_option("--seed", nogo.seed)->capture_default_str();
  nogo_cmd->add_option("--modes-a", nogo.modes_a)->capture_default_str();
  nogo_cmd->add_option("--modes-b", nogo.modes_b)->capture_default_str();
  nogo_cmd->add_option("--mixedness", nogo.mixedness)->capture_default_str();
  nogo_cmd->add_option("--out", out_path, "Report path");

  auto* positivity = app.add_subcommand("positivity", "Positivity of a Gaussian map");
  positivity->add_option("map", map_path)->required();
  positivity->add_option("--restarts", pos.restarts)->capture_default_str();
  positivity->add_option("--seed", pos.seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*validate) return cmd_validate(state_path, tol.value_or(kDefaultTol), out);
    if (*apply_cmd) return cmd_apply(map_path, state_path, determinize_flag, out, err);
    if (*measure) {
      if (povm_path.empty() && quads.empty()) throw DataError("measure: one of --povm or --homodyne is required");
      return cmd_measure(state_path, modes, povm_path, quads, outcome, out, err);
    }
    if (*ent) return cmd_entanglement(state_path, split, what, tol, out);
    if (*classify) return cmd_classify_map(map_path, split, tol, out);
    if (*nogo_cmd) {
      nogo.threads = threads_from_env();
      if (tol) nogo.tol = *tol;
      std::string command = "nogo --trials " + std::to_string(nogo.trials) + " --seed " + std::to_string(nogo.seed) +
                            " --modes-a " + std::to_string(nogo.modes_a) + " --modes-b " +
                            std::to_string(nogo.modes_b) + " --mixedness " + CLI::detail::to_string(nogo.mixedness);
      return cmd_nogo(nogo, command, out_path, out);
    }
    if (*positivity) {
      if (tol) pos.tol = *tol;
      return cmd_positivity(map_path, pos, out);
    }
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.get_name() << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace gausskit
