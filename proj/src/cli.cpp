#include "prepspace/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "prepspace/bloch.hpp"
#include "prepspace/dynamics.hpp"
#include "prepspace/errors.hpp"
#include "prepspace/frame.hpp"
#include "prepspace/io.hpp"
#include "prepspace/metric.hpp"
#include "prepspace/verify.hpp"

namespace prepspace::cli {

namespace {

using io::Json;

void require_positive(const std::optional<double>& v, const char* flag) {
  if (v && !(std::isfinite(*v) && *v > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, std::string(flag) + " must be positive");
  }
}

double number(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw Error(ErrorCode::InvalidArgument, std::string("missing number '") + key + "'");
  }
  return j.at(key).get<double>();
}

// Writes to the configured file, or to out when no path was given.
template <typename Writer>
void emit(const RunConfig& cfg, std::ostream& out, Writer&& write) {
  if (cfg.output_path.empty()) {
    write(out);
    return;
  }
  std::ofstream file(cfg.output_path, std::ios::binary);
  if (!file) throw Error(ErrorCode::InvalidArgument, "cannot open output file " + cfg.output_path);
  write(file);
  if (!file) throw Error(ErrorCode::InvalidArgument, "failed writing " + cfg.output_path);
}

void emit_json(const RunConfig& cfg, std::ostream& out, const Json& j) {
  emit(cfg, out, [&](std::ostream& s) { s << j.dump(2) << '\n'; });
}

Json vector_json(const std::vector<double>& v) { return Json(v); }

}  // namespace

void validate(const RunConfig& cfg) {
  static const char* const kCommands[] = {"evolve", "transform", "distance", "bloch", "verify"};
  if (std::find(std::begin(kCommands), std::end(kCommands), cfg.command) == std::end(kCommands)) {
    throw Error(ErrorCode::InvalidArgument, "unknown command '" + cfg.command + "'");
  }
  if (cfg.command != "verify") {
    if (cfg.input_path.empty()) throw Error(ErrorCode::InvalidArgument, "--input is required");
    if (!std::filesystem::exists(cfg.input_path)) {
      throw Error(ErrorCode::InvalidArgument, "input file not found: " + cfg.input_path);
    }
  }
  require_positive(cfg.dt, "--dt");
  require_positive(cfg.t_final, "--t-final");
  require_positive(cfg.tolerance, "--tolerance");
  if (cfg.n < 2) throw Error(ErrorCode::InvalidArgument, "--n must be at least 2");
  if (cfg.method) parse_integrator(*cfg.method);
}

int cmd_evolve(const RunConfig& cfg, std::ostream& out) {
  io::EvolveProblem problem = io::evolve_problem_from_json(io::read_json_file(cfg.input_path));
  if (cfg.dt) problem.dt = *cfg.dt;
  if (cfg.t_final) problem.t_final = *cfg.t_final;
  if (cfg.method) problem.method = parse_integrator(*cfg.method);
  const Trajectory traj =
      evolve(problem.initial, problem.hamiltonian, problem.t_final, problem.dt, {.method = problem.method});
  emit(cfg, out, [&](std::ostream& s) { io::write_trajectory_csv(s, traj); });
  return kOk;
}

int cmd_transform(const RunConfig& cfg, std::ostream& out) {
  const Json in = io::read_json_file(cfg.input_path);
  if (!in.contains("state")) throw Error(ErrorCode::InvalidArgument, "missing 'state'");
  FrameChange f;
  if (in.contains("frame")) {
    f = io::frame_from_json(in.at("frame"));
  } else if (in.contains("unitary")) {
    f = frame_from_unitary(io::complex_matrix_from_json(in.at("unitary")));
  } else {
    throw Error(ErrorCode::InvalidArgument, "expected 'frame' or 'unitary'");
  }
  const Preparation s = io::preparation_from_json(in.at("state"));
  const Preparation image = apply_frame(f, s);
  const ProbabilitySplit split = probability_split(f, s);
  double interference_sum = 0.0;
  for (double v : split.interference) interference_sum += v;
  const FrameResidual residual = validate_frame(f);
  emit_json(cfg, out,
            {{"state", io::to_json(image)},
             {"classical", vector_json(split.classical)},
             {"interference", vector_json(split.interference)},
             {"interference_sum", interference_sum},
             {"frame_residual", residual.max()}});
  return kOk;
}

int cmd_distance(const RunConfig& cfg, std::ostream& out) {
  const Json in = io::read_json_file(cfg.input_path);
  if (!in.contains("a") || !in.contains("b")) throw Error(ErrorCode::InvalidArgument, "expected 'a' and 'b'");
  const Preparation a = io::preparation_from_json(in.at("a"));
  const Preparation b = io::preparation_from_json(in.at("b"));
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "'a' and 'b' differ in dimension");
  const double scale = in.contains("scale") ? number(in, "scale") : 1.0;
  if (!(std::isfinite(scale) && scale > 0.0)) throw Error(ErrorCode::InvalidArgument, "scale must be positive");

  const std::size_t n = a.dim();
  std::vector<double> mid_p(n), mid_phi(n);
  TangentDisplacement d{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const double dphi = wrap_phase(b.phi()[i] - a.phi()[i]);
    mid_p[i] = 0.5 * (a.p()[i] + b.p()[i]);
    mid_phi[i] = a.phi()[i] + 0.5 * dphi;
    d.dp[i] = (b.p()[i] - a.p()[i]) / scale;
    d.dphi[i] = dphi / scale;
  }
  const LineElementBreakdown ds2 = line_element2(Preparation(mid_p, mid_phi), d);
  emit_json(cfg, out,
            {{"classical_part", ds2.classical_part},
             {"variance_part", ds2.variance_part},
             {"total", ds2.total},
             {"scale", scale},
             {"distance_estimate", scale * std::sqrt(ds2.total)},
             {"fubini_study_angle", fubini_study_angle(a, b)}});
  return kOk;
}

int cmd_bloch(const RunConfig& cfg, std::ostream& out) {
  const Json in = io::read_json_file(cfg.input_path);
  if (!in.contains("initial")) throw Error(ErrorCode::InvalidArgument, "missing 'initial'");
  const bloch::SpherePoint pt0 = io::sphere_point_from_json(in.at("initial"));
  HermitianOperator h = HermitianOperator::zero(2);
  if (in.contains("hamiltonian")) {
    h = HermitianOperator(io::complex_matrix_from_json(in.at("hamiltonian")));
  } else if (in.contains("energies")) {
    const auto energies = in.at("energies").get<std::vector<double>>();
    if (energies.size() != 2) throw Error(ErrorCode::DimensionMismatch, "'energies' needs two values");
    h = HermitianOperator::diagonal(energies);
  } else {
    throw Error(ErrorCode::InvalidArgument, "expected 'energies' or 'hamiltonian'");
  }
  if (h.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "bloch requires a 2x2 hamiltonian");
  const double t_final = cfg.t_final ? *cfg.t_final : number(in, "t_final");
  const double dt = cfg.dt ? *cfg.dt : number(in, "dt");
  const Integrator method = cfg.method ? parse_integrator(*cfg.method)
                            : in.contains("method") ? parse_integrator(in.at("method").get<std::string>())
                                                    : Integrator::ImplicitMidpoint4;
  const Trajectory traj = evolve(bloch::from_sphere(pt0), h, t_final, dt, {.method = method});
  emit(cfg, out, [&](std::ostream& s) {
    s << "t,theta,phi\n";
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
      const bloch::SpherePoint pt = bloch::to_sphere(traj.states[k]);
      s << io::format_double(traj.times[k]) << ',' << io::format_double(pt.theta) << ','
        << io::format_double(pt.phi) << '\n';
    }
  });
  return kOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  VerifyOptions options;
  options.seed = cfg.seed;
  options.tolerance = cfg.tolerance;
  options.max_dim = cfg.n;
  const Json report = verification_report(run_verification(options));
  emit_json(cfg, out, report);
  return report.at("pass").get<bool>() ? kOk : kCheckFailed;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    validate(cfg);
    if (cfg.command == "evolve") return cmd_evolve(cfg, out);
    if (cfg.command == "transform") return cmd_transform(cfg, out);
    if (cfg.command == "distance") return cmd_distance(cfg, out);
    if (cfg.command == "bloch") return cmd_bloch(cfg, out);
    return cmd_verify(cfg, out);
  } catch (const std::exception& e) {
    err << "prepspace " << cfg.command << ": " << e.what() << '\n';
    return kUsageError;
  }
}

}  // namespace prepspace::cli
