#include "prepspace/io.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "prepspace/errors.hpp"

namespace prepspace::io {

namespace {

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::InvalidArgument, std::string("missing key '") + key + "'");
  }
  return j.at(key);
}

double number(const Json& j, const char* key) {
  const Json& v = member(j, key);
  if (!v.is_number()) throw Error(ErrorCode::InvalidArgument, std::string("'") + key + "' must be a number");
  return v.get<double>();
}

std::vector<double> number_array(const Json& j, const char* key) {
  const Json& v = member(j, key);
  if (!v.is_array()) throw Error(ErrorCode::InvalidArgument, std::string("'") + key + "' must be an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const Json& x : v) {
    if (!x.is_number()) throw Error(ErrorCode::InvalidArgument, std::string("'") + key + "' holds a non-number");
    out.push_back(x.get<double>());
  }
  return out;
}

RealMatrix real_matrix(const Json& j, const char* key) {
  const Json& rows = member(j, key);
  if (!rows.is_array() || rows.empty()) {
    throw Error(ErrorCode::InvalidArgument, std::string("'") + key + "' must be a non-empty array of rows");
  }
  const auto n_rows = static_cast<Eigen::Index>(rows.size());
  const auto n_cols = static_cast<Eigen::Index>(rows.front().size());
  RealMatrix m(n_rows, n_cols);
  for (Eigen::Index i = 0; i < n_rows; ++i) {
    const Json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n_cols) {
      throw Error(ErrorCode::InvalidArgument, std::string("'") + key + "' rows must have equal length");
    }
    for (Eigen::Index c = 0; c < n_cols; ++c) {
      const Json& x = row[static_cast<std::size_t>(c)];
      if (!x.is_number()) throw Error(ErrorCode::InvalidArgument, std::string("'") + key + "' holds a non-number");
      m(i, c) = x.get<double>();
    }
  }
  return m;
}

Json rows_of(const RealMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(i, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

Json to_json(const Preparation& s) { return Json{{"p", s.p()}, {"phi", s.phi()}}; }

Preparation preparation_from_json(const Json& j) {
  return Preparation(number_array(j, "p"), number_array(j, "phi"));
}

Json to_json(const FrameChange& f) { return Json{{"w", rows_of(f.w)}, {"beta", rows_of(f.beta)}}; }

FrameChange frame_from_json(const Json& j) { return FrameChange{real_matrix(j, "w"), real_matrix(j, "beta")}; }

Json complex_matrix_to_json(const ComplexMatrix& m) {
  return Json{{"re", rows_of(m.real())}, {"im", rows_of(m.imag())}};
}

ComplexMatrix complex_matrix_from_json(const Json& j) {
  const RealMatrix re = real_matrix(j, "re");
  const RealMatrix im = real_matrix(j, "im");
  if (re.rows() != im.rows() || re.cols() != im.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "'re' and 'im' differ in shape");
  }
  ComplexMatrix m(re.rows(), re.cols());
  m.real() = re;
  m.imag() = im;
  return m;
}

Json to_json(const bloch::SpherePoint& pt) { return Json{{"theta", pt.theta}, {"phi", pt.phi}}; }

bloch::SpherePoint sphere_point_from_json(const Json& j) { return {number(j, "theta"), number(j, "phi")}; }

EvolveProblem evolve_problem_from_json(const Json& j) {
  EvolveProblem problem{HermitianOperator(complex_matrix_from_json(member(j, "hamiltonian"))),
                        preparation_from_json(member(j, "initial")), number(j, "t_final"), number(j, "dt"),
                        Integrator::ImplicitMidpoint4};
  if (j.contains("method")) {
    const Json& m = j.at("method");
    if (!m.is_string()) throw Error(ErrorCode::InvalidArgument, "'method' must be a string");
    problem.method = parse_integrator(m.get<std::string>());
  }
  return problem;
}

Json to_json(const EvolveProblem& problem) {
  return Json{{"hamiltonian", complex_matrix_to_json(problem.hamiltonian.matrix())},
              {"initial", to_json(problem.initial)},
              {"t_final", problem.t_final},
              {"dt", problem.dt},
              {"method", std::string(to_string(problem.method))}};
}

std::string format_double(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  const std::size_t n = traj.states.empty() ? 0 : traj.states.front().dim();
  out << "t";
  for (std::size_t i = 1; i <= n; ++i) out << ",p_" << i;
  for (std::size_t i = 1; i <= n; ++i) out << ",phi_" << i;
  out << ",energy\n";
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    out << format_double(traj.times[k]);
    for (double v : traj.states[k].p()) out << ',' << format_double(v);
    for (double v : traj.states[k].phi()) out << ',' << format_double(v);
    out << ',' << format_double(traj.energy[k]) << '\n';
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::InvalidArgument, "'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace prepspace::io
