#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "prepspace/bloch.hpp"
#include "prepspace/dynamics.hpp"
#include "prepspace/frame.hpp"
#include "prepspace/hermitian.hpp"
#include "prepspace/preparation.hpp"

namespace prepspace::io {

using Json = nlohmann::json;

// Malformed documents raise Error(InvalidArgument) naming the offending key.

Json to_json(const Preparation& s);                  // {"p": [...], "phi": [...]}
Preparation preparation_from_json(const Json& j);

Json to_json(const FrameChange& f);                  // {"w": [[...]], "beta": [[...]]}
FrameChange frame_from_json(const Json& j);

Json complex_matrix_to_json(const ComplexMatrix& m);  // {"re": [[...]], "im": [[...]]}
ComplexMatrix complex_matrix_from_json(const Json& j);

Json to_json(const bloch::SpherePoint& pt);          // {"theta": ..., "phi": ...}
bloch::SpherePoint sphere_point_from_json(const Json& j);

struct EvolveProblem {
  HermitianOperator hamiltonian;
  Preparation initial;
  double t_final = 0.0;
  double dt = 0.0;
  Integrator method = Integrator::ImplicitMidpoint4;
};

/// {"hamiltonian": {"re", "im"}, "initial": {"p", "phi"}, "t_final", "dt",
/// "method"}; "method" is optional.
EvolveProblem evolve_problem_from_json(const Json& j);
Json to_json(const EvolveProblem& problem);

/// 17 significant digits.
std::string format_double(double v);

/// Columns: t, p_1..p_n, phi_1..phi_n, energy.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

Json read_json_file(const std::string& path);

}  // namespace prepspace::io
