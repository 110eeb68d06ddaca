#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "prepspace/cli.hpp"
#include "prepspace/errors.hpp"
#include "prepspace/io.hpp"
#include "prepspace/verify.hpp"

using namespace prepspace;
using doctest::Approx;
using io::Json;

namespace {

constexpr double kPi = std::numbers::pi;

std::string write_temp(const std::string& name, const Json& j) {
  const auto path = std::filesystem::temp_directory_path() / ("prepspace_test_" + name + ".json");
  std::ofstream(path) << j.dump();
  return path.string();
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(cli::RunConfig cfg) {
  std::ostringstream out, err;
  const int code = cli::run(cfg, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("json round trips") {
  const Preparation s({0.25, 0.75}, {0.1, -2.0});
  const Preparation back = io::preparation_from_json(Json::parse(io::to_json(s).dump()));
  CHECK(back.p() == s.p());
  CHECK(back.phi() == s.phi());

  ComplexMatrix u(2, 2);
  u << std::complex<double>(0.6, 0.0), std::complex<double>(0.0, 0.8), std::complex<double>(0.0, 0.8),
      std::complex<double>(0.6, 0.0);
  CHECK(io::complex_matrix_from_json(io::complex_matrix_to_json(u)) == u);
  const FrameChange f = frame_from_unitary(u);
  const FrameChange f2 = io::frame_from_json(io::to_json(f));
  CHECK(f2.w == f.w);
  CHECK(f2.beta == f.beta);

  const bloch::SpherePoint pt = io::sphere_point_from_json(io::to_json(bloch::SpherePoint{1.0, -0.5}));
  CHECK(pt.theta == 1.0);
  CHECK(pt.phi == -0.5);

  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, kPi}) CHECK(std::stod(io::format_double(v)) == v);
}

TEST_CASE("evolve problem parsing") {
  Json j = {{"hamiltonian", {{"re", {{0, 1}, {1, 0}}}, {"im", {{0, 0}, {0, 0}}}}},
            {"initial", {{"p", {1, 0}}, {"phi", {0, 0}}}},
            {"t_final", 1.0},
            {"dt", 0.01}};
  io::EvolveProblem problem = io::evolve_problem_from_json(j);
  CHECK(problem.method == Integrator::ImplicitMidpoint4);
  CHECK(problem.dt == 0.01);
  j["method"] = "implicit-midpoint";
  CHECK(io::evolve_problem_from_json(j).method == Integrator::ImplicitMidpoint);
  CHECK(io::evolve_problem_from_json(io::to_json(problem)).t_final == 1.0);

  j.erase("dt");
  CHECK_THROWS_AS(io::evolve_problem_from_json(j), Error);
  CHECK_THROWS_AS(io::read_json_file("/nonexistent/problem.json"), Error);
}

TEST_CASE("evolve command") {
  const Json problem = {{"hamiltonian", {{"re", {{0, 1}, {1, 0}}}, {"im", {{0, 0}, {0, 0}}}}},
                        {"initial", {{"p", {0.5, 0.5}}, {"phi", {0, 0.3}}}},
                        {"t_final", 0.5},
                        {"dt", 0.1}};
  cli::RunConfig cfg{.command = "evolve", .input_path = write_temp("evolve", problem)};
  Run r = run(cfg);
  REQUIRE(r.code == 0);
  std::vector<std::string> rows = lines(r.out);
  CHECK(rows.front() == "t,p_1,p_2,phi_1,phi_2,energy");
  CHECK(rows.size() == 7);

  cfg.dt = 0.25;
  cfg.method = "rk4-renormalized";
  r = run(cfg);
  CHECK(lines(r.out).size() == 4);

  cfg.dt = -1.0;
  CHECK(run(cfg).code == cli::kUsageError);
  cfg.dt.reset();
  cfg.method = "leapfrog";
  CHECK(run(cfg).code == cli::kUsageError);
}

TEST_CASE("transform command") {
  const double r = 1.0 / std::sqrt(2.0);
  const Json input = {{"unitary", {{"re", {{r, r}, {r, -r}}}, {"im", {{0, 0}, {0, 0}}}}},
                      {"state", {{"p", {0.5, 0.5}}, {"phi", {0, 0}}}}};
  const Run run_result = run({.command = "transform", .input_path = write_temp("transform", input)});
  REQUIRE(run_result.code == 0);
  const Json out = Json::parse(run_result.out);
  CHECK(out["state"]["p"][0].get<double>() == Approx(1.0));
  CHECK(out["classical"][0].get<double>() == Approx(0.5));
  CHECK(out["interference"][0].get<double>() == Approx(0.5));
  CHECK(out["interference"][1].get<double>() == Approx(-0.5));
  CHECK(std::abs(out["interference_sum"].get<double>()) <= 1e-12);

  const Json frame_input = {{"frame", {{"w", {{0.5, 0.5}, {0.5, 0.5}}}, {"beta", {{0, 0}, {0, 0}}}}},
                            {"state", {{"p", {1, 0}}, {"phi", {0, 0}}}}};
  const Run bad = run({.command = "transform", .input_path = write_temp("bad_frame", frame_input)});
  CHECK(bad.code == cli::kUsageError);
  CHECK(bad.err.find("InvalidFrame") != std::string::npos);
}

TEST_CASE("distance command") {
  const Json input = {{"a", {{"p", {0.5, 0.5}}, {"phi", {0, 0}}}},
                      {"b", {{"p", {0.51, 0.49}}, {"phi", {0.02, 0}}}},
                      {"scale", 0.01}};
  const Run r = run({.command = "distance", .input_path = write_temp("distance", input)});
  REQUIRE(r.code == 0);
  const Json out = Json::parse(r.out);
  CHECK(out["classical_part"].get<double>() == Approx(1.0).epsilon(1e-3));
  CHECK(out["variance_part"].get<double>() == Approx(1.0).epsilon(1e-3));
  CHECK(out["distance_estimate"].get<double>() == Approx(out["fubini_study_angle"].get<double>()).epsilon(1e-3));
}

TEST_CASE("bloch command") {
  const Json input = {{"initial", {{"theta", kPi / 3}, {"phi", 0.0}}},
                      {"energies", {1.0, 0.5}},
                      {"t_final", 1.0},
                      {"dt", 0.25}};
  const Run r = run({.command = "bloch", .input_path = write_temp("bloch", input)});
  REQUIRE(r.code == 0);
  const std::vector<std::string> rows = lines(r.out);
  REQUIRE(rows.size() == 6);
  CHECK(rows.front() == "t,theta,phi");
  double t, theta, phi;
  char comma;
  std::istringstream(rows.back()) >> t >> comma >> theta >> comma >> phi;
  CHECK(t == 1.0);
  CHECK(theta == Approx(kPi / 3).epsilon(1e-12));
  CHECK(phi == Approx(-0.5).epsilon(1e-9));
}

TEST_CASE("usage errors") {
  CHECK(run({.command = "warp"}).code == cli::kUsageError);
  CHECK(run({.command = "evolve"}).code == cli::kUsageError);
  CHECK(run({.command = "evolve", .input_path = "/nonexistent.json"}).code == cli::kUsageError);
  CHECK(run({.command = "verify", .n = 1}).code == cli::kUsageError);
  CHECK(run({.command = "verify", .tolerance = 0.0}).code == cli::kUsageError);
}

}  // TEST_SUITE

TEST_SUITE("verify") {

TEST_CASE("report is deterministic and ordered") {
  VerifyOptions options;
  options.max_dim = 3;
  const std::string a = verification_report(run_verification(options)).dump();
  options.parallel = false;
  const std::string b = verification_report(run_verification(options)).dump();
  CHECK(a == b);

  const std::vector<CheckResult> results = run_verification(options);
  for (std::size_t i = 1; i < results.size(); ++i) {
    const bool ordered = results[i - 1].check < results[i].check ||
                         (results[i - 1].check == results[i].check && results[i - 1].n < results[i].n);
    CHECK(ordered);
  }
  const std::vector<std::string> names = verification_checks();
  for (const char* module : {"prep.", "frame.", "metric.", "dynamics.", "bloch.", "hilbert."}) {
    CHECK(std::any_of(names.begin(), names.end(), [&](const std::string& n) { return n.rfind(module, 0) == 0; }));
  }
}

TEST_CASE("default run passes, impossible tolerance fails") {
  const Json report = verification_report(run_verification({}));
  CHECK(report["pass"].get<bool>());
  for (const Json& c : report["checks"]) {
    INFO(c.dump());
    CHECK(c["pass"].get<bool>());
  }

  VerifyOptions strict;
  strict.tolerance = 1e-20;
  strict.max_dim = 2;
  const Json failed = verification_report(run_verification(strict));
  CHECK_FALSE(failed["pass"].get<bool>());

  std::ostringstream out, err;
  CHECK(cli::run({.command = "verify", .tolerance = 1e-20, .n = 2}, out, err) == cli::kCheckFailed);
}

}  // TEST_SUITE
