// Command line front end.  Every subcommand reads JSON inputs, writes one
// canonical JSON document to stdout, and exits with 0 for an affirmative
// answer, 1 for a negative one, and 2 for usage or data errors.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ncball/fock.hpp"
#include "ncball/freealg.hpp"
#include "ncball/ideals.hpp"
#include "ncball/io.hpp"
#include "ncball/mobius.hpp"
#include "ncball/pick.hpp"

namespace {

using ncball::json;

struct Options {
  int degree = 10;
  double t = 0.5;
  double tol = 1e-9;
  int samples = 100;
  unsigned long long seed = 0;
  std::string log_path;

  std::string poly_path;
  std::string tuple_path;
  std::vector<std::string> tuple_paths;
  std::string ideal_path;
  std::string second_ideal_path;
  std::string point_path;
  std::string v_path;
  std::string y_path;
  std::string problem_path;
  std::string map_path;
  std::string base_point_path;
  std::string unitary_path;
  int span_d = 0;
  bool run_cartan = false;
};

json params_record(const Options& opt) {
  json params = json::object();
  params["degree"] = opt.degree;
  params["t"] = opt.t;
  params["tol"] = opt.tol;
  params["samples"] = opt.samples;
  params["seed"] = static_cast<long long>(opt.seed);
  return params;
}

int run_eval(const Options& opt, json& out) {
  ncball::FreePoly p =
      ncball::poly_from_json(ncball::load_json_file(opt.poly_path), "poly");
  ncball::MatrixTuple x =
      ncball::tuple_from_json(ncball::load_json_file(opt.tuple_path), "tuple");
  out["value"] = ncball::matrix_to_json(ncball::eval_poly(p, x));
  return 0;
}

int run_norm(const Options& opt, json& out) {
  ncball::MatrixTuple x =
      ncball::tuple_from_json(ncball::load_json_file(opt.tuple_path), "tuple");
  out["row_norm"] = ncball::row_norm(x);
  return 0;
}

int run_kernel(const Options& opt, json& out) {
  ncball::MatrixTuple w =
      ncball::tuple_from_json(ncball::load_json_file(opt.point_path), "point");
  Eigen::VectorXcd v =
      ncball::vector_from_json(ncball::load_json_file(opt.v_path), "v");
  Eigen::VectorXcd y =
      ncball::vector_from_json(ncball::load_json_file(opt.y_path), "y");
  out["degree"] = opt.degree;
  out["poly"] =
      ncball::poly_to_json(ncball::kernel_coefficients(w, v, y, opt.degree));
  return 0;
}

int run_ideal_basis(const Options& opt, json& out) {
  ncball::GradedIdeal ideal =
      ncball::ideal_from_json(ncball::load_json_file(opt.ideal_path), "ideal");
  Eigen::MatrixXcd basis = ideal.graded_basis(opt.degree);
  out["degree"] = opt.degree;
  out["dim"] = static_cast<long long>(basis.cols());
  out["basis"] = ncball::matrix_to_json(basis);
  return 0;
}

int run_ideal_member(const Options& opt, json& out) {
  ncball::GradedIdeal ideal =
      ncball::ideal_from_json(ncball::load_json_file(opt.ideal_path), "ideal");
  ncball::FreePoly p =
      ncball::poly_from_json(ncball::load_json_file(opt.poly_path), "poly");
  double residual = ncball::membership_residual(ideal, p);
  bool member = residual <= 1e-10;
  out["member"] = member;
  out["residual"] = residual;
  double quotient_norm =
      p.degree() ? ncball::quotient_norm_estimate(ideal, p, *p.degree()) : 0.0;
  out["quotient_norm"] = quotient_norm;
  return member ? 0 : 1;
}

int run_witness(const Options& opt, json& out) {
  ncball::GradedIdeal ideal =
      ncball::ideal_from_json(ncball::load_json_file(opt.ideal_path), "ideal");
  ncball::FreePoly p =
      ncball::poly_from_json(ncball::load_json_file(opt.poly_path), "poly");
  ncball::NullstellensatzWitness witness =
      ncball::nullstellensatz_witness(ideal, p, opt.t);
  out["member"] = witness.member;
  out["residual"] = witness.residual;
  if (witness.member) {
    out["certificate"] = ncball::vector_to_json(witness.certificate);
    return 1;
  }
  out["witness"] = ncball::tuple_to_json(witness.point);
  out["row_norm"] = witness.point_row_norm;
  json residuals = json::array();
  for (double r : witness.generator_residuals) residuals.push_back(r);
  out["generator_residuals"] = std::move(residuals);
  out["value_norm"] = witness.value_norm;
  out["value_lower_bound"] = witness.value_lower_bound;
  return 0;
}

int run_pick_check(const Options& opt, json& out) {
  ncball::PickProblem problem = ncball::pick_problem_from_json(
      ncball::load_json_file(opt.problem_path), "problem");
  ncball::FeasibilityResult result = ncball::pick_feasible(problem, opt.tol);
  out["feasible"] = result.feasible;
  out["margin"] = result.margin;
  out["choi_dim"] = result.choi_dim;
  return result.feasible ? 0 : 1;
}

int run_mobius(const Options& opt, json& out) {
  if (opt.map_path.empty() == opt.base_point_path.empty()) {
    throw std::invalid_argument(
        "ncball: mobius needs exactly one of --map and --point");
  }
  ncball::BallAutomorphism map =
      opt.map_path.empty()
          ? ncball::BallAutomorphism::from_point(ncball::vector_from_json(
                ncball::load_json_file(opt.base_point_path), "point"))
          : ncball::automorphism_from_json(
                ncball::load_json_file(opt.map_path), "map");
  out["automorphism"] = ncball::automorphism_to_json(map);
  if (!opt.tuple_path.empty()) {
    ncball::MatrixTuple z = ncball::tuple_from_json(
        ncball::load_json_file(opt.tuple_path), "tuple");
    out["image"] = ncball::tuple_to_json(map.apply(z));
  }
  if (opt.run_cartan) {
    bool fixes = ncball::cartan_check(map, 2, opt.samples,
                                      static_cast<unsigned>(opt.seed));
    out["cartan"] = fixes;
    return fixes ? 0 : 1;
  }
  return 0;
}

int run_span(const Options& opt, json& out) {
  std::vector<ncball::MatrixTuple> points;
  points.reserve(opt.tuple_paths.size());
  for (std::size_t i = 0; i < opt.tuple_paths.size(); ++i) {
    points.push_back(ncball::tuple_from_json(
        ncball::load_json_file(opt.tuple_paths[i]),
        "tuple[" + std::to_string(i) + "]"));
  }
  int d = opt.span_d;
  if (d == 0) {
    if (points.empty()) {
      throw std::invalid_argument(
          "ncball: span needs --d when no tuples are given");
    }
    d = points.front().d;
  }
  Eigen::MatrixXcd basis = ncball::matrix_span_subspace(d, points);
  out["d"] = d;
  out["dim"] = static_cast<long long>(basis.cols());
  out["basis"] = ncball::matrix_to_json(basis);
  return 0;
}

int run_equiv(const Options& opt, json& out) {
  Eigen::MatrixXcd u = ncball::matrix_from_json(
      ncball::load_json_file(opt.unitary_path), "unitary");
  ncball::GradedIdeal first =
      ncball::ideal_from_json(ncball::load_json_file(opt.ideal_path), "ideal");
  ncball::GradedIdeal second = ncball::ideal_from_json(
      ncball::load_json_file(opt.second_ideal_path), "ideal2");
  ncball::EquivalenceReport report =
      ncball::verify_unitary_equivalence(u, first, second, opt.degree);
  out["equivalent"] = report.equivalent;
  out["checked_degree"] = report.checked_degree;
  out["worst_angle"] = report.worst_angle;
  out["first_mismatch_degree"] = report.first_mismatch_degree;
  return report.equivalent ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"Noncommutative function theory on the matrix ball"};
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--degree,-N", opt.degree, "Truncation or bound degree");
  app.add_option("--t", opt.t, "Witness scale inside (0, 1)");
  app.add_option("--tol", opt.tol, "Feasibility tolerance");
  app.add_option("--samples", opt.samples, "Number of random samples");
  app.add_option("--seed", opt.seed, "Random seed");
  app.add_option("--log", opt.log_path, "Append one run record per line");

  std::map<std::string, std::function<int(json&)>> handlers;
  std::map<std::string, std::vector<std::pair<std::string, std::string*>>>
      file_inputs;

  CLI::App* eval = app.add_subcommand("eval", "Evaluate a polynomial at a tuple");
  eval->add_option("--poly", opt.poly_path, "Polynomial JSON")->required();
  eval->add_option("--tuple", opt.tuple_path, "Tuple JSON")->required();
  handlers["eval"] = [&](json& out) { return run_eval(opt, out); };
  file_inputs["eval"] = {{"poly", &opt.poly_path}, {"tuple", &opt.tuple_path}};

  CLI::App* norm = app.add_subcommand("norm", "Row norm of a tuple");
  norm->add_option("--tuple", opt.tuple_path, "Tuple JSON")->required();
  handlers["norm"] = [&](json& out) { return run_norm(opt, out); };
  file_inputs["norm"] = {{"tuple", &opt.tuple_path}};

  CLI::App* kernel = app.add_subcommand(
      "kernel", "Kernel function coefficients of a point through --degree");
  kernel->add_option("--point", opt.point_path, "Tuple JSON")->required();
  kernel->add_option("--v", opt.v_path, "Direction vector JSON")->required();
  kernel->add_option("--y", opt.y_path, "Direction vector JSON")->required();
  handlers["kernel"] = [&](json& out) { return run_kernel(opt, out); };
  file_inputs["kernel"] = {
      {"point", &opt.point_path}, {"v", &opt.v_path}, {"y", &opt.y_path}};

  CLI::App* basis = app.add_subcommand(
      "ideal-basis", "Orthonormal basis of a graded component");
  basis->add_option("--ideal", opt.ideal_path, "Ideal JSON")->required();
  handlers["ideal-basis"] = [&](json& out) { return run_ideal_basis(opt, out); };
  file_inputs["ideal-basis"] = {{"ideal", &opt.ideal_path}};

  CLI::App* member = app.add_subcommand(
      "ideal-member", "Membership of a homogeneous polynomial");
  member->add_option("--ideal", opt.ideal_path, "Ideal JSON")->required();
  member->add_option("--poly", opt.poly_path, "Polynomial JSON")->required();
  handlers["ideal-member"] = [&](json& out) { return run_ideal_member(opt, out); };
  file_inputs["ideal-member"] = {{"ideal", &opt.ideal_path},
                                 {"poly", &opt.poly_path}};

  CLI::App* witness = app.add_subcommand(
      "witness", "Membership certificate or separating point");
  witness->add_option("--ideal", opt.ideal_path, "Ideal JSON")->required();
  witness->add_option("--poly", opt.poly_path, "Polynomial JSON")->required();
  handlers["witness"] = [&](json& out) { return run_witness(opt, out); };
  file_inputs["witness"] = {{"ideal", &opt.ideal_path},
                            {"poly", &opt.poly_path}};

  CLI::App* pick = app.add_subcommand(
      "pick-check", "Interpolation feasibility via the Choi matrix");
  pick->add_option("--problem", opt.problem_path, "Problem JSON")->required();
  handlers["pick-check"] = [&](json& out) { return run_pick_check(opt, out); };
  file_inputs["pick-check"] = {{"problem", &opt.problem_path}};

  CLI::App* mobius = app.add_subcommand(
      "mobius", "Construct or apply a ball automorphism");
  mobius->add_option("--map", opt.map_path, "Automorphism JSON");
  mobius->add_option("--point", opt.base_point_path,
                     "Base point vector JSON for the involution");
  mobius->add_option("--tuple", opt.tuple_path, "Tuple JSON to map");
  mobius->add_flag("--cartan", opt.run_cartan,
                   "Also test whether the map is the identity");
  handlers["mobius"] = [&](json& out) { return run_mobius(opt, out); };
  file_inputs["mobius"] = {{"map", &opt.map_path},
                           {"point", &opt.base_point_path},
                           {"tuple", &opt.tuple_path}};

  CLI::App* span = app.add_subcommand(
      "span", "Coordinate subspace spanned by a list of tuples");
  span->add_option("--tuple", opt.tuple_paths, "Tuple JSON (repeatable)");
  span->add_option("--d", opt.span_d, "Variable count when no tuples given");
  handlers["span"] = [&](json& out) { return run_span(opt, out); };
  file_inputs["span"] = {};

  CLI::App* equiv = app.add_subcommand(
      "equiv", "Unitary equivalence of two ideals through --degree");
  equiv->add_option("--unitary", opt.unitary_path, "Matrix JSON")->required();
  equiv->add_option("--ideal", opt.ideal_path, "Ideal JSON")->required();
  equiv->add_option("--ideal2", opt.second_ideal_path, "Ideal JSON")->required();
  handlers["equiv"] = [&](json& out) { return run_equiv(opt, out); };
  file_inputs["equiv"] = {{"unitary", &opt.unitary_path},
                          {"ideal", &opt.ideal_path},
                          {"ideal2", &opt.second_ideal_path}};

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::string name;
  for (const auto& [key, handler] : handlers) {
    if (app.get_subcommand(key)->parsed()) name = key;
  }

  auto start = std::chrono::steady_clock::now();
  json out = json::object();
  int code = 0;
  try {
    code = handlers[name](out);
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }
  ncball::write_canonical_line(std::cout, out);

  if (!opt.log_path.empty()) {
    double wall_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    json record = json::object();
    record["command"] = name;
    json inputs = json::object();
    for (const auto& [flag, path] : file_inputs[name]) {
      if (!path->empty()) inputs[flag] = ncball::file_digest(*path);
    }
    for (std::size_t i = 0; i < opt.tuple_paths.size(); ++i) {
      inputs["tuple[" + std::to_string(i) + "]"] =
          ncball::file_digest(opt.tuple_paths[i]);
    }
    record["inputs"] = std::move(inputs);
    record["params"] = params_record(opt);
    record["outputs"] = out;
    record["exit_code"] = code;
    record["wall_ms"] = wall_ms;
    std::ofstream log(opt.log_path, std::ios::app);
    if (!log) {
      std::cerr << "ncball: cannot open log file '" << opt.log_path << "'\n";
      return 2;
    }
    ncball::write_canonical_line(log, record);
  }
  return code;
}
