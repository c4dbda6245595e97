#include "ncball/io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ncball {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw std::invalid_argument("ncball: " + path + ": " + message);
}

const json& need_field(const json& j, const char* key,
                       const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, "missing field '" + std::string(key) + "'");
  return *it;
}

int need_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

double need_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

const json& need_array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

std::string item(const std::string& path, std::size_t index) {
  return path + "[" + std::to_string(index) + "]";
}

}  // namespace

json complex_to_json(cd value) {
  return json::array({value.real(), value.imag()});
}

cd complex_from_json(const json& j, const std::string& path) {
  need_array(j, path);
  if (j.size() != 2) fail(path, "complex entry must be a [re, im] pair");
  return cd(need_number(j[0], item(path, 0)), need_number(j[1], item(path, 1)));
}

json vector_to_json(const Eigen::VectorXcd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out.push_back(complex_to_json(v(i)));
  }
  return out;
}

Eigen::VectorXcd vector_from_json(const json& j, const std::string& path) {
  need_array(j, path);
  Eigen::VectorXcd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(i) = complex_from_json(j[i], item(path, i));
  }
  return v;
}

json matrix_to_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back(complex_to_json(m(r, c)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXcd matrix_from_json(const json& j, const std::string& path) {
  need_array(j, path);
  if (j.empty()) fail(path, "matrix needs at least one row");
  std::size_t cols = need_array(j[0], item(path, 0)).size();
  Eigen::MatrixXcd m(j.size(), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    const json& row = need_array(j[r], item(path, r));
    if (row.size() != cols) fail(item(path, r), "ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) {
      m(r, c) = complex_from_json(row[c], item(item(path, r), c));
    }
  }
  return m;
}

json tuple_to_json(const MatrixTuple& x) {
  json out = json::object();
  out["d"] = x.d;
  out["n"] = x.n;
  json matrices = json::array();
  for (const auto& m : x.matrices) matrices.push_back(matrix_to_json(m));
  out["matrices"] = std::move(matrices);
  return out;
}

MatrixTuple tuple_from_json(const json& j, const std::string& path) {
  int d = need_int(need_field(j, "d", path), path + ".d");
  int n = need_int(need_field(j, "n", path), path + ".n");
  const json& entries = need_array(need_field(j, "matrices", path),
                                   path + ".matrices");
  if (static_cast<int>(entries.size()) != d) {
    fail(path + ".matrices", "expected d = " + std::to_string(d) + " matrices");
  }
  std::vector<Eigen::MatrixXcd> parts;
  parts.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    std::string mpath = item(path + ".matrices", i);
    Eigen::MatrixXcd m = matrix_from_json(entries[i], mpath);
    if (m.rows() != n || m.cols() != n) {
      fail(mpath, "expected an n x n matrix with n = " + std::to_string(n));
    }
    parts.push_back(std::move(m));
  }
  try {
    return MatrixTuple(d, std::move(parts));
  } catch (const std::exception& e) {
    fail(path, e.what());
  }
}

json poly_to_json(const FreePoly& p) {
  json out = json::object();
  out["d"] = p.d();
  json terms = json::array();
  for (const auto& [w, c] : p.terms()) {
    json term = json::object();
    term["word"] = w.letters;
    term["re"] = c.real();
    term["im"] = c.imag();
    terms.push_back(std::move(term));
  }
  out["terms"] = std::move(terms);
  return out;
}

FreePoly poly_from_json(const json& j, const std::string& path) {
  int d = need_int(need_field(j, "d", path), path + ".d");
  FreePoly p = [&] {
    try {
      return FreePoly(d);
    } catch (const std::exception& e) {
      fail(path + ".d", e.what());
    }
  }();
  const json& terms = need_array(need_field(j, "terms", path),
                                 path + ".terms");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    std::string tpath = item(path + ".terms", i);
    const json& term = terms[i];
    const json& word = need_array(need_field(term, "word", tpath),
                                  tpath + ".word");
    std::vector<int> letters;
    letters.reserve(word.size());
    for (std::size_t k = 0; k < word.size(); ++k) {
      letters.push_back(need_int(word[k], item(tpath + ".word", k)));
    }
    double re = need_number(need_field(term, "re", tpath), tpath + ".re");
    double im = need_number(need_field(term, "im", tpath), tpath + ".im");
    try {
      p.add_term(Word(std::move(letters), d), cd(re, im));
    } catch (const std::exception& e) {
      fail(tpath + ".word", e.what());
    }
  }
  return p;
}

json ideal_to_json(const GradedIdeal& ideal) {
  json out = json::object();
  out["d"] = ideal.d();
  json generators = json::array();
  for (const auto& g : ideal.generators()) {
    generators.push_back(poly_to_json(g));
  }
  out["generators"] = std::move(generators);
  return out;
}

GradedIdeal ideal_from_json(const json& j, const std::string& path) {
  int d = need_int(need_field(j, "d", path), path + ".d");
  const json& generators = need_array(need_field(j, "generators", path),
                                      path + ".generators");
  std::vector<FreePoly> parsed;
  parsed.reserve(generators.size());
  for (std::size_t i = 0; i < generators.size(); ++i) {
    parsed.push_back(
        poly_from_json(generators[i], item(path + ".generators", i)));
  }
  try {
    return GradedIdeal(d, std::move(parsed));
  } catch (const std::exception& e) {
    fail(path, e.what());
  }
}

PickProblem pick_problem_from_json(const json& j, const std::string& path) {
  const json& nodes = need_array(need_field(j, "nodes", path),
                                 path + ".nodes");
  const json& targets = need_array(need_field(j, "targets", path),
                                   path + ".targets");
  int e = 1;
  if (j.is_object() && j.contains("e")) {
    e = need_int(j["e"], path + ".e");
  }
  std::vector<MatrixTuple> parsed_nodes;
  parsed_nodes.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    parsed_nodes.push_back(tuple_from_json(nodes[i], item(path + ".nodes", i)));
  }
  std::vector<Eigen::MatrixXcd> parsed_targets;
  parsed_targets.reserve(targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i) {
    parsed_targets.push_back(
        matrix_from_json(targets[i], item(path + ".targets", i)));
  }
  try {
    return PickProblem(std::move(parsed_nodes), std::move(parsed_targets), e);
  } catch (const std::exception& e2) {
    fail(path, e2.what());
  }
}

json automorphism_to_json(const BallAutomorphism& f) {
  json out = json::object();
  out["d"] = f.d();
  out["T"] = matrix_to_json(f.block());
  return out;
}

BallAutomorphism automorphism_from_json(const json& j,
                                        const std::string& path) {
  int d = need_int(need_field(j, "d", path), path + ".d");
  Eigen::MatrixXcd block = matrix_from_json(need_field(j, "T", path),
                                            path + ".T");
  try {
    return BallAutomorphism(d, std::move(block));
  } catch (const std::exception& e) {
    fail(path, e.what());
  }
}

namespace {

void render(const json& j, std::string& out) {
  switch (j.type()) {
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        first = false;
        out += json(key).dump();
        out += ':';
        render(value, out);
      }
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i > 0) out += ',';
        render(j[i], out);
      }
      out += ']';
      break;
    }
    case json::value_t::number_float: {
      double value = j.get<double>();
      if (!std::isfinite(value)) {
        throw std::invalid_argument(
            "ncball: refusing to serialize a non-finite number");
      }
      if (value == 0.0) value = 0.0;  // collapse negative zero
      char buffer[64];
      std::snprintf(buffer, sizeof(buffer), "%.17g", value);
      out += buffer;
      break;
    }
    default:
      out += j.dump();
      break;
  }
}

}  // namespace

std::string canonical_json(const json& j) {
  std::string out;
  render(j, out);
  return out;
}

void write_canonical_line(std::ostream& out, const json& j) {
  out << canonical_json(j) << '\n';
}

json load_json_file(const std::string& filename) {
  std::ifstream in(filename, std::ios::binary);
  if (!in) {
    throw std::invalid_argument("ncball: cannot open '" + filename + "'");
  }
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("ncball: " + filename + ": " + e.what());
  }
}

std::string file_digest(const std::string& filename) {
  std::ifstream in(filename, std::ios::binary);
  if (!in) {
    throw std::invalid_argument("ncball: cannot open '" + filename + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  std::string bytes = buffer.str();
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char byte : bytes) {
    hash ^= byte;
    hash *= 1099511628211ULL;
  }
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(hash));
  return std::string(hex);
}

}  // namespace ncball
