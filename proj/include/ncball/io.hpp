#pragma once

// JSON schemas for the domain types and a canonical serializer.  Output is
// produced with a fixed key order, numbers rendered at 17 significant
// digits, and a trailing newline, so identical inputs yield byte-identical
// documents.  Parse and validation failures throw std::invalid_argument
// with the offending field path in the message.

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "ncball/freealg.hpp"
#include "ncball/ideals.hpp"
#include "ncball/mobius.hpp"
#include "ncball/pick.hpp"

namespace ncball {

using json = nlohmann::ordered_json;

json complex_to_json(cd value);
cd complex_from_json(const json& j, const std::string& path);

json vector_to_json(const Eigen::VectorXcd& v);
Eigen::VectorXcd vector_from_json(const json& j, const std::string& path);

json matrix_to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd matrix_from_json(const json& j, const std::string& path);

json tuple_to_json(const MatrixTuple& x);
MatrixTuple tuple_from_json(const json& j, const std::string& path);

json poly_to_json(const FreePoly& p);
FreePoly poly_from_json(const json& j, const std::string& path);

json ideal_to_json(const GradedIdeal& ideal);
GradedIdeal ideal_from_json(const json& j, const std::string& path);

PickProblem pick_problem_from_json(const json& j, const std::string& path);

json automorphism_to_json(const BallAutomorphism& f);
BallAutomorphism automorphism_from_json(const json& j,
                                        const std::string& path);

// Compact rendering with deterministic number formatting; refuses
// non-finite values.
std::string canonical_json(const json& j);
void write_canonical_line(std::ostream& out, const json& j);

json load_json_file(const std::string& filename);

// FNV-1a hash of the raw file bytes, as a fixed-width hex string.
std::string file_digest(const std::string& filename);

}  // namespace ncball
