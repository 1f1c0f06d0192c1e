#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "solvgeo/lie_model.hpp"

namespace solvgeo {

using Json = nlohmann::json;

/// Matrices are written as nested row lists. Reading also accepts a flat
/// row-major list when the expected shape is known.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& node, std::size_t rows, std::size_t cols, const std::string& what);
Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& node, std::size_t size, const std::string& what);

/// Schema: {"m": int, "k": int, "J": [k matrices m x m], "gram_v"?: m x m,
/// "gram_z"?: k x k, "lattice"?: k x k}. Shape and type problems raise
/// ValidationError naming the field; the invariants are left to validate().
JMap jmap_from_json(const Json& node);
Json jmap_to_json(const JMap& j);

/// Reads a file, or a catalog entry when `source` starts with '@'.
JMap load_jmap(const std::string& source);
void save_jmap(const std::filesystem::path& path, const JMap& j);

}  // namespace solvgeo
