#include "solvgeo/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "solvgeo/catalog.hpp"

namespace solvgeo {

namespace {

double number(const Json& node, const std::string& what) {
  if (!node.is_number()) throw ValidationError(what + ": expected a number, got " + std::string(node.type_name()));
  return node.get<double>();
}

std::size_t dimension(const Json& node, const char* key) {
  if (!node.contains(key)) throw ValidationError(std::string("j-map JSON: missing field '") + key + "'");
  const Json& v = node.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw ValidationError(std::string("j-map JSON: '") + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

Matrix matrix_from_json(const Json& node, std::size_t rows, std::size_t cols, const std::string& what) {
  if (!node.is_array()) throw ValidationError(what + ": expected an array");
  Matrix out(rows, cols);
  if (!node.empty() && node.front().is_array()) {
    if (node.size() != rows) {
      std::ostringstream os;
      os << what << ": expected " << rows << " rows, got " << node.size();
      throw ValidationError(os.str());
    }
    for (std::size_t r = 0; r < rows; ++r) {
      const Json& row = node[r];
      if (!row.is_array() || row.size() != cols) {
        std::ostringstream os;
        os << what << ": row " << r << " must have " << cols << " entries";
        throw ValidationError(os.str());
      }
      for (std::size_t c = 0; c < cols; ++c) out(r, c) = number(row[c], what);
    }
    return out;
  }
  if (node.size() != rows * cols) {
    std::ostringstream os;
    os << what << ": expected " << rows << "x" << cols << " entries (nested or flat row-major), got " << node.size();
    throw ValidationError(os.str());
  }
  for (std::size_t i = 0; i < rows * cols; ++i) out.values()[i] = number(node[i], what);
  return out;
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (double x : v.values()) out.push_back(x);
  return out;
}

Vector vector_from_json(const Json& node, std::size_t size, const std::string& what) {
  if (!node.is_array() || node.size() != size) {
    std::ostringstream os;
    os << what << ": expected an array of " << size << " numbers";
    throw ValidationError(os.str());
  }
  Vector out(size);
  for (std::size_t i = 0; i < size; ++i) out[i] = number(node[i], what);
  return out;
}

JMap jmap_from_json(const Json& node) {
  if (!node.is_object()) throw ValidationError("j-map JSON: top level must be an object");
  const std::size_t m = dimension(node, "m"), k = dimension(node, "k");
  if (!node.contains("J") || !node.at("J").is_array()) throw ValidationError("j-map JSON: missing array 'J'");
  const Json& ops = node.at("J");
  if (ops.size() != k) {
    std::ostringstream os;
    os << "j-map JSON: 'J' has " << ops.size() << " matrices but k = " << k;
    throw ValidationError(os.str());
  }
  JMap j;
  j.m = m;
  j.k = k;
  for (std::size_t i = 0; i < k; ++i) j.J.push_back(matrix_from_json(ops[i], m, m, "J[" + std::to_string(i) + "]"));
  j.gram_v = node.contains("gram_v") ? matrix_from_json(node.at("gram_v"), m, m, "gram_v") : Matrix::identity(m);
  j.gram_z = node.contains("gram_z") ? matrix_from_json(node.at("gram_z"), k, k, "gram_z") : Matrix::identity(k);
  if (node.contains("lattice")) j.lattice = matrix_from_json(node.at("lattice"), k, k, "lattice");
  return j;
}

Json jmap_to_json(const JMap& j) {
  Json out;
  out["m"] = j.m;
  out["k"] = j.k;
  Json ops = Json::array();
  for (const Matrix& op : j.J) ops.push_back(matrix_to_json(op));
  out["J"] = std::move(ops);
  out["gram_v"] = matrix_to_json(j.gram_v);
  out["gram_z"] = matrix_to_json(j.gram_z);
  if (j.lattice) out["lattice"] = matrix_to_json(*j.lattice);
  return out;
}

JMap load_jmap(const std::string& source) {
  if (!source.empty() && source.front() == '@') return catalog_lookup(source).jmap;
  std::ifstream in(source);
  if (!in) throw ValidationError("cannot open '" + source + "'");
  Json node;
  try {
    node = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError("'" + source + "' is not valid JSON: " + e.what());
  }
  return jmap_from_json(node);
}

void save_jmap(const std::filesystem::path& path, const JMap& j) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write '" + path.string() + "'");
  out << jmap_to_json(j).dump(2) << '\n';
}

}  // namespace solvgeo
