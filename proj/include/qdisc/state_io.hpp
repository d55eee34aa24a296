#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "states.hpp"

namespace qdisc {

using json = nlohmann::json;

namespace detail {

inline RVector json_vector(const json& j, Eigen::Index n, const char* key) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != n)
    throw InvalidInput(std::string("state document: '") + key + "' must be an array of length " +
                       std::to_string(n));
  RVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!j[i].is_number()) throw InvalidInput(std::string("state document: '") + key + "' has a non-numeric entry");
    v(i) = j[i].get<double>();
  }
  return v;
}

inline RMatrix json_matrix(const json& j, Eigen::Index n, const char* key) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != n)
    throw InvalidInput(std::string("state document: '") + key + "' must have " + std::to_string(n) + " rows");
  RMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m.row(i) = json_vector(j[i], n, key).transpose();
  return m;
}

inline json vector_json(const RVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

inline json matrix_json(const RMatrix& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(vector_json(m.row(i).transpose()));
  return out;
}

}  // namespace detail

// Coherence form {"d","x","y","K"} or dense form {"d","rho_re","rho_im"}, never both.
inline TwoQuditState state_from_json(const json& doc) {
  if (!doc.is_object()) throw InvalidInput("state document: top level must be an object");
  if (!doc.contains("d") || !doc["d"].is_number_integer()) throw InvalidInput("state document: missing integer 'd'");
  const int d = doc["d"].get<int>();
  const GellMannBasis b(d);
  const bool coherence = doc.contains("x") || doc.contains("y") || doc.contains("K");
  const bool dense = doc.contains("rho_re") || doc.contains("rho_im");
  if (coherence && dense) throw InvalidInput("state document: both coherence and dense forms present");
  if (!coherence && !dense) throw InvalidInput("state document: neither coherence nor dense form present");
  const int n = b.size();
  if (coherence) {
    for (const char* k : {"x", "y", "K"})
      if (!doc.contains(k)) throw InvalidInput(std::string("state document: missing '") + k + "'");
    return assemble(b, detail::json_vector(doc["x"], n, "x"), detail::json_vector(doc["y"], n, "y"),
                    detail::json_matrix(doc["K"], n, "K"));
  }
  for (const char* k : {"rho_re", "rho_im"})
    if (!doc.contains(k)) throw InvalidInput(std::string("state document: missing '") + k + "'");
  const RMatrix re = detail::json_matrix(doc["rho_re"], d * d, "rho_re");
  const RMatrix im = detail::json_matrix(doc["rho_im"], d * d, "rho_im");
  CMatrix rho(d * d, d * d);
  rho.real() = re;
  rho.imag() = im;
  if (hermiticity_defect(rho) > 1e-9) throw UnphysicalState("state document: density matrix is not Hermitian");
  return from_density(b, rho);
}

inline json state_to_json(const TwoQuditState& s, bool dense = false) {
  json out;
  out["d"] = s.d();
  if (dense) {
    out["rho_re"] = detail::matrix_json(s.rho().real());
    out["rho_im"] = detail::matrix_json(s.rho().imag());
  } else {
    out["x"] = detail::vector_json(s.x());
    out["y"] = detail::vector_json(s.y());
    out["K"] = detail::matrix_json(s.K());
  }
  return out;
}

inline TwoQuditState load_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open state file '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw InvalidInput("state file '" + path + "' is not valid JSON: " + e.what());
  }
  return state_from_json(doc);
}

}  // namespace qdisc
