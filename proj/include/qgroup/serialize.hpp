#pragma once

// JSON forms of the library's values.
//
//   variable:        {"values": [ids...], "labels": [reals...]}
//   representation:  {"group": <spec or name>, "dim": n,
//                     "matrices": [ per element: [ row-major [re, im] pairs ] ]}
//   complex vector:  [[re, im], ...]

#include <string>
#include <vector>

#include <json.hpp>

#include "qgroup/algebra.hpp"
#include "qgroup/error.hpp"
#include "qgroup/reps_coherent.hpp"
#include "qgroup/variables.hpp"

namespace qgroup {

using ordered_json = nlohmann::ordered_json;

inline ordered_json to_json(const ConceptualVariable& v) {
  ordered_json j;
  j["values"] = v.values();
  j["labels"] = v.labels();
  if (!v.names().empty()) j["names"] = v.names();
  return j;
}

inline ConceptualVariable variable_from_json(const ordered_json& j) {
  try {
    if (!j.is_object() || !j.contains("values") || !j.contains("labels"))
      throw Error(Errc::ConfigParseError, "variable needs 'values' and 'labels'");
    auto names = j.contains("names") ? j.at("names").get<std::vector<std::string>>() : std::vector<std::string>{};
    return ConceptualVariable::make(j.at("values").get<std::vector<int>>(), j.at("labels").get<std::vector<double>>(),
                                    std::move(names));
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ConfigParseError, std::string("variable: ") + e.what());
  }
}

inline ordered_json complex_vector_json(const CVector& v) {
  ordered_json a = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back({v(i).real(), v(i).imag()});
  return a;
}

inline CVector complex_vector_from_json(const ordered_json& j) {
  if (!j.is_array() || j.empty()) throw Error(Errc::ConfigParseError, "complex vector must be a nonempty array");
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& z = j[i];
    if (z.is_number()) {
      v(static_cast<Eigen::Index>(i)) = z.get<double>();
    } else if (z.is_array() && z.size() == 2 && z[0].is_number() && z[1].is_number()) {
      v(static_cast<Eigen::Index>(i)) = cplx(z[0].get<double>(), z[1].get<double>());
    } else {
      throw Error(Errc::ConfigParseError, "complex entries are numbers or [re, im] pairs");
    }
  }
  return v;
}

inline ordered_json matrix_json(const CMatrix& m) {
  ordered_json a = ordered_json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) a.push_back({m(r, c).real(), m(r, c).imag()});
  return a;
}

inline ordered_json to_json(const UnitaryRep& rep) {
  ordered_json j;
  j["group"] = rep.group().name();
  j["dim"] = rep.dim();
  ordered_json mats = ordered_json::array();
  for (const CMatrix& m : rep.matrices()) mats.push_back(matrix_json(m));
  j["matrices"] = std::move(mats);
  return j;
}

/// Reads matrices for an already known group and validates the result.
inline UnitaryRep rep_from_json(const FiniteGroup& group, const ordered_json& j) {
  try {
    const int dim = j.at("dim").get<int>();
    const auto& mats = j.at("matrices");
    if (dim <= 0 || !mats.is_array()) throw Error(Errc::ConfigParseError, "bad representation header");
    std::vector<CMatrix> out;
    for (const auto& flat : mats) {
      if (!flat.is_array() || flat.size() != static_cast<std::size_t>(dim) * dim)
        throw Error(Errc::ConfigParseError, "matrix has wrong entry count");
      CMatrix m(dim, dim);
      for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) {
          const auto& z = flat[static_cast<std::size_t>(r) * dim + c];
          m(r, c) = cplx(z.at(0).get<double>(), z.at(1).get<double>());
        }
      out.push_back(std::move(m));
    }
    return UnitaryRep::make(group, std::move(out));
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ConfigParseError, std::string("representation: ") + e.what());
  }
}

}  // namespace qgroup
