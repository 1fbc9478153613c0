#pragma once

// JSON encoding of states, measurement sets, bounds and reports.
//
//   density:     {"dim": d, "re": [[...], ...], "im": [[...], ...]}
//   measurement: {"bases": [{"label": "...", "re": [[...]], "im": [[...]]}, ...]}
//                (matrix columns are the basis vectors)

#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "entrosteer/bounds.hpp"
#include "entrosteer/core.hpp"
#include "entrosteer/criteria.hpp"
#include "entrosteer/measurements.hpp"

namespace entrosteer {

using Json = nlohmann::ordered_json;

//------------------------------------------------------------------------------
// Matrices
//------------------------------------------------------------------------------

inline Json matrix_to_json(const ComplexMatrix& m) {
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json rr = Json::array(), ri = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ri.push_back(m(r, c).imag());
    }
    re.push_back(rr);
    im.push_back(ri);
  }
  return Json{{"re", re}, {"im", im}};
}

inline ComplexMatrix matrix_from_json(const Json& j) {
  try {
    const auto& re = j.at("re");
    const Json im = j.contains("im") ? j.at("im") : Json();
    const auto rows = static_cast<Eigen::Index>(re.size());
    if (rows == 0) throw Error(ErrorCode::ParseError, "empty matrix");
    const auto cols = static_cast<Eigen::Index>(re.at(0).size());
    ComplexMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (static_cast<Eigen::Index>(re.at(r).size()) != cols) throw Error(ErrorCode::ParseError, "ragged matrix");
      for (Eigen::Index c = 0; c < cols; ++c) {
        const double x = re.at(r).at(c).get<double>();
        const double y = im.is_null() ? 0.0 : im.at(r).at(c).get<double>();
        m(r, c) = cplx{x, y};
      }
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

//------------------------------------------------------------------------------
// States and measurements
//------------------------------------------------------------------------------

inline Json density_to_json(const DensityMatrix& rho) {
  Json j{{"dim", rho.dim()}};
  const Json m = matrix_to_json(rho.matrix());
  j["re"] = m["re"];
  j["im"] = m["im"];
  return j;
}

inline DensityMatrix density_from_json(const Json& j) {
  const ComplexMatrix m = matrix_from_json(j);
  if (j.contains("dim") && j.at("dim").get<int>() != m.rows())
    throw Error(ErrorCode::ParseError, "declared dim does not match the matrix");
  return validate_density(m);
}

inline Json measurements_to_json(const MeasurementSet& set) {
  Json bases = Json::array();
  for (const auto& b : set) {
    Json e{{"label", b.label()}};
    const Json m = matrix_to_json(b.vectors());
    e["re"] = m["re"];
    e["im"] = m["im"];
    bases.push_back(e);
  }
  return Json{{"bases", bases}};
}

inline MeasurementSet measurements_from_json(const Json& j) {
  std::vector<MeasurementBasis> bases;
  try {
    for (const auto& b : j.at("bases"))
      bases.emplace_back(matrix_from_json(b), b.value("label", std::string("basis")));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (bases.empty()) throw Error(ErrorCode::ParseError, "measurement set has no bases");
  return MeasurementSet(std::move(bases));
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

//------------------------------------------------------------------------------
// Bounds and reports
//------------------------------------------------------------------------------

inline Json bound_to_json(const BoundValue& b) {
  Json j{{"value", b.value}, {"provenance", to_string(b.provenance)}, {"tag", b.tag}};
  if (!b.caveat.empty()) j["caveat"] = b.caveat;
  if (b.certificate) {
    const auto& c = *b.certificate;
    Json state = Json::array();
    for (Eigen::Index k = 0; k < c.state.size(); ++k) state.push_back({c.state(k).real(), c.state(k).imag()});
    j["certificate"] = Json{{"value", c.value},
                            {"restarts", c.restarts},
                            {"evaluations", c.evaluations},
                            {"converged", c.converged},
                            {"state", state}};
  }
  return j;
}

inline Json report_to_json(const CriterionReport& r) {
  return Json{{"criterion", r.criterion},
              {"lhs", r.lhs},
              {"bound", bound_to_json(r.bound)},
              {"violated", r.violated},
              {"margin", r.margin()},
              {"terms", r.terms},
              {"tolerance", r.tolerance},
              {"rests_on_conjecture", r.rests_on_conjecture()}};
}

}  // namespace entrosteer
