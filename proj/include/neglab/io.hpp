#pragma once

// JSON file formats.
//
//   mixed state:  {"dims": [dA, dB, ...], "re": [[...]], "im": [[...]]}      ("im" optional)
//   pure state:   {"dims": [...], "vec_re": [...], "vec_im": [...]}          ("vec_im" optional)
//   covariance:   {"nA": 1, "nB": 1, "ordering": "xpxp", "gamma": [[...]]}
//
// Unknown keys, non-numeric entries and non-finite values are rejected with ParseError.
// Well-formed input that is not a valid state raises InvariantError.

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "neglab/gaussian.hpp"
#include "neglab/states.hpp"

namespace neglab {

using Json = nlohmann::json;

namespace detail {

inline void require_keys(const Json& j, const std::set<std::string>& allowed, const char* what) {
  require<ParseError>(j.is_object(), std::string(what) + ": top level must be an object");
  for (const auto& [key, value] : j.items())
    require<ParseError>(allowed.count(key) == 1, std::string(what) + ": unknown key '" + key + "'");
}

inline double finite_number(const Json& v, const char* what) {
  require<ParseError>(v.is_number(), std::string(what) + ": expected a number");
  const double x = v.get<double>();
  require<ParseError>(std::isfinite(x), std::string(what) + ": non-finite number");
  return x;
}

inline std::vector<double> number_array(const Json& v, const char* what) {
  require<ParseError>(v.is_array(), std::string(what) + ": expected an array");
  std::vector<double> out;
  for (const auto& e : v) out.push_back(finite_number(e, what));
  return out;
}

inline RealMatrix number_matrix(const Json& v, const char* what) {
  require<ParseError>(v.is_array() && !v.empty(), std::string(what) + ": expected a nonempty array of rows");
  const auto rows = static_cast<Eigen::Index>(v.size());
  const auto first = number_array(v[0], what);
  RealMatrix m(rows, static_cast<Eigen::Index>(first.size()));
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto row = number_array(v[static_cast<std::size_t>(r)], what);
    require<ParseError>(row.size() == first.size(), std::string(what) + ": ragged matrix");
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = row[static_cast<std::size_t>(c)];
  }
  return m;
}

inline DimsProfile parse_dims(const Json& j) {
  require<ParseError>(j.contains("dims"), "state: missing 'dims'");
  const Json& d = j.at("dims");
  require<ParseError>(d.is_array() && !d.empty(), "state: 'dims' must be a nonempty array");
  std::vector<int> dims;
  for (const auto& e : d) {
    require<ParseError>(e.is_number_integer() && e.get<long long>() >= 1, "state: 'dims' entries must be positive integers");
    dims.push_back(e.get<int>());
  }
  return DimsProfile(dims);
}

}  // namespace detail

inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Accepts either the mixed-state or the pure-state layout.
inline DensityMatrix state_from_json(const Json& j) {
  detail::require_keys(j, {"dims", "re", "im", "vec_re", "vec_im"}, "state");
  const DimsProfile dims = detail::parse_dims(j);
  const bool mixed = j.contains("re");
  const bool pure = j.contains("vec_re");
  detail::require<ParseError>(mixed != pure, "state: exactly one of 're' or 'vec_re' is required");
  if (pure) {
    detail::require<ParseError>(!j.contains("im"), "state: 'im' is not allowed with 'vec_re'");
    const auto re = detail::number_array(j.at("vec_re"), "vec_re");
    std::vector<double> im(re.size(), 0.0);
    if (j.contains("vec_im")) im = detail::number_array(j.at("vec_im"), "vec_im");
    detail::require<ParseError>(im.size() == re.size(), "state: 'vec_re' and 'vec_im' lengths differ");
    ComplexVector v(static_cast<Eigen::Index>(re.size()));
    for (std::size_t k = 0; k < re.size(); ++k) v(static_cast<Eigen::Index>(k)) = Complex(re[k], im[k]);
    detail::require<ShapeError>(v.size() == dims.total(), "state: vector length does not match dims");
    return pure_state(v, dims);
  }
  detail::require<ParseError>(!j.contains("vec_im"), "state: 'vec_im' is not allowed with 're'");
  const RealMatrix re = detail::number_matrix(j.at("re"), "re");
  RealMatrix im = RealMatrix::Zero(re.rows(), re.cols());
  if (j.contains("im")) im = detail::number_matrix(j.at("im"), "im");
  detail::require<ParseError>(im.rows() == re.rows() && im.cols() == re.cols(), "state: 're' and 'im' shapes differ");
  ComplexMatrix m(re.rows(), re.cols());
  m.real() = re;
  m.imag() = im;
  return DensityMatrix(m, dims);
}

inline Json state_to_json(const DensityMatrix& rho) {
  Json re = Json::array(), im = Json::array();
  for (int r = 0; r < rho.dim(); ++r) {
    Json rr = Json::array(), ir = Json::array();
    for (int c = 0; c < rho.dim(); ++c) {
      rr.push_back(rho.matrix()(r, c).real());
      ir.push_back(rho.matrix()(r, c).imag());
    }
    re.push_back(rr);
    im.push_back(ir);
  }
  return Json{{"dims", rho.dims().values()}, {"re", re}, {"im", im}};
}

inline CovarianceMatrix covariance_from_json(const Json& j) {
  detail::require_keys(j, {"nA", "nB", "ordering", "gamma"}, "covariance");
  for (const char* key : {"nA", "nB", "ordering", "gamma"})
    detail::require<ParseError>(j.contains(key), std::string("covariance: missing '") + key + "'");
  detail::require<ParseError>(j.at("nA").is_number_integer() && j.at("nB").is_number_integer(),
                              "covariance: 'nA' and 'nB' must be integers");
  detail::require<ParseError>(j.at("ordering").is_string() && j.at("ordering").get<std::string>() == "xpxp",
                              "covariance: only ordering \"xpxp\" is supported");
  const RealMatrix g = detail::number_matrix(j.at("gamma"), "gamma");
  return CovarianceMatrix(g, j.at("nA").get<int>(), j.at("nB").get<int>());
}

inline Json covariance_to_json(const CovarianceMatrix& cov) {
  Json g = Json::array();
  for (Eigen::Index r = 0; r < cov.gamma().rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < cov.gamma().cols(); ++c) row.push_back(cov.gamma()(r, c));
    g.push_back(row);
  }
  return Json{{"nA", cov.n_a()}, {"nB", cov.n_b()}, {"ordering", "xpxp"}, {"gamma", g}};
}

inline DensityMatrix load_state(const std::string& path) { return state_from_json(parse_json_text(read_text_file(path))); }

inline CovarianceMatrix load_covariance(const std::string& path) {
  return covariance_from_json(parse_json_text(read_text_file(path)));
}

}  // namespace neglab
