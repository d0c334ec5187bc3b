#pragma once

#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <variant>

#include "json.hpp"

#include "structlin/matpoly.hpp"
#include "structlin/poly.hpp"

namespace structlin {

using json = nlohmann::json;

// Canonical exchange format of the toolkit:
// {"field":"rational|gaussian|f64|c64","rows":R,"cols":C,"grade":G,
//  "coeffs":[G+1 dense RxC matrices]}
// Rational entries are canonical "p/q" strings (plain "p" for integers),
// gaussian and c64 entries are two-element arrays, f64 entries are numbers.

template <class T>
json entry_to_json(const T& v) {
  if constexpr (std::is_same_v<T, Rational>) {
    return v.get_str();
  } else if constexpr (std::is_same_v<T, GaussianRational>) {
    return json::array({v.re.get_str(), v.im.get_str()});
  } else if constexpr (std::is_same_v<T, double>) {
    return v;
  } else {
    return json::array({v.real(), v.imag()});
  }
}

template <class T>
T entry_from_json(const json& j) {
  if constexpr (std::is_same_v<T, Rational>) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    return rational_from_string(j.get<std::string>());
  } else if constexpr (std::is_same_v<T, GaussianRational>) {
    if (!j.is_array() || j.size() != 2)
      throw std::invalid_argument("gaussian entry must be a two-element array");
    auto part = [](const json& x) {
      return x.is_number_integer() ? Rational(x.get<long>()) : rational_from_string(x.get<std::string>());
    };
    return GaussianRational(part(j[0]), part(j[1]));
  } else if constexpr (std::is_same_v<T, double>) {
    return j.get<double>();
  } else {
    if (!j.is_array() || j.size() != 2)
      throw std::invalid_argument("c64 entry must be a two-element array");
    return Complex(j[0].get<double>(), j[1].get<double>());
  }
}

template <class T>
json matrix_to_json(const Matrix<T>& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(entry_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class T>
Matrix<T> matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw std::invalid_argument("matrix must be an array of rows");
  Matrix<T> m(static_cast<int>(j.size()), static_cast<int>(j[0].size()));
  for (int i = 0; i < m.rows(); ++i) {
    if (static_cast<int>(j[i].size()) != m.cols())
      throw std::invalid_argument("matrix rows have unequal length");
    for (int c = 0; c < m.cols(); ++c) m(i, c) = entry_from_json<T>(j[i][c]);
  }
  return m;
}

template <class T>
json matpoly_to_json(const MatPoly<T>& p, const json& meta = json()) {
  json out;
  out["field"] = scalar_traits<T>::field_name();
  out["rows"] = p.rows();
  out["cols"] = p.cols();
  out["grade"] = p.grade();
  json coeffs = json::array();
  for (int k = 0; k <= p.grade(); ++k) coeffs.push_back(matrix_to_json(p.coeff(k)));
  out["coeffs"] = std::move(coeffs);
  if (!meta.is_null()) out["meta"] = meta;
  return out;
}

template <class T>
MatPoly<T> matpoly_from_json(const json& j) {
  if (j.at("field").get<std::string>() != scalar_traits<T>::field_name())
    throw std::invalid_argument("matpoly field tag mismatch");
  int rows = j.at("rows").get<int>();
  int cols = j.at("cols").get<int>();
  int grade = j.at("grade").get<int>();
  const json& coeffs = j.at("coeffs");
  if (!coeffs.is_array() || static_cast<int>(coeffs.size()) != grade + 1)
    throw std::invalid_argument("coeffs must hold exactly grade+1 matrices");
  MatPoly<T> p(rows, cols, grade);
  for (int k = 0; k <= grade; ++k) {
    Matrix<T> m = matrix_from_json<T>(coeffs[k]);
    if (m.rows() != rows || m.cols() != cols)
      throw std::invalid_argument("coefficient shape differs from declared rows/cols");
    p.coeff_mut(k) = std::move(m);
  }
  return p;
}

template <class T>
json poly_to_json(const Poly<T>& p) {
  json out;
  out["field"] = scalar_traits<T>::field_name();
  json coeffs = json::array();
  for (int k = 0; k <= p.degree().value_or(-1); ++k) coeffs.push_back(entry_to_json(p.coeff(k)));
  out["coeffs"] = std::move(coeffs);
  return out;
}

using AnyMatPoly =
    std::variant<MatPoly<Rational>, MatPoly<GaussianRational>, MatPoly<double>, MatPoly<Complex>>;

inline AnyMatPoly any_matpoly_from_json(const json& j) {
  std::string field = j.at("field").get<std::string>();
  if (field == "rational") return matpoly_from_json<Rational>(j);
  if (field == "gaussian") return matpoly_from_json<GaussianRational>(j);
  if (field == "f64") return matpoly_from_json<double>(j);
  if (field == "c64") return matpoly_from_json<Complex>(j);
  throw std::invalid_argument("unknown field tag '" + field + "'");
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed JSON in '") + path + "': " + e.what());
  }
  return j;
}

inline void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

// Matrix Market array emission for one pencil coefficient. Deliberately
// lossy for exact kinds (fixed-precision decimal rendering); the JSON next
// to it stays the source of truth.
template <class T>
void write_matrix_market(std::ostream& os, const Matrix<T>& m, const std::string& comment = "") {
  constexpr bool cplx = scalar_traits<T>::complex_field;
  os << "%%MatrixMarket matrix array " << (cplx ? "complex" : "real") << " general\n";
  if (!comment.empty()) os << "% " << comment << "\n";
  os << m.rows() << " " << m.cols() << "\n";
  os << std::setprecision(17);
  for (int j = 0; j < m.cols(); ++j)
    for (int i = 0; i < m.rows(); ++i) {
      const T& v = m(i, j);
      if constexpr (std::is_same_v<T, Rational>) {
        os << v.get_d() << "\n";
      } else if constexpr (std::is_same_v<T, GaussianRational>) {
        os << v.re.get_d() << " " << v.im.get_d() << "\n";
      } else if constexpr (std::is_same_v<T, double>) {
        os << v << "\n";
      } else {
        os << v.real() << " " << v.imag() << "\n";
      }
    }
}

template <class T>
void write_matrix_market_file(const std::string& path, const Matrix<T>& m,
                              const std::string& comment = "") {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  write_matrix_market(out, m, comment);
}

}  // namespace structlin
