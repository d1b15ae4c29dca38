#pragma once

#include <json.hpp>
#include <string>

#include "qgd/cdeg.hpp"
#include "qgd/frac.hpp"
#include "qgd/loopmat.hpp"

namespace qgd {

using nlohmann::json;

/// Laurent polynomial as {"exponent": "coefficient", ...} with scalars in
/// their textual form ("p/q" exact, decimal numeric).
template <class S>
json laurent_to_json(const LaurentPoly<S>& p) {
  json j = json::object();
  for (auto& [m, c] : p.terms()) j[std::to_string(m)] = ScalarTraits<S>::str(c);
  return j;
}

template <class S>
LaurentPoly<S> laurent_from_json(const json& j) {
  LaurentPoly<S> p;
  for (auto it = j.begin(); it != j.end(); ++it)
    p.set(std::stoi(it.key()), ScalarTraits<S>::parse(it.value().get<std::string>()));
  return p;
}

/// Operator file format:
/// {"q":"1/2","hi":2,"floor":"complete","coeffs":{"2":{"0":"1"},"1":{"1":"1"}}}
template <class S>
json qop_to_json(const QOp<S>& a, const Context<S>& ctx) {
  json j;
  j["q"] = ScalarTraits<S>::str(ctx.q);
  j["hi"] = a.hi();
  if (a.complete())
    j["floor"] = "complete";
  else
    j["floor"] = a.floor();
  json coeffs = json::object();
  for (auto& [d, p] : a.coeffs()) coeffs[std::to_string(d)] = laurent_to_json(p);
  j["coeffs"] = coeffs;
  return j;
}

template <class S>
QOp<S> qop_from_json(const json& j) {
  QOp<S> a;
  const json& coeffs = j.at("coeffs");
  for (auto it = coeffs.begin(); it != coeffs.end(); ++it)
    a.set_coeff(std::stoi(it.key()), laurent_from_json<S>(it.value()));
  if (j.contains("floor") && j["floor"].is_number_integer())
    a = a.with_floor(j["floor"].get<int>());
  return a;
}

template <class S>
S q_from_json(const json& j) {
  if (!j.contains("q")) return S(1, 2);
  return ScalarTraits<S>::parse(j["q"].get<std::string>());
}

/// Loop matrices as nested arrays of Laurent-polynomial maps.
template <class S>
json loopmat_to_json(const LoopMat<S>& m) {
  json rows = json::array();
  for (int i = 0; i < m.n(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.n(); ++j) row.push_back(laurent_to_json(m.at(i, j)));
    rows.push_back(row);
  }
  return rows;
}

template <class S>
LoopMat<S> loopmat_from_json(const json& j) {
  int n = static_cast<int>(j.size());
  LoopMat<S> m(n);
  for (int i = 0; i < n; ++i)
    for (int jj = 0; jj < n; ++jj) m.at(i, jj) = laurent_from_json<S>(j.at(i).at(jj));
  return m;
}

/// CSymbol format: {"alpha":"0.7","coeffs":[{...u1...},{...u2...},...]}.
inline json csymbol_to_json(const CSymbol& L) {
  json j;
  j["alpha"] = L.alpha().str();
  json arr = json::array();
  for (int i = 1; i <= L.depth(); ++i) arr.push_back(laurent_to_json(L.u(i)));
  j["coeffs"] = arr;
  return j;
}

inline CSymbol csymbol_from_json(const json& j) {
  Complex alpha = Complex::from_string(j.at("alpha").get<std::string>());
  std::vector<LaurentPoly<Complex>> u;
  for (auto& cj : j.at("coeffs")) u.push_back(laurent_from_json<Complex>(cj));
  return CSymbol(alpha, std::move(u));
}

}  // namespace qgd
