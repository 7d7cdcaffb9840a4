#include "mdh/json_io.hpp"

namespace mdh {

Json to_json(const Rational& r) { return r.get_str(); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  return parse_rational(j.get<std::string>());
}

Json to_json(const GaussianRational& a) { return Json{{"re", to_json(a.re())}, {"im", to_json(a.im())}}; }

GaussianRational gaussian_from_json(const Json& j) {
  if (j.is_string() || j.is_number()) return GaussianRational(rational_from_json(j));
  return {rational_from_json(j.at("re")), rational_from_json(j.at("im"))};
}

Json to_json(const CoeffSeries& s) {
  Json terms = Json::array();
  for (const auto& [idx, c] : s.terms()) terms.push_back(Json{{"eps", idx.eps}, {"hbar", idx.hbar}, {"c", to_json(c)}});
  return Json{{"eps_order", s.bounds().eps_order}, {"hbar_order", s.bounds().hbar_order}, {"terms", terms}};
}

CoeffSeries series_from_json(const Json& j) {
  CoeffSeries s(SeriesBounds{j.at("eps_order").get<int>(), j.at("hbar_order").get<int>()});
  for (const auto& t : j.at("terms")) s.add_term(t.at("eps").get<int>(), t.at("hbar").get<int>(), gaussian_from_json(t.at("c")));
  return s;
}

Json to_json(const Polynomial& p) {
  Json coeffs = Json::array();
  for (const auto& [s, c] : p.coeffs()) coeffs.push_back(Json{{"s", s}, {"c", to_json(c)}});
  return Json{{"nvars", p.nvars()}, {"basis", p.basis() == Basis::falling ? "falling" : "monomial"}, {"coeffs", coeffs}};
}

Polynomial polynomial_from_json(const Json& j) {
  std::string basis = j.value("basis", "falling");
  if (basis != "falling" && basis != "monomial") throw std::invalid_argument("unknown polynomial basis: " + basis);
  Polynomial p(j.at("nvars").get<int>(), basis == "falling" ? Basis::falling : Basis::monomial);
  for (const auto& t : j.at("coeffs")) p.add_term(t.at("s").get<std::vector<int>>(), rational_from_json(t.at("c")));
  return p;
}

Json to_json(const PhaseFrame& f) {
  Json eta = Json::array();
  for (const auto& row : f.eta) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(to_json(v));
    eta.push_back(r);
  }
  Json unit = Json::array();
  for (const auto& v : f.unit) unit.push_back(to_json(v));
  return Json{{"dim", f.dim}, {"eta", eta}, {"unit", unit}};
}

Json to_json(const TruncationSpec& t) {
  return Json{{"m_min", t.m_min},       {"m_max", t.m_max},         {"n_max", t.n_max},
              {"xpow_min", t.xpow_min}, {"xpow_max", t.xpow_max},   {"eps_order", t.eps_order},
              {"hbar_order", t.hbar_order}};
}

TruncationSpec trunc_from_json(const Json& j) {
  TruncationSpec t;
  t.m_min = j.value("m_min", t.m_min);
  t.m_max = j.value("m_max", t.m_max);
  t.n_max = j.value("n_max", t.n_max);
  t.xpow_min = j.value("xpow_min", t.xpow_min);
  t.xpow_max = j.value("xpow_max", t.xpow_max);
  t.eps_order = j.value("eps_order", t.eps_order);
  t.hbar_order = j.value("hbar_order", t.hbar_order);
  t.validate();
  return t;
}

Json to_json(const QElement& f) {
  Json terms = Json::array();
  for (const auto& [mon, c] : f.terms()) {
    Json q = Json::array();
    for (const auto& v : mon.qvars) q.push_back(Json::array({v.m, v.alpha}));
    terms.push_back(Json{{"q", q}, {"xpow", mon.xpow}, {"coeff", to_json(c)}});
  }
  return Json{{"frame", to_json(f.frame())},
              {"trunc", to_json(f.trunc())},
              {"integrated", f.integrated()},
              {"drops", f.drops()},
              {"terms", terms}};
}

Json to_json(const UPolynomial& p) {
  Json terms = Json::array();
  for (const auto& [mon, c] : p.terms()) {
    Json u = Json::array();
    for (const auto& v : mon.uvars) u.push_back(Json::array({v.k, v.alpha}));
    terms.push_back(Json{{"u", u}, {"xneg", mon.xneg}, {"coeff", to_json(c)}});
  }
  return Json{{"bounds", {{"eps_order", p.bounds().eps_order}, {"hbar_order", p.bounds().hbar_order}}},
              {"terms", terms},
              {"text", p.str()}};
}

}  // namespace mdh
