#include "mdh/tau.hpp"

#include <numeric>

#include "mdh/brackets.hpp"
#include "mdh/errors.hpp"
#include "mdh/polynomial.hpp"

namespace mdh {

std::string to_string(Model m) {
  switch (m) {
    case Model::WK: return "WK";
    case Model::BGW: return "BGW";
    case Model::QWK: return "QWK";
  }
  return "?";
}

Model model_from_string(const std::string& s) {
  std::string up;
  for (char c : s) up += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (up == "WK") return Model::WK;
  if (up == "BGW") return Model::BGW;
  if (up == "QWK") return Model::QWK;
  throw std::invalid_argument("unknown model '" + s + "'");
}

void CorrelatorQuery::validate() const {
  if (d.empty()) throw DomainError("correlator needs at least one insertion");
  for (int x : d)
    if (x < 0) throw DomainError("correlator insertions must be nonnegative");
  if (g < 0) throw DomainError("negative genus");
  if (model == Model::QWK && (l < 0 || l > g)) throw DomainError("QWK needs 0 <= l <= g");
}

bool CorrelatorQuery::on_gate() const {
  const int n = static_cast<int>(d.size());
  return std::accumulate(d.begin(), d.end(), 0) == 4 * g - 2 + n - l;
}

TruncationSpec correlator_window(const CorrelatorQuery& q) {
  q.validate();
  const int n = static_cast<int>(q.d.size());
  TruncationSpec t;
  t.m_min = -(2L * q.g + 1);
  t.m_max = 2L * q.g + 1;
  t.n_max = 2 * q.g + n;
  if (q.model == Model::QWK) {
    t.eps_order = 2 * q.l;
    t.hbar_order = q.g - q.l + n - 1;
  } else {
    t.eps_order = 2 * q.g;
    t.hbar_order = 0;
  }
  t.validate();
  return t;
}

namespace {

DensitySpec md_h(const DensitySpec& base, int d) {
  DensitySpec s = base.with_d(d);
  s.kind = CycleKind::MD;
  s.family = Shape::H;
  return s;
}

UPolynomial classical_part(const UPolynomial& p) {
  return p.filter([](const UMonomial&, int, int h) { return h == 0; });
}

}  // namespace

UPolynomial iterated_bracket_u(const std::vector<int>& d, BracketMode mode, const DensitySpec& base) {
  if (d.empty()) throw DomainError("iterated bracket needs at least one index");
  // Omega_{0,d} = h_{d-1}: the constant is zero for the trivial theory.
  auto density = [&](int k) {
    UPolynomial p = density_u(md_h(base, k));
    return mode == BracketMode::classical ? classical_part(p) : p;
  };
  UPolynomial acc = density(d[0] - 1);
  for (std::size_t i = 1; i < d.size(); ++i) {
    UPolynomial h = density(d[i]);
    acc = mode == BracketMode::classical ? poisson_u(acc, h) : commutator_closed(acc, h, base.trunc.hbar_order);
  }
  return acc;
}

QElement iterated_bracket(const std::vector<int>& d, BracketMode mode, const DensitySpec& base) {
  return phi_to_q(iterated_bracket_u(d, mode, base), base.trunc);
}

namespace {

using XSeries = std::vector<CoeffSeries>;

XSeries x_mul(const XSeries& a, const XSeries& b, std::size_t len, SeriesBounds bounds) {
  XSeries out(len, CoeffSeries(bounds));
  for (std::size_t i = 0; i < a.size() && i < len; ++i)
    for (std::size_t j = 0; j < b.size() && i + j < len; ++j) out[i + j] += a[i] * b[j];
  return out;
}

// Taylor coefficients of u_k(x) about x = 0, up to x^{len-1}.
XSeries jet(Model m, int k, std::size_t len, SeriesBounds bounds) {
  XSeries s(len, CoeffSeries(bounds));
  if (m == Model::BGW) {
    // eps^2/8 (k+1)! (1-x)^{-(k+2)}
    const Rational lead = factorial(k + 1) / Rational(8);
    for (std::size_t t = 0; t < len; ++t) {
      Rational c = lead * falling_factorial(Rational(k + 1 + static_cast<long>(t)), static_cast<int>(t)) /
                   factorial(static_cast<int>(t));
      s[t] = CoeffSeries::term(GaussianRational(c), 2, 0, bounds);
    }
    return s;
  }
  if (k == 0 && len > 1) s[1] = CoeffSeries::constant(1, bounds);
  if (k == 1) s[0] = CoeffSeries::constant(1, bounds);
  return s;
}

Assignment model_assignment(Model m, const TruncationSpec& t) {
  Assignment a;
  const SeriesBounds b = t.bounds();
  if (m == Model::BGW) {
    for (long k = std::max(0L, t.m_min); k <= t.m_max; ++k)
      a[QVar{k, 1}] = CoeffSeries::term(GaussianRational::i_pow(3 * k) * GaussianRational(Rational(k + 1, 8)), 2, 0, b);
  } else if (t.m_min <= 1 && t.m_max >= 1) {
    a[QVar{1, 1}] = CoeffSeries::constant(-GaussianRational::i(), b);
  }
  return a;
}

Rational real_part(const GaussianRational& v, const std::string& what) {
  if (sgn(v.im()) != 0) throw ConsistencyError(what + " has nonzero imaginary part " + v.str());
  return v.re();
}

}  // namespace

CoeffSeries evaluate_jet_at_zero(const UPolynomial& p, Model m) {
  const SeriesBounds b = p.bounds();
  CoeffSeries out(b);
  for (const auto& [mon, c] : p.terms()) {
    const std::size_t len = static_cast<std::size_t>(mon.xneg) + 1;
    XSeries prod(len, CoeffSeries(b));
    prod[0] = CoeffSeries::constant(1, b);
    for (const UVar& v : mon.uvars) prod = x_mul(prod, jet(m, v.k, len, b), len, b);
    out += c * prod[len - 1];
  }
  return out;
}

CorrelatorResult correlator(const CorrelatorQuery& q, std::shared_ptr<const IntegralProvider> provider,
                            std::optional<TruncationSpec> window) {
  q.validate();
  if (!provider) throw std::invalid_argument("correlator needs a provider");
  CorrelatorResult r;
  r.window = window ? *window : correlator_window(q);
  r.window.validate();
  const int n = static_cast<int>(q.d.size());
  int e = 2 * q.g, h = 0;
  GaussianRational scale(1);
  if (q.model == Model::QWK) {
    e = 2 * q.l;
    h = q.g - q.l + n - 1;
    scale = GaussianRational::i_pow(q.g - q.l);
  }
  if (e > r.window.eps_order || h > r.window.hbar_order)
    throw WindowError("window too small for the extraction eps^" + std::to_string(e) + " hbar^" + std::to_string(h));

  DensitySpec base;
  base.kind = CycleKind::MD;
  base.family = Shape::H;
  base.trunc = r.window;
  base.provider = std::move(provider);
  base.gmax = q.g;
  const BracketMode mode = q.model == Model::QWK ? BracketMode::quantum : BracketMode::classical;
  UPolynomial bracket = iterated_bracket_u(q.d, mode, base);

  QElement bq = phi_to_q(bracket, r.window);
  r.drops = bq.drops();
  CoeffSeries qv = evaluate(bq, model_assignment(q.model, r.window), true).at_x_zero();
  CoeffSeries uv = evaluate_jet_at_zero(bracket, q.model);
  r.q_value = real_part(scale * qv.coeff(e, h), "q-side correlator");
  r.u_value = real_part(scale * uv.coeff(e, h), "u-side correlator");
  if (r.q_value != r.u_value)
    throw ConsistencyError("correlator routes disagree: q-side " + r.q_value.get_str() + ", u-side " +
                           r.u_value.get_str());
  r.value = r.u_value;
  return r;
}

Rational wk_correlator(const std::vector<int>& d, int g, std::shared_ptr<const IntegralProvider> provider) {
  return correlator({Model::WK, d, g, 0}, std::move(provider)).value;
}

Rational bgw_correlator(const std::vector<int>& d, int g, std::shared_ptr<const IntegralProvider> provider) {
  return correlator({Model::BGW, d, g, 0}, std::move(provider)).value;
}

Rational qwk_correlator(const std::vector<int>& d, int g, int l, std::shared_ptr<const IntegralProvider> provider) {
  return correlator({Model::QWK, d, g, l}, std::move(provider)).value;
}

Json correlator_batch(const Json& queries, std::shared_ptr<const IntegralProvider> provider) {
  if (!queries.is_array()) throw std::invalid_argument("correlator batch must be a JSON array");
  Json out = Json::array();
  for (const Json& item : queries) {
    CorrelatorQuery q;
    q.model = model_from_string(item.at("model").get<std::string>());
    q.d = item.at("d").get<std::vector<int>>();
    q.g = item.at("g").get<int>();
    q.l = item.value("l", 0);
    Json rec = item;
    rec["value"] = correlator(q, provider).value.get_str();
    out.push_back(rec);
  }
  return out;
}

}  // namespace mdh
