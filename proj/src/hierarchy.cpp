#include "mdh/hierarchy.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "mdh/brackets.hpp"
#include "mdh/calculus.hpp"
#include "mdh/errors.hpp"
#include "mdh/routes.hpp"

namespace mdh {

int DensitySpec::genus_max() const { return gmax >= 0 ? gmax : trunc.hbar_order + trunc.eps_order / 2; }

void DensitySpec::validate() const {
  trunc.validate();
  if (!provider) throw std::invalid_argument("density spec without a provider");
  if (family == Shape::H && d < -1) throw std::invalid_argument("family H needs d >= -1");
  if (family == Shape::G && d < 0) throw std::invalid_argument("family G needs d >= 0");
}

DensitySpec DensitySpec::with_d(int d2) const {
  DensitySpec s = *this;
  s.d = d2;
  return s;
}

DensitySpec DensitySpec::with_kind(CycleKind k) const {
  DensitySpec s = *this;
  s.kind = k;
  return s;
}

DensitySpec DensitySpec::with_family(Shape f) const {
  DensitySpec s = *this;
  s.family = f;
  return s;
}

TruncationSpec genus_window(int gmax, long m_lo, long m_hi, int n_max) {
  TruncationSpec t;
  t.m_min = m_lo;
  t.m_max = m_hi;
  t.n_max = n_max;
  t.eps_order = 2 * gmax;
  t.hbar_order = gmax + 1;
  t.validate();
  return t;
}

UPolynomial density_u(const DensitySpec& spec, std::vector<std::string>* flags) {
  spec.validate();
  const SeriesBounds bounds = spec.trunc.bounds();
  UPolynomial out(bounds);
  std::vector<std::string> missing;
  const int psi = spec.family == Shape::H ? spec.d + 1 : spec.d;
  for (int g = 0; g <= spec.genus_max(); ++g) {
    for (int l = 0; l <= g; ++l) {
      const int e = 2 * l, h = g - l;
      if (e > bounds.eps_order || h > bounds.hbar_order) continue;
      const int n = spec.d + l + 2 - 2 * g;
      if (n < 0 || 2 * g + n <= 0) continue;
      if (spec.family == Shape::G && n == 0) {
        if (flags) flags->push_back("omitted holomorphic n=0 term at g=" + std::to_string(g) + ", l=" + std::to_string(l));
        continue;
      }
      IntegralKey key{spec.kind, spec.family, g, n, psi, l};
      Polynomial P;
      try {
        P = spec.provider->polynomial(key);
      } catch (const CoverageError&) {
        missing.push_back(key.str());
        continue;
      }
      if (P.is_zero()) continue;
      // (i hbar)^{g-l} (-1)^l eps^{2l} / n!
      GaussianRational pre = GaussianRational::i_pow(h) * GaussianRational(l % 2 ? -1 : 1) / GaussianRational(factorial(n));
      const bool dr = spec.kind == CycleKind::DR;
      Polynomial basis_poly = dr ? P.to_monomial() : P.to_falling();
      for (const auto& [s, c] : basis_poly.coeffs()) {
        std::vector<UVar> vars;
        int S = 0;
        for (int k : s) {
          vars.push_back({k, 1});
          S += k;
        }
        GaussianRational coeff = pre * GaussianRational(c);
        int xneg = 0;
        if (dr) {
          coeff *= GaussianRational::i_pow(-S);
        } else {
          xneg = 2 * g - S;
          if (xneg < 0) throw std::logic_error("provider polynomial of degree above 2g for " + key.str());
          if (g % 2) coeff = -coeff;
        }
        out.add_term(UMonomial::make(vars, xneg), coeff, e, h);
      }
    }
  }
  if (!missing.empty()) {
    std::string msg = "provider coverage missing:";
    for (const auto& m : missing) msg += " " + m;
    throw CoverageError(msg);
  }
  return out;
}

QElement build_density(const DensitySpec& spec) { return phi_to_q(density_u(spec), spec.trunc); }

QElement hamiltonian(const DensitySpec& spec) { return integrate_dx(build_density(spec)); }

QElement dr1_substitute(const QElement& f) {
  const TruncationSpec& t = f.trunc();
  if (t.m_min > -2 || t.m_max < -2) throw WindowError("dr1_substitute needs q_{-2} inside the m-window");
  const auto& unit = f.frame().unit;
  QElement out(f.frame(), t, f.integrated());
  out.add_drops(f.drops());
  for (const auto& [mon, c] : f.terms()) {
    // Split off the q_{-2}^alpha factors along the unit; the rest stays untouched.
    std::vector<QVar> rest;
    std::vector<int> mult(unit.size(), 0);
    for (const auto& v : mon.qvars) {
      if (v.m == -2 && unit[v.alpha - 1] != 0)
        ++mult[v.alpha - 1];
      else
        rest.push_back(v);
    }
    // Expand prod_alpha (q_{-2}^alpha - A^alpha eps^2/24)^{k_alpha}.
    std::vector<std::pair<std::vector<QVar>, CoeffSeries>> acc{{rest, c}};
    for (std::size_t a = 0; a < mult.size(); ++a) {
      const int k = mult[a];
      if (k == 0) continue;
      const Rational shift = -unit[a] / 24;
      std::vector<std::pair<std::vector<QVar>, CoeffSeries>> next;
      for (const auto& [vars, cc] : acc) {
        Rational binom = 1;
        Rational power = 1;
        for (int j = 0; j <= k; ++j) {
          std::vector<QVar> v2 = vars;
          for (int r = 0; r < k - j; ++r) v2.push_back({-2, static_cast<int>(a) + 1});
          next.emplace_back(std::move(v2), cc.shifted(2 * j, 0) * GaussianRational(binom * power));
          binom = binom * (k - j) / (j + 1);
          power *= shift;
        }
      }
      acc = std::move(next);
    }
    for (auto& [vars, cc] : acc) out.add_term(QMonomial::make(vars, mon.xpow), cc);
  }
  return out;
}

UPolynomial dr1_substitute_u(const UPolynomial& p) {
  const SeriesBounds b = p.bounds();
  const auto& unit = p.frame().unit;
  UPolynomial out(b, p.frame());
  for (const auto& [mon, c] : p.terms()) {
    UPolynomial acc = UPolynomial::monomial(UMonomial::make({}, mon.xneg), 1, b);
    for (const auto& v : mon.uvars) {
      // d_x^k (x^{-2}) = (-1)^k (k+1)! x^{-k-2}
      UPolynomial factor = UPolynomial::monomial(UMonomial::make({v}), 1, b);
      Rational w = unit[v.alpha - 1] * factorial(v.k + 1) / 24;
      if (v.k % 2) w = -w;
      if (w != 0) factor.add_term(UMonomial::make({}, v.k + 2), GaussianRational(w), 2, 0);
      acc = acc * factor;
    }
    acc *= c;
    out += acc;
  }
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "PASS";
    case Verdict::fail: return "FAIL";
    case Verdict::inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

Json Report::to_json() const {
  Json j{{"check", check}, {"verdict", to_string(verdict)}, {"witness", witness}, {"window", window},
         {"drops", drops}, {"max_order", max_order}};
  if (!details.empty()) j["details"] = details;
  return j;
}

UPolynomial weight_slice(const UPolynomial& p, int max_weight) {
  return p.filter([&](const UMonomial&, int e, int h) { return 2 * h + e <= 2 * max_weight; });
}

namespace {

Json window_json(const DensitySpec& s) {
  Json j = to_json(s.trunc);
  j["gmax"] = s.genus_max();
  return j;
}

/// Commutator slices up to this weight are complete: both factors carry genus <= gmax and every
/// contraction adds at least one hbar.
// The Moyal cross-check is quadratic in the q window; run it on a narrower m range.
TruncationSpec q_route_window(const TruncationSpec& t) {
  TruncationSpec q = t;
  q.m_min = std::max(t.m_min, -4L);
  q.m_max = std::min(t.m_max, 4L);
  return q;
}

int checkable_weight(const DensitySpec& s) { return std::min(s.genus_max() + 1, s.trunc.hbar_order); }

CoeffSeries weight_part(const CoeffSeries& c, int max_weight) {
  CoeffSeries out(c.bounds());
  for (const auto& [idx, v] : c.terms())
    if (2 * idx.hbar + idx.eps <= 2 * max_weight) out.add_term(idx.eps, idx.hbar, v);
  return out;
}

std::string first_term(const UPolynomial& p) {
  if (p.is_zero()) return "";
  const auto& [mon, c] = *p.terms().begin();
  std::ostringstream os;
  os << "(" << c << ") " << mon.str();
  return os.str();
}

struct QCompare {
  std::size_t compared = 0;
  std::size_t uncertified = 0;
  std::string witness;
};

/// Compares a and b on the monomials accepted by every predicate, up to the given weight.
QCompare compare_q(const QElement& a, const QElement& b, const std::vector<std::function<bool(const QMonomial&)>>& preds,
                   int max_weight, const std::function<bool(const QMonomial&)>& select = nullptr) {
  std::vector<QMonomial> support;
  for (const auto& [m, c] : a.terms()) support.push_back(m);
  for (const auto& [m, c] : b.terms()) support.push_back(m);
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  QCompare r;
  for (const auto& mon : support) {
    if (select && !select(mon)) continue;
    bool ok = true;
    for (const auto& p : preds) ok = ok && p(mon);
    if (!ok) {
      ++r.uncertified;
      continue;
    }
    CoeffSeries ca = weight_part(a.coeff(mon), max_weight);
    CoeffSeries cb = weight_part(b.coeff(mon), max_weight);
    ++r.compared;
    if (!(ca == cb) && r.witness.empty()) {
      std::ostringstream os;
      os << mon.str() << ": " << ca << " vs " << cb;
      r.witness = os.str();
    }
  }
  return r;
}

DensitySpec h_family(const DensitySpec& base, int d) {
  DensitySpec s = base.with_d(d);
  s.family = Shape::H;
  return s;
}

}  // namespace

Report verify_integrability(int d1, int d2, const DensitySpec& base) {
  Report r;
  r.check = "integrability";
  r.window = window_json(base);
  r.details = Json{{"kind", to_string(base.kind)}, {"d1", d1}, {"d2", d2}};
  const int W = checkable_weight(base);
  r.max_order = W;
  if (W < 1) {
    r.witness = "window has no hbar order to check";
    return r;
  }
  UPolynomial f = density_u(h_family(base, d1));
  UPolynomial g = density_u(h_family(base, d2));
  UPolynomial C = weight_slice(commutator_closed(f, g, W), W);
  UPolynomial V = variational_derivative_u(C);

  const TruncationSpec t = q_route_window(base.trunc);
  QElement fq = phi_to_q(f, t), gq = phi_to_q(g, t);
  QElement closed_q = phi_to_q(C, t);
  QElement moyal = commutator(fq, integrate_dx(gq));
  r.drops = fq.drops() + gq.drops();
  auto cert = commutator_certifier(f, g, t, W);
  QCompare routes = compare_q(closed_q, moyal, {cert}, W);
  QElement zero(fq.frame(), t, true);
  // Integrated monomials are stored at xpow 0; they come from the (ix)^{-1} coefficient.
  auto cert_integrated = [cert](const QMonomial& m) {
    QMonomial m2 = m;
    m2.xpow = -1;
    return cert(m2);
  };
  QCompare integral = compare_q(integrate_dx(moyal), zero, {cert_integrated}, W);
  r.details["q_window"] = to_json(t);
  r.details["u_terms"] = C.terms().size();
  r.details["q_compared"] = routes.compared;
  r.details["q_uncertified"] = routes.uncertified;
  r.details["q_integral_compared"] = integral.compared;

  if (!V.is_zero()) {
    r.verdict = Verdict::fail;
    r.witness = "variational derivative of the commutator: " + first_term(V);
  } else if (!routes.witness.empty()) {
    r.verdict = Verdict::fail;
    r.witness = "closed and q-side commutators disagree at " + routes.witness;
  } else if (!integral.witness.empty()) {
    r.verdict = Verdict::fail;
    r.witness = "q-side integral nonzero at " + integral.witness;
  } else {
    r.verdict = Verdict::pass;
  }
  return r;
}

Report verify_tau_symmetry(int d1, int d2, const DensitySpec& base) {
  Report r;
  r.check = "tau-symmetry";
  r.window = window_json(base);
  r.details = Json{{"kind", to_string(base.kind)}, {"d1", d1}, {"d2", d2}};
  if (d1 < 0 || d2 < 0) throw std::invalid_argument("tau symmetry needs d1, d2 >= 0");
  const int W = checkable_weight(base);
  r.max_order = W;
  if (W < 1) {
    r.witness = "window has no hbar order to check";
    return r;
  }
  UPolynomial f1 = density_u(h_family(base, d1 - 1)), g2 = density_u(h_family(base, d2));
  UPolynomial f2 = density_u(h_family(base, d2 - 1)), g1 = density_u(h_family(base, d1));
  UPolynomial A = weight_slice(commutator_closed(f1, g2, W), W);
  UPolynomial B = weight_slice(commutator_closed(f2, g1, W), W);
  UPolynomial D = A - B;

  const TruncationSpec t = q_route_window(base.trunc);
  QElement f1q = phi_to_q(f1, t), g2q = phi_to_q(g2, t), f2q = phi_to_q(f2, t), g1q = phi_to_q(g1, t);
  r.drops = f1q.drops() + g2q.drops() + f2q.drops() + g1q.drops();
  QElement MA = commutator(f1q, integrate_dx(g2q));
  QElement MB = commutator(f2q, integrate_dx(g1q));
  QCompare q = compare_q(MA, MB, {commutator_certifier(f1, g2, t, W), commutator_certifier(f2, g1, t, W)}, W);
  r.details["q_window"] = to_json(t);
  r.details["u_terms"] = A.terms().size();
  r.details["q_compared"] = q.compared;
  r.details["q_uncertified"] = q.uncertified;

  if (!D.is_zero()) {
    r.verdict = Verdict::fail;
    r.witness = "densities differ: " + first_term(D);
  } else if (!q.witness.empty()) {
    r.verdict = Verdict::fail;
    r.witness = "q-side commutators differ at " + q.witness;
  } else {
    r.verdict = Verdict::pass;
  }
  return r;
}

Report verify_main_theorem(int g, int d, int l, int n, const IntegralProvider& md, const IntegralProvider& dr) {
  Report r;
  r.check = "main-theorem";
  r.max_order = g;
  IntegralKey kmd{CycleKind::MD, Shape::H, g, n, d + 1, l};
  IntegralKey kdr{CycleKind::DR, Shape::H, g, n, d + 1, l};
  r.details = Json{{"g", g}, {"d", d}, {"l", l}, {"n", n}, {"saturates", kmd.saturates()}};
  ProvidedPolynomial pm = md.get(kmd), pd = dr.get(kdr);
  r.details["md_provenance"] = to_string(pm.provenance);
  r.details["dr_provenance"] = to_string(pd.provenance);
  Polynomial P = pm.poly.to_falling();
  Polynomial Q = pd.poly.to_monomial();
  if (!P.is_zero() && !P.is_homogeneous(2 * g)) {
    r.verdict = Verdict::fail;
    r.witness = "MD polynomial not homogeneous of factorial degree " + std::to_string(2 * g) + ": " + P.str();
    return r;
  }
  std::set<Exponents> support;
  for (const auto& [s, c] : P.coeffs()) support.insert(s);
  for (const auto& [s, c] : Q.coeffs())
    if (std::accumulate(s.begin(), s.end(), 0) == 2 * g) support.insert(s);
  std::size_t compared = 0;
  for (const auto& s : support) {
    ++compared;
    if (P.coeff(s) != Q.coeff(s)) {
      std::ostringstream os;
      os << "exponent (";
      for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
      os << "): falling " << P.coeff(s) << " vs monomial " << Q.coeff(s);
      r.verdict = Verdict::fail;
      r.witness = os.str();
      return r;
    }
  }
  r.details["coefficients_compared"] = compared;
  r.verdict = Verdict::pass;
  return r;
}

Report verify_degree_zero(int d, const DensitySpec& base) {
  Report r;
  r.check = "degree-zero";
  r.window = window_json(base);
  r.max_order = base.genus_max();
  r.details = Json{{"d", d}};
  DensitySpec smd = h_family(base, d).with_kind(CycleKind::MD);
  DensitySpec sdr = h_family(base, d).with_kind(CycleKind::DR);
  UPolynomial hm = density_u(smd), hd = density_u(sdr);
  for (const auto& [mon, c] : hd.terms())
    for (const auto& [idx, v] : c.terms())
      if (md_degree(mon, idx.eps, idx.hbar) > 0) {
        r.verdict = Verdict::fail;
        r.witness = "DR term of positive degree: " + mon.str();
        return r;
      }
  UPolynomial diff = hm - hd.extract_degree(0);
  QElement qm = phi_to_q(hm, base.trunc), qd = phi_to_q(hd, base.trunc);
  r.drops = qm.drops() + qd.drops();
  QCompare q = compare_q(qm, extract_degree(qd, 0), {}, r.max_order + 1);
  r.details["q_compared"] = q.compared;
  if (!diff.is_zero()) {
    r.verdict = Verdict::fail;
    r.witness = "MD minus degree-0 DR part: " + first_term(diff);
  } else if (!q.witness.empty()) {
    r.verdict = Verdict::fail;
    r.witness = "q-side mismatch at " + q.witness;
  } else {
    r.verdict = Verdict::pass;
  }
  return r;
}

Report verify_dr1_link(int d, const DensitySpec& base) {
  Report r;
  r.check = "dr1-link";
  r.window = window_json(base);
  const int G = base.genus_max();
  r.max_order = G;
  r.details = Json{{"d", d}};
  UPolynomial hm = density_u(h_family(base, d).with_kind(CycleKind::MD));
  UPolynomial h1 = density_u(h_family(base, d).with_kind(CycleKind::DR1));
  UPolynomial diff = weight_slice(dr1_substitute_u(hm), G) - weight_slice(h1, G);

  const TruncationSpec& t = base.trunc;
  QElement qm = phi_to_q(hm, t), q1 = phi_to_q(h1, t);
  r.drops = qm.drops() + q1.drops();
  // Each shift removes one q_{-2}; factors beyond n_max were never present in the source.
  const int max_degree = t.n_max - t.eps_order / 2;
  QCompare q = compare_q(dr1_substitute(qm), q1, {}, G,
                         [&](const QMonomial& m) { return m.degree() <= max_degree; });
  r.details["q_compared"] = q.compared;
  r.details["q_uncertified"] = q.uncertified;
  if (!diff.is_zero()) {
    r.verdict = Verdict::fail;
    r.witness = "substituted MD minus DR1: " + first_term(diff);
  } else if (!q.witness.empty()) {
    r.verdict = Verdict::fail;
    r.witness = "q-side mismatch at " + q.witness;
  } else {
    r.verdict = Verdict::pass;
  }
  return r;
}

}  // namespace mdh
