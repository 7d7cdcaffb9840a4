#include "mdh/routes.hpp"

#include <algorithm>
#include <numeric>

#include "mdh/brackets.hpp"

namespace mdh {

namespace {

long sum_m(const std::vector<QVar>& v) {
  return std::accumulate(v.begin(), v.end(), 0L, [](long s, const QVar& q) { return s + q.m; });
}

/// In f*g the contracted f-variables are >= 0 and sum to A; in g*f the contracted
/// g-variables are >= 0 and sum to B. Partners sit at -2 minus these values.
bool contractions_fit(long total, const TruncationSpec& w) { return total < 0 || (total <= w.m_max && -2 - total >= w.m_min); }

bool certified(const QMonomial& out, int n, int nf, int ng, long cf, long cg, const TruncationSpec& w) {
  const int keep_f = nf - n;
  const int keep_g = ng - n;
  if (keep_f < 0 || keep_g < 0 || keep_f + keep_g != out.degree()) return true;  // no contributions at all
  const long total = out.sum_m();
  std::vector<int> pick(out.qvars.size(), 0);
  std::fill(pick.end() - keep_f, pick.end(), 1);
  do {
    std::vector<QVar> uf;
    for (std::size_t i = 0; i < pick.size(); ++i)
      if (pick[i]) uf.push_back(out.qvars[i]);
    long su = sum_m(uf);
    long A = out.xpow + cf - su;
    long B = cg - 1 - (total - su);
    if (!contractions_fit(A, w) || !contractions_fit(B, w)) return false;
  } while (std::next_permutation(pick.begin(), pick.end()));
  return true;
}

}  // namespace

RouteComparison compare_commutator_routes(const UMonomial& f, const UMonomial& g, const TruncationSpec& window,
                                          int max_order) {
  TruncationSpec w = window;
  w.hbar_order = max_order;
  const SeriesBounds b = w.bounds();
  UPolynomial fu = UPolynomial::monomial(f, 1, b);
  UPolynomial gu = UPolynomial::monomial(g, 1, b);

  QElement closed = phi_to_q(commutator_closed(fu, gu, max_order), w);
  QElement moyal = commutator(phi_to_q(fu, w), integrate_dx(phi_to_q(gu, w)));

  RouteComparison res;
  res.max_order = max_order;
  res.compared.assign(max_order + 1, 0);
  res.mismatches.assign(max_order + 1, 0);
  const long cf = f.deriv_sum() + f.xneg;
  const long cg = g.deriv_sum() + g.xneg;

  std::vector<QMonomial> support;
  for (const auto& [mon, c] : closed.terms()) support.push_back(mon);
  for (const auto& [mon, c] : moyal.terms()) support.push_back(mon);
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());

  for (int n = 1; n <= max_order; ++n)
    for (const auto& mon : support) {
      if (!certified(mon, n, f.degree(), g.degree(), cf, cg, w)) continue;
      ++res.compared[n];
      GaussianRational a = closed.coeff(mon).coeff(0, n);
      GaussianRational q = moyal.coeff(mon).coeff(0, n);
      if (!(a == q)) {
        ++res.mismatches[n];
        if (res.witness.empty())
          res.witness = "hbar^" + std::to_string(n) + " " + mon.str() + ": closed " + a.str() + " vs moyal " + q.str();
      }
    }
  return res;
}

}  // namespace mdh

namespace mdh {

std::function<bool(const QMonomial&)> commutator_certifier(const UPolynomial& f, const UPolynomial& g,
                                                           const TruncationSpec& window, int max_order) {
  using Piece = std::pair<int, long>;  // (number of factors, derivative order plus pole order)
  auto pieces = [](const UPolynomial& p) {
    std::vector<Piece> out;
    for (const auto& [mon, c] : p.terms()) out.emplace_back(mon.degree(), mon.deriv_sum() + mon.xneg);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  return [pf = pieces(f), pg = pieces(g), w = window, max_order](const QMonomial& out) {
    if (w.xpow_min > -1 || w.xpow_max < -1) return false;
    for (int n = 1; n <= max_order; ++n)
      for (const auto& [nf, cf] : pf)
        for (const auto& [ng, cg] : pg) {
          const bool contributes = nf >= n && ng >= n && nf + ng - 2 * n == out.degree();
          if (!contributes) continue;
          if (nf > w.n_max || ng > w.n_max) return false;
          if (!certified(out, n, nf, ng, cf, cg, w)) return false;
        }
    return true;
  };
}

}  // namespace mdh
