#include "mdh/brackets.hpp"

#include <algorithm>
#include <functional>

#include "mdh/calculus.hpp"
#include "mdh/errors.hpp"
#include "mdh/polynomial.hpp"

namespace mdh {

namespace {

using MonoPair = std::pair<QMonomial, QMonomial>;
using PairMap = std::map<MonoPair, GaussianRational>;

std::vector<QVar> without_one(const std::vector<QVar>& vars, const QVar& v) {
  std::vector<QVar> out = vars;
  out.erase(std::find(out.begin(), out.end(), v));
  return out;
}

/// One contraction sum_k i k eta^{ab} d/dq_{k-1}^a (left) d/dq_{-k-1}^b (right),
/// restricted to k > 0 when positive_only is set.
PairMap contract_once(const PairMap& in, const PhaseFrame& fr, bool positive_only) {
  PairMap out;
  const GaussianRational i = GaussianRational::i();
  for (const auto& [pair, c] : in) {
    const auto& [a, b] = pair;
    for (std::size_t x = 0; x < a.qvars.size(); ++x) {
      const QVar& va = a.qvars[x];
      if (x > 0 && a.qvars[x - 1] == va) continue;
      long k = va.m + 1;
      if (k == 0 || (positive_only && k < 0)) continue;
      long mult_a = std::count(a.qvars.begin(), a.qvars.end(), va);
      for (std::size_t y = 0; y < b.qvars.size(); ++y) {
        const QVar& vb = b.qvars[y];
        if (vb.m != -k - 1 || (y > 0 && b.qvars[y - 1] == vb)) continue;
        const Rational& eta = fr.eta_inv[va.alpha - 1][vb.alpha - 1];
        if (sgn(eta) == 0) continue;
        long mult_b = std::count(b.qvars.begin(), b.qvars.end(), vb);
        GaussianRational w = c * i * GaussianRational(Rational(eta * k * mult_a * mult_b));
        MonoPair next{QMonomial{without_one(a.qvars, va), a.xpow}, QMonomial{without_one(b.qvars, vb), b.xpow}};
        auto [it, inserted] = out.try_emplace(next, w);
        if (!inserted) {
          it->second += w;
          if (it->second.is_zero()) out.erase(it);
        }
      }
    }
  }
  return out;
}

/// sum_n hbar^n / n! D^n (A (x) B), multiplied out.
void star_into(QElement& out, const QElement& A, const QElement& B, int max_n) {
  const PhaseFrame& fr = out.frame();
  for (const auto& [ma, ca] : A.terms())
    for (const auto& [mb, cb] : B.terms()) {
      CoeffSeries base = ca * cb;
      PairMap cur{{MonoPair{ma, mb}, GaussianRational(1)}};
      Rational inv_fact(1);
      for (int n = 0; n <= max_n && !cur.empty(); ++n) {
        if (n > 0) inv_fact /= n;
        CoeffSeries scaled = base.shifted(0, n) * GaussianRational(inv_fact);
        if (scaled.is_zero()) break;
        for (const auto& [pair, c] : cur) out.add_term(pair.first * pair.second, scaled * c);
        if (n < max_n) cur = contract_once(cur, fr, true);
      }
    }
}

}  // namespace

QElement poisson(const QElement& f, const QElement& G) {
  if (!G.integrated()) throw std::invalid_argument("poisson expects an integrated second argument");
  if (!(f.frame() == G.frame())) throw FrameMismatch("bracket operands live on different phase frames");
  QElement out(f.frame(), TruncationSpec::meet(f.trunc(), G.trunc()), f.integrated());
  out.add_drops(f.drops() + G.drops());
  for (const auto& [ma, ca] : f.terms())
    for (const auto& [mb, cb] : G.terms()) {
      PairMap one = contract_once({{MonoPair{ma, mb}, GaussianRational(1)}}, f.frame(), false);
      if (one.empty()) continue;
      CoeffSeries base = ca * cb;
      for (const auto& [pair, c] : one) out.add_term(pair.first * pair.second, base * c);
    }
  return out;
}

UPolynomial poisson_u(const UPolynomial& f, const UPolynomial& g) {
  UPolynomial out(SeriesBounds::meet(f.bounds(), g.bounds()), f.frame());
  const PhaseFrame& fr = f.frame();
  std::vector<UPolynomial> var_der;
  for (int b = 1; b <= fr.dim; ++b) var_der.push_back(variational_derivative_u(g, b));
  std::vector<UVar> vars;
  for (const auto& [mon, c] : f.terms()) vars.insert(vars.end(), mon.uvars.begin(), mon.uvars.end());
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  for (const auto& v : vars) {
    UPolynomial df = partial_u(f, v);
    for (int b = 1; b <= fr.dim; ++b) {
      const Rational& eta = fr.eta_inv[v.alpha - 1][b - 1];
      if (sgn(eta) == 0) continue;
      out += df * dx_u(var_der[b - 1], v.k + 1) * GaussianRational(eta);
    }
  }
  return out;
}

QElement star(const QElement& F, const QElement& G, int hbar_order) {
  if (!F.integrated() || !G.integrated()) throw std::invalid_argument("star expects integrated operands");
  require_compatible(F, G);
  TruncationSpec t = TruncationSpec::meet(F.trunc(), G.trunc());
  t.hbar_order = std::min(t.hbar_order, hbar_order);
  QElement out(F.frame(), t, true);
  out.add_drops(F.drops() + G.drops());
  star_into(out, F, G, t.hbar_order);
  return out;
}

QElement commutator(const QElement& f, const QElement& G) {
  if (!G.integrated()) throw std::invalid_argument("commutator expects an integrated second argument");
  if (!(f.frame() == G.frame())) throw FrameMismatch("bracket operands live on different phase frames");
  TruncationSpec t = TruncationSpec::meet(f.trunc(), G.trunc());
  QElement fg(f.frame(), t, f.integrated());
  QElement gf(f.frame(), t, f.integrated());
  star_into(fg, f, G, t.hbar_order);
  star_into(gf, G, f, t.hbar_order);
  fg -= gf;
  fg.add_drops(f.drops() + G.drops());
  return fg;
}

UPolynomial commutator_closed(const UPolynomial& f, const UPolynomial& g, int max_n) {
  if (!(f.frame() == g.frame())) throw FrameMismatch("bracket operands live on different phase frames");
  const SeriesBounds bounds = SeriesBounds::meet(f.bounds(), g.bounds());
  const PhaseFrame& fr = f.frame();
  if (max_n < 0) max_n = bounds.hbar_order;
  UPolynomial out(bounds, fr);

  auto distinct_vars = [](const UPolynomial& p) {
    std::vector<UVar> vars;
    for (const auto& [mon, c] : p.terms()) vars.insert(vars.end(), mon.uvars.begin(), mon.uvars.end());
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return vars;
  };
  const auto vf = distinct_vars(f);
  const auto vg = distinct_vars(g);

  // Partial derivatives indexed by the sorted multiset of differentiation variables.
  std::map<std::vector<UVar>, UPolynomial> df_cache, dg_cache;
  std::function<const UPolynomial&(std::map<std::vector<UVar>, UPolynomial>&, const UPolynomial&,
                                   const std::vector<UVar>&)>
      partial = [&](auto& cache, const UPolynomial& p, const std::vector<UVar>& key) -> const UPolynomial& {
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    UPolynomial val = p;
    if (!key.empty()) {
      std::vector<UVar> head(key.begin(), key.end() - 1);
      val = partial_u(partial(cache, p, head), key.back());
    }
    return cache.emplace(key, std::move(val)).first->second;
  };

  Rational n_fact(1);
  for (int n = 1; n <= max_n; ++n) {
    n_fact *= n;
    if (bounds.hbar_order < n) break;
    const GaussianRational prefactor = GaussianRational::i_pow(-(n - 1)) * GaussianRational(1 / n_fact);
    UPolynomial level(bounds, fr);

    std::vector<std::size_t> ridx(n, 0);
    std::vector<std::size_t> sidx(n, 0);
    auto next = [](std::vector<std::size_t>& idx, std::size_t base) {
      for (std::size_t p = 0; p < idx.size(); ++p) {
        if (++idx[p] < base) return true;
        idx[p] = 0;
      }
      return false;
    };
    if (vf.empty() || vg.empty()) break;
    std::fill(ridx.begin(), ridx.end(), 0);
    do {
      std::vector<UVar> r(n);
      for (int p = 0; p < n; ++p) r[p] = vg[ridx[p]];
      std::vector<UVar> rkey = r;
      std::sort(rkey.begin(), rkey.end());
      const UPolynomial& gr = partial(dg_cache, g, rkey);
      if (gr.is_zero()) continue;
      int R = 0;
      for (const auto& v : r) R += v.k;

      std::map<int, UPolynomial> by_total;
      std::fill(sidx.begin(), sidx.end(), 0);
      do {
        std::vector<UVar> s(n);
        for (int p = 0; p < n; ++p) s[p] = vf[sidx[p]];
        Rational w(1);
        int S = 0;
        for (int p = 0; p < n && sgn(w) != 0; ++p) {
          w *= fr.eta_inv[s[p].alpha - 1][r[p].alpha - 1] * factorial(s[p].k + r[p].k + 1);
          S += s[p].k;
        }
        if (sgn(w) == 0) continue;
        std::vector<UVar> skey = s;
        std::sort(skey.begin(), skey.end());
        const UPolynomial& fs = partial(df_cache, f, skey);
        if (fs.is_zero()) continue;
        auto [it, inserted] = by_total.try_emplace(S + R, bounds, fr);
        it->second += fs * GaussianRational(w);
      } while (next(sidx, vf.size()));

      UPolynomial dgr = gr;
      int done = 0;
      for (auto& [T, A] : by_total) {
        if (A.is_zero()) continue;
        int order = T + 2 * n - 1;
        dgr = dx_u(dgr, order - done);
        done = order;
        Rational k = 1 / factorial(order);
        if (R % 2 == 1) k = -k;
        level += A * dgr * GaussianRational(k);
      }
    } while (next(ridx, vg.size()));
    out += level.shifted(0, n) * prefactor;
  }
  return out;
}

Rational ehrhart(const std::vector<int>& d, long A) {
  const long n = static_cast<long>(d.size());
  if (A < 0) return Rational(0);
  if (n == 0) return Rational(A == 0 ? 1 : 0);
  long D = 0;
  Rational num(1);
  for (int di : d) {
    D += di;
    num *= factorial(di);
  }
  const int top = static_cast<int>(D + n - 1);
  return num / factorial(top) * falling_factorial(Rational(A + n - 1), top);
}

Rational ehrhart_bruteforce(const std::vector<int>& d, long A, long cap) {
  if (A > cap) throw DomainError("ehrhart_bruteforce: A exceeds the configured cap");
  if (A < 0) return Rational(0);
  const std::size_t n = d.size();
  if (n == 0) return Rational(A == 0 ? 1 : 0);
  Rational total(0);
  std::vector<long> a(n, 0);
  std::function<void(std::size_t, long)> rec = [&](std::size_t i, long left) {
    if (i + 1 == n) {
      a[i] = left;
      Rational prod(1);
      for (std::size_t j = 0; j < n && sgn(prod) != 0; ++j) prod *= falling_factorial(Rational(a[j]), d[j]);
      total += prod;
      return;
    }
    for (long v = 0; v <= left; ++v) {
      a[i] = v;
      rec(i + 1, left - v);
    }
  };
  rec(0, A);
  return total;
}

}  // namespace mdh
