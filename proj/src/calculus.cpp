#include "mdh/calculus.hpp"

#include <algorithm>

#include "mdh/errors.hpp"

namespace mdh {

QElement dx_q(const QElement& f) {
  if (f.integrated()) throw std::invalid_argument("dx_q expects a non-integrated element");
  QElement out(f.frame(), f.trunc(), false);
  out.add_drops(f.drops());
  const GaussianRational i = GaussianRational::i();
  for (const auto& [mon, c] : f.terms()) {
    if (mon.xpow == 0) continue;
    out.add_term(QMonomial{mon.qvars, mon.xpow - 1}, c * (i * GaussianRational(mon.xpow)));
  }
  return out;
}

UPolynomial dx_u(const UPolynomial& p) {
  UPolynomial out(p.bounds(), p.frame());
  for (const auto& [mon, c] : p.terms()) {
    if (mon.xneg > 0) out.add_term(UMonomial{mon.uvars, mon.xneg + 1}, c * GaussianRational(-mon.xneg));
    for (std::size_t i = 0; i < mon.uvars.size(); ++i) {
      if (i > 0 && mon.uvars[i] == mon.uvars[i - 1]) continue;
      long mult = std::count(mon.uvars.begin(), mon.uvars.end(), mon.uvars[i]);
      std::vector<UVar> vars = mon.uvars;
      vars[i].k += 1;
      out.add_term(UMonomial::make(std::move(vars), mon.xneg), c * GaussianRational(mult));
    }
  }
  return out;
}

UPolynomial dx_u(const UPolynomial& p, int times) {
  UPolynomial out = p;
  for (int t = 0; t < times; ++t) out = dx_u(out);
  return out;
}

UPolynomial partial_u(const UPolynomial& p, const UVar& v) {
  UPolynomial out(p.bounds(), p.frame());
  for (const auto& [mon, c] : p.terms()) {
    auto it = std::find(mon.uvars.begin(), mon.uvars.end(), v);
    if (it == mon.uvars.end()) continue;
    long mult = std::count(mon.uvars.begin(), mon.uvars.end(), v);
    std::vector<UVar> vars = mon.uvars;
    vars.erase(vars.begin() + (it - mon.uvars.begin()));
    out.add_term(UMonomial{std::move(vars), mon.xneg}, c * GaussianRational(mult));
  }
  return out;
}

QElement partial_q(const QElement& f, const QVar& v) {
  QElement out(f.frame(), f.trunc(), f.integrated());
  for (const auto& [mon, c] : f.terms()) {
    auto it = std::find(mon.qvars.begin(), mon.qvars.end(), v);
    if (it == mon.qvars.end()) continue;
    long mult = std::count(mon.qvars.begin(), mon.qvars.end(), v);
    std::vector<QVar> vars = mon.qvars;
    vars.erase(vars.begin() + (it - mon.qvars.begin()));
    out.add_term(QMonomial{std::move(vars), mon.xpow}, c * GaussianRational(mult));
  }
  return out;
}

UPolynomial variational_derivative_u(const UPolynomial& p, int alpha) {
  int kmax = -1;
  for (const auto& [mon, c] : p.terms())
    for (const auto& v : mon.uvars)
      if (v.alpha == alpha) kmax = std::max(kmax, v.k);
  UPolynomial out(p.bounds(), p.frame());
  for (int s = 0; s <= kmax; ++s) {
    UPolynomial term = dx_u(partial_u(p, {s, alpha}), s);
    if (s % 2 == 1) term = -term;
    out += term;
  }
  return out;
}

QElement variational_derivative(const QElement& F, int alpha) {
  if (!F.integrated()) throw std::invalid_argument("variational_derivative expects an integrated element");
  TruncationSpec t = F.trunc();
  QElement out(F.frame(), t, false);
  for (const auto& [mon, c] : F.terms()) {
    for (std::size_t i = 0; i < mon.qvars.size(); ++i) {
      const QVar& v = mon.qvars[i];
      if (v.alpha != alpha || (i > 0 && mon.qvars[i - 1] == v)) continue;
      long mult = std::count(mon.qvars.begin(), mon.qvars.end(), v);
      std::vector<QVar> vars = mon.qvars;
      vars.erase(vars.begin() + static_cast<long>(i));
      out.add_term(QMonomial{std::move(vars), -v.m - 1}, c * GaussianRational(mult));
    }
  }
  return out;
}

bool integrates_to_zero(const UPolynomial& p) {
  for (int a = 1; a <= p.frame().dim; ++a)
    if (!variational_derivative_u(p, a).is_zero()) return false;
  return true;
}

FunctionalComparison functional_equal(const QElement& F, const QElement& G) {
  if (!F.integrated() || !G.integrated()) throw std::invalid_argument("functional_equal expects integrated elements");
  if (!(F.frame() == G.frame())) throw FrameMismatch("functionals live on different phase frames");
  if (!(F.trunc() == G.trunc())) throw WindowError("functionals were computed in different windows");
  FunctionalComparison res;
  auto a = F.terms().begin(), b = G.terms().begin();
  while (a != F.terms().end() || b != G.terms().end()) {
    if (b == G.terms().end() || (a != F.terms().end() && a->first < b->first)) {
      res.witness = a->first.str() + ": " + a->second.str() + " vs 0";
      return res;
    }
    if (a == F.terms().end() || b->first < a->first) {
      res.witness = b->first.str() + ": 0 vs " + b->second.str();
      return res;
    }
    if (!(a->second == b->second)) {
      res.witness = a->first.str() + ": " + a->second.str() + " vs " + b->second.str();
      return res;
    }
    ++a;
    ++b;
  }
  res.equal = true;
  return res;
}

}  // namespace mdh
