#include "mdh/loopspace.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "mdh/errors.hpp"

namespace mdh {

PhaseFrame PhaseFrame::make(std::vector<std::vector<Rational>> eta, std::vector<Rational> unit) {
  const int n = static_cast<int>(eta.size());
  if (n == 0 || static_cast<int>(unit.size()) != n) throw std::invalid_argument("frame dimension mismatch");
  for (const auto& row : eta)
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("eta is not square");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (eta[a][b] != eta[b][a]) throw std::invalid_argument("eta is not symmetric");

  // Gauss-Jordan on [eta | I].
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(2 * n, Rational(0)));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) m[a][b] = eta[a][b];
    m[a][n + a] = 1;
  }
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && sgn(m[p][c]) == 0) ++p;
    if (p == n) throw DomainError("eta is degenerate");
    std::swap(m[p], m[c]);
    Rational inv = 1 / m[c][c];
    for (auto& v : m[c]) v *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == c || sgn(m[r][c]) == 0) continue;
      Rational f = m[r][c];
      for (int j = 0; j < 2 * n; ++j) m[r][j] -= f * m[c][j];
    }
  }
  PhaseFrame fr;
  fr.dim = n;
  fr.eta = std::move(eta);
  fr.eta_inv.assign(n, std::vector<Rational>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) fr.eta_inv[a][b] = m[a][n + b];
  fr.unit = std::move(unit);
  return fr;
}

QMonomial QMonomial::make(std::vector<QVar> vars, long xpow) {
  std::sort(vars.begin(), vars.end());
  return QMonomial{std::move(vars), xpow};
}

long QMonomial::sum_m() const {
  return std::accumulate(qvars.begin(), qvars.end(), 0L, [](long s, const QVar& v) { return s + v.m; });
}

QMonomial QMonomial::operator*(const QMonomial& o) const {
  QMonomial out;
  out.qvars.reserve(qvars.size() + o.qvars.size());
  std::merge(qvars.begin(), qvars.end(), o.qvars.begin(), o.qvars.end(), std::back_inserter(out.qvars));
  out.xpow = xpow + o.xpow;
  return out;
}

std::string QMonomial::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& v : qvars) {
    if (!first) os << "*";
    first = false;
    os << "q[" << v.m << "]";
    if (v.alpha != 1) os << "^" << v.alpha;
  }
  if (xpow != 0 || first) {
    if (!first) os << "*";
    os << "(ix)^" << xpow;
  }
  return os.str();
}

bool TruncationSpec::admits(const QMonomial& mon) const {
  if (mon.degree() > n_max || mon.xpow < xpow_min || mon.xpow > xpow_max) return false;
  return std::all_of(mon.qvars.begin(), mon.qvars.end(), [this](const QVar& v) { return admits_var(v); });
}

void TruncationSpec::validate() const {
  if (m_min > m_max) throw std::invalid_argument("m_min exceeds m_max");
  if (xpow_min > xpow_max) throw std::invalid_argument("xpow_min exceeds xpow_max");
  if (n_max < 0 || eps_order < 0 || hbar_order < 0) throw std::invalid_argument("negative truncation bound");
}

TruncationSpec TruncationSpec::meet(const TruncationSpec& a, const TruncationSpec& b) {
  return {std::max(a.m_min, b.m_min),          std::min(a.m_max, b.m_max),
          std::min(a.n_max, b.n_max),          std::max(a.xpow_min, b.xpow_min),
          std::min(a.xpow_max, b.xpow_max),    std::min(a.eps_order, b.eps_order),
          std::min(a.hbar_order, b.hbar_order)};
}

TruncationSpec TruncationSpec::doubled() const {
  TruncationSpec t = *this;
  t.m_min = 2 * m_min;
  t.m_max = 2 * m_max;
  t.n_max = 2 * n_max;
  t.xpow_min = 2 * xpow_min;
  t.xpow_max = 2 * xpow_max;
  return t;
}

QElement::QElement(PhaseFrame frame, TruncationSpec trunc, bool integrated)
    : frame_(std::move(frame)), trunc_(trunc), integrated_(integrated) {
  trunc_.validate();
}

void QElement::add_term(const QMonomial& mon, const CoeffSeries& c) {
  if (c.is_zero()) return;
  if (!trunc_.admits(mon) || (integrated_ && mon.xpow != 0)) {
    ++drops_;
    return;
  }
  CoeffSeries v = c.with_bounds(SeriesBounds::meet(c.bounds(), trunc_.bounds()));
  if (v.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(mon, v);
  if (!inserted) {
    it->second += v;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

CoeffSeries QElement::coeff(const QMonomial& mon) const {
  auto it = terms_.find(mon);
  return it == terms_.end() ? CoeffSeries(trunc_.bounds()) : it->second;
}

QElement QElement::with_trunc(const TruncationSpec& t) const {
  QElement out(frame_, t, integrated_);
  out.drops_ = drops_;
  for (const auto& [mon, c] : terms_) out.add_term(mon, c.with_bounds(SeriesBounds::meet(c.bounds(), t.bounds())));
  return out;
}

QElement QElement::slice(int e, int h) const {
  QElement out(frame_, trunc_, integrated_);
  for (const auto& [mon, c] : terms_) out.add_term(mon, c.slice(e, h));
  return out;
}

QElement QElement::operator-() const {
  QElement out(*this);
  for (auto& [mon, c] : out.terms_) c = -c;
  return out;
}

QElement& QElement::operator+=(const QElement& o) {
  require_compatible(*this, o);
  TruncationSpec t = TruncationSpec::meet(trunc_, o.trunc_);
  if (!(t == trunc_)) {
    trunc_ = t;
    Terms old;
    old.swap(terms_);
    for (const auto& [mon, c] : old) add_term(mon, c);
  }
  for (const auto& [mon, c] : o.terms_) add_term(mon, c);
  drops_ += o.drops_;
  return *this;
}

QElement& QElement::operator-=(const QElement& o) { return *this += -o; }

QElement& QElement::operator*=(const CoeffSeries& c) {
  Terms old;
  old.swap(terms_);
  for (const auto& [mon, v] : old) add_term(mon, v * c);
  return *this;
}

QElement& QElement::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [mon, v] : terms_) v *= c;
  return *this;
}

std::string QElement::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mon, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")*" << mon.str();
  }
  return os.str();
}

void require_compatible(const QElement& a, const QElement& b) {
  if (!(a.frame() == b.frame())) throw FrameMismatch("q-elements live on different phase frames");
  if (a.integrated() != b.integrated()) throw FrameMismatch("cannot combine integrated and non-integrated elements");
}

QElement q_mul(const QElement& a, const QElement& b) {
  require_compatible(a, b);
  QElement out(a.frame(), TruncationSpec::meet(a.trunc(), b.trunc()), a.integrated());
  out.add_drops(a.drops() + b.drops());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) out.add_term(ma * mb, ca * cb);
  return out;
}

QElement integrate_dx(const QElement& f) {
  if (f.integrated()) throw std::invalid_argument("integrate_dx expects a non-integrated element");
  QElement out(f.frame(), f.trunc(), true);
  out.add_drops(f.drops());
  for (const auto& [mon, c] : f.terms()) {
    if (mon.xpow != -1 || mon.qvars.empty()) continue;
    out.add_term(QMonomial{mon.qvars, 0}, c);
  }
  return out;
}

long md_degree(const QMonomial& mon, int e, int h) { return mon.sum_m() - mon.xpow - e - 2L * h; }

QElement extract_degree(const QElement& f, long d) {
  QElement out(f.frame(), f.trunc(), f.integrated());
  for (const auto& [mon, c] : f.terms()) {
    // An integrated monomial stands for the (ix)^{-1} coefficient of a density.
    QMonomial effective{mon.qvars, f.integrated() ? -1 : mon.xpow};
    CoeffSeries part(c.bounds());
    for (const auto& [idx, v] : c.terms())
      if (md_degree(effective, idx.eps, idx.hbar) == d) part.add_term(idx.eps, idx.hbar, v);
    out.add_term(mon, part);
  }
  return out;
}

CoeffSeries EvaluationResult::at_x_zero() const {
  auto it = by_xpow.find(0);
  if (it != by_xpow.end()) return it->second;
  return by_xpow.empty() ? CoeffSeries() : CoeffSeries(by_xpow.begin()->second.bounds());
}

EvaluationResult evaluate(const QElement& f, const Assignment& assign, bool at_x_zero) {
  for (const auto& [v, val] : assign)
    if (!f.trunc().admits_var(v) && !val.is_zero())
      throw CoverageError("assignment for q[" + std::to_string(v.m) + "] lies outside the window");
  SeriesBounds bounds = f.trunc().bounds();
  EvaluationResult res;
  if (at_x_zero) res.by_xpow.emplace(0, CoeffSeries(bounds));
  for (const auto& [mon, c] : f.terms()) {
    if (at_x_zero && mon.xpow != 0) continue;
    CoeffSeries val = c.with_bounds(bounds);
    for (const auto& v : mon.qvars) {
      auto it = assign.find(v);
      if (it == assign.end()) {
        val = CoeffSeries(bounds);
        break;
      }
      val = val * it->second;
      if (val.is_zero()) break;
    }
    if (val.is_zero()) continue;
    auto [it, inserted] = res.by_xpow.try_emplace(mon.xpow, bounds);
    it->second += val;
  }
  return res;
}

}  // namespace mdh
