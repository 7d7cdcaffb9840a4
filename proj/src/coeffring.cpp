#include "mdh/coeffring.hpp"

#include <sstream>

#include "mdh/errors.hpp"

namespace mdh {

Rational parse_rational(const std::string& text) {
  Rational r;
  if (r.set_str(text, 10) != 0) throw std::invalid_argument("malformed rational: " + text);
  if (r.get_den() == 0) throw DomainError("zero denominator: " + text);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

GaussianRational GaussianRational::i_pow(long k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {Rational(1), Rational(0)};
    case 1: return {Rational(0), Rational(1)};
    case 2: return {Rational(-1), Rational(0)};
    default: return {Rational(0), Rational(-1)};
  }
}

GaussianRational GaussianRational::inv() const {
  if (is_zero()) throw DomainError("inversion of zero in Q(i)");
  Rational norm = re_ * re_ + im_ * im_;
  return {Rational(re_ / norm), Rational(-im_ / norm)};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::string GaussianRational::str() const {
  if (sgn(im_) == 0) return re_.get_str();
  if (sgn(re_) == 0) return im_.get_str() + "i";
  std::string sign = sgn(im_) > 0 ? "+" : "";
  return re_.get_str() + sign + im_.get_str() + "i";
}

GaussianRational gr_arith(const GaussianRational& a, const GaussianRational& b, GrOp op) {
  switch (op) {
    case GrOp::add: return a + b;
    case GrOp::mul: return a * b;
    case GrOp::neg: return -a;
    case GrOp::inv: return a.inv();
  }
  return a;
}

CoeffSeries CoeffSeries::constant(const GaussianRational& c, SeriesBounds bounds) {
  return term(c, 0, 0, bounds);
}

CoeffSeries CoeffSeries::term(const GaussianRational& c, int eps, int hbar, SeriesBounds bounds) {
  CoeffSeries s(bounds);
  s.add_term(eps, hbar, c);
  return s;
}

GaussianRational CoeffSeries::coeff(int e, int h) const {
  if (!bounds_.admits(e, h)) {
    std::ostringstream msg;
    msg << "coefficient eps^" << e << " hbar^" << h << " lies outside the window (eps<=" << bounds_.eps_order
        << ", hbar<=" << bounds_.hbar_order << ")";
    throw WindowError(msg.str());
  }
  auto it = terms_.find({e, h});
  return it == terms_.end() ? GaussianRational() : it->second;
}

bool CoeffSeries::add_term(int e, int h, const GaussianRational& c) {
  if (!bounds_.admits(e, h)) return false;
  if (c.is_zero()) return true;
  auto [it, inserted] = terms_.try_emplace({e, h}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
  return true;
}

CoeffSeries CoeffSeries::with_bounds(SeriesBounds b) const {
  CoeffSeries out(b);
  for (const auto& [idx, c] : terms_) out.add_term(idx.eps, idx.hbar, c);
  return out;
}

CoeffSeries CoeffSeries::shifted(int e, int h) const {
  CoeffSeries out(bounds_);
  for (const auto& [idx, c] : terms_) out.add_term(idx.eps + e, idx.hbar + h, c);
  return out;
}

CoeffSeries CoeffSeries::slice(int e, int h) const {
  CoeffSeries out(bounds_);
  auto it = terms_.find({e, h});
  if (it != terms_.end()) out.terms_.insert(*it);
  return out;
}

CoeffSeries CoeffSeries::operator-() const {
  CoeffSeries out(*this);
  for (auto& [idx, c] : out.terms_) c = -c;
  return out;
}

CoeffSeries& CoeffSeries::operator+=(const CoeffSeries& o) {
  SeriesBounds b = SeriesBounds::meet(bounds_, o.bounds_);
  if (b != bounds_) *this = with_bounds(b);
  for (const auto& [idx, c] : o.terms_) add_term(idx.eps, idx.hbar, c);
  return *this;
}

CoeffSeries& CoeffSeries::operator-=(const CoeffSeries& o) {
  SeriesBounds b = SeriesBounds::meet(bounds_, o.bounds_);
  if (b != bounds_) *this = with_bounds(b);
  for (const auto& [idx, c] : o.terms_) add_term(idx.eps, idx.hbar, -c);
  return *this;
}

CoeffSeries& CoeffSeries::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [idx, v] : terms_) v *= c;
  return *this;
}

CoeffSeries operator*(const CoeffSeries& a, const CoeffSeries& b) {
  CoeffSeries out(SeriesBounds::meet(a.bounds(), b.bounds()));
  for (const auto& [ia, ca] : a.terms())
    for (const auto& [ib, cb] : b.terms()) out.add_term(ia.eps + ib.eps, ia.hbar + ib.hbar, ca * cb);
  return out;
}

std::string CoeffSeries::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [idx, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    if (idx.eps) os << "*eps^" << idx.eps;
    if (idx.hbar) os << "*hbar^" << idx.hbar;
  }
  return os.str();
}

CoeffSeries cs_arith(const CoeffSeries& a, const CoeffSeries& b, CsOp op) {
  return op == CsOp::add ? a + b : a * b;
}

}  // namespace mdh
