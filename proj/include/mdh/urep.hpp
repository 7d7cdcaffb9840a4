#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "mdh/coeffring.hpp"
#include "mdh/loopspace.hpp"
#include "mdh/polynomial.hpp"

namespace mdh {

/// The jet variable u_k^alpha (alpha is 1-based).
struct UVar {
  int k = 0;
  int alpha = 1;
  auto operator<=>(const UVar&) const = default;
};

/// u_{k_1}^{a_1} ... u_{k_n}^{a_n} x^{-xneg}, factors kept sorted.
struct UMonomial {
  std::vector<UVar> uvars;
  int xneg = 0;

  static UMonomial make(std::vector<UVar> vars, int xneg = 0);
  int degree() const { return static_cast<int>(uvars.size()); }
  int deriv_sum() const;
  bool nonsingular() const { return xneg == 0; }
  UMonomial operator*(const UMonomial& o) const;
  auto operator<=>(const UMonomial&) const = default;
  std::string str() const;
};

/// u-side degree: derivative orders plus pole order minus eps power minus twice the hbar power.
long md_degree(const UMonomial& mon, int e, int h);

/// Singular differential polynomial with truncated eps/hbar series coefficients.
class UPolynomial {
 public:
  using Terms = std::map<UMonomial, CoeffSeries>;

  UPolynomial() = default;
  explicit UPolynomial(SeriesBounds bounds, PhaseFrame frame = PhaseFrame::trivial())
      : frame_(std::move(frame)), bounds_(bounds) {}

  /// c·eps^e·hbar^h·mon.
  static UPolynomial monomial(const UMonomial& mon, const GaussianRational& c, SeriesBounds bounds, int e = 0,
                              int h = 0);

  const PhaseFrame& frame() const { return frame_; }
  const SeriesBounds& bounds() const { return bounds_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool nonsingular() const;

  void add_term(const UMonomial& mon, const CoeffSeries& c);
  void add_term(const UMonomial& mon, const GaussianRational& c, int e = 0, int h = 0);
  CoeffSeries coeff(const UMonomial& mon) const;

  UPolynomial with_bounds(SeriesBounds b) const;
  UPolynomial slice(int e, int h) const;
  /// Multiplies by eps^e hbar^h.
  UPolynomial shifted(int e, int h) const;
  /// Terms whose (eps, hbar) powers satisfy the predicate.
  template <class Pred>
  UPolynomial filter(Pred pred) const {
    UPolynomial out(bounds_, frame_);
    for (const auto& [mon, c] : terms_) {
      CoeffSeries part(c.bounds());
      for (const auto& [idx, v] : c.terms())
        if (pred(mon, idx.eps, idx.hbar)) part.add_term(idx.eps, idx.hbar, v);
      out.add_term(mon, part);
    }
    return out;
  }
  /// Keeps exactly the terms of u-side degree d.
  UPolynomial extract_degree(long d) const;

  UPolynomial operator-() const;
  UPolynomial& operator+=(const UPolynomial& o);
  UPolynomial& operator-=(const UPolynomial& o);
  UPolynomial& operator*=(const GaussianRational& c);
  UPolynomial& operator*=(const CoeffSeries& c);
  friend UPolynomial operator+(UPolynomial a, const UPolynomial& b) { return a += b; }
  friend UPolynomial operator-(UPolynomial a, const UPolynomial& b) { return a -= b; }
  friend UPolynomial operator*(UPolynomial a, const GaussianRational& c) { return a *= c; }
  friend UPolynomial operator*(const UPolynomial& a, const UPolynomial& b);
  friend bool operator==(const UPolynomial& a, const UPolynomial& b) { return a.terms_ == b.terms_; }

  std::string str() const;

 private:
  PhaseFrame frame_;
  SeriesBounds bounds_{};
  Terms terms_;
};

/// Parses sums of products such as "u0*u2/24 - 1/48*eps^2*hbar*u1^2*x^-1".
/// Factors: rationals, i, eps[^k], hbar[^k], u[k][^p] (optionally u{k,alpha}), x^-j.
UPolynomial parse_upoly(const std::string& text, SeriesBounds bounds, PhaseFrame frame = PhaseFrame::trivial());

/// Sum over the distinct arrangements of the multiset M onto the factor slots of
/// prod_i m_i^{(k_i)}; zero when the components do not match.
Rational arrangement_sum(const std::vector<QVar>& M, const std::vector<UVar>& slots);

/// The bridge u_s = sum_m m^{(s)} q_m i^m x^{m-s}, x^{-j} = i^j (ix)^{-j}, truncated to the window.
QElement phi_to_q(const UPolynomial& p, const TruncationSpec& trunc);

/// Exact preimage of a q-element under phi_to_q, fitted on the window lattice.
/// Throws NotInImageError or WindowError (window too small to decide).
UPolynomial recognize_u(const QElement& f);

}  // namespace mdh
