#pragma once

#include <gmpxx.h>

#include <compare>
#include <map>
#include <ostream>
#include <string>
#include <utility>

namespace mdh {

using Rational = mpq_class;

/// Parses "p/q" or "p" into a canonical rational.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& r);

/// Element re + im*i of the field Q(i), held in canonical form.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational re) : re_(std::move(re)) { re_.canonicalize(); }  // NOLINT
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static GaussianRational i() { return {Rational(0), Rational(1)}; }
  /// i^k for any integer k.
  static GaussianRational i_pow(long k);

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussianRational conj() const { return {re_, -im_}; }
  /// Multiplicative inverse; throws DomainError on zero.
  GaussianRational inv() const;

  GaussianRational operator-() const { return {-re_, -im_}; }
  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o) { return *this *= o.inv(); }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  std::string str() const;
  friend std::ostream& operator<<(std::ostream& os, const GaussianRational& a) { return os << a.str(); }

 private:
  Rational re_{0};
  Rational im_{0};
};

enum class GrOp { add, mul, neg, inv };

/// Exact field arithmetic in Q(i); `b` is ignored for unary ops.
GaussianRational gr_arith(const GaussianRational& a, const GaussianRational& b, GrOp op);

/// Exponent pair (power of epsilon, power of hbar).
struct SeriesIndex {
  int eps = 0;
  int hbar = 0;
  auto operator<=>(const SeriesIndex&) const = default;
};

/// Truncation bounds of a bigraded series; both inclusive.
struct SeriesBounds {
  int eps_order = 0;
  int hbar_order = 0;
  auto operator<=>(const SeriesBounds&) const = default;
  bool admits(int e, int h) const { return e >= 0 && h >= 0 && e <= eps_order && h <= hbar_order; }
  static SeriesBounds meet(const SeriesBounds& a, const SeriesBounds& b) {
    return {std::min(a.eps_order, b.eps_order), std::min(a.hbar_order, b.hbar_order)};
  }
};

/// Truncated polynomial in epsilon and hbar with Gaussian-rational coefficients.
/// Zero coefficients are never stored and no term exceeds the bounds.
class CoeffSeries {
 public:
  using Terms = std::map<SeriesIndex, GaussianRational>;

  CoeffSeries() = default;
  explicit CoeffSeries(SeriesBounds bounds) : bounds_(bounds) {}

  static CoeffSeries constant(const GaussianRational& c, SeriesBounds bounds);
  static CoeffSeries term(const GaussianRational& c, int eps, int hbar, SeriesBounds bounds);

  const SeriesBounds& bounds() const { return bounds_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Coefficient of eps^e hbar^h; WindowError when (e,h) lies beyond the bounds.
  GaussianRational coeff(int e, int h) const;

  /// Adds c to the coefficient of eps^e hbar^h; silently ignored beyond bounds.
  /// Returns false when the term was dropped.
  bool add_term(int e, int h, const GaussianRational& c);

  CoeffSeries with_bounds(SeriesBounds b) const;
  /// Multiplies by eps^e hbar^h, dropping what leaves the window.
  CoeffSeries shifted(int e, int h) const;
  /// Keeps only the eps^e hbar^h term.
  CoeffSeries slice(int e, int h) const;

  CoeffSeries operator-() const;
  CoeffSeries& operator+=(const CoeffSeries& o);
  CoeffSeries& operator-=(const CoeffSeries& o);
  CoeffSeries& operator*=(const GaussianRational& c);
  friend CoeffSeries operator+(CoeffSeries a, const CoeffSeries& b) { return a += b; }
  friend CoeffSeries operator-(CoeffSeries a, const CoeffSeries& b) { return a -= b; }
  friend CoeffSeries operator*(CoeffSeries a, const GaussianRational& c) { return a *= c; }
  friend CoeffSeries operator*(const GaussianRational& c, CoeffSeries a) { return a *= c; }
  friend CoeffSeries operator*(const CoeffSeries& a, const CoeffSeries& b);
  /// Structural equality of the stored terms (bounds are not compared).
  friend bool operator==(const CoeffSeries& a, const CoeffSeries& b) { return a.terms_ == b.terms_; }

  std::string str() const;
  friend std::ostream& operator<<(std::ostream& os, const CoeffSeries& a) { return os << a.str(); }

 private:
  SeriesBounds bounds_{};
  Terms terms_;
};

enum class CsOp { add, mul };

/// Truncated ring arithmetic; the result uses the componentwise minimum of the bounds.
CoeffSeries cs_arith(const CoeffSeries& a, const CoeffSeries& b, CsOp op);

inline GaussianRational cs_coeff(const CoeffSeries& a, int e, int h) { return a.coeff(e, h); }

}  // namespace mdh
