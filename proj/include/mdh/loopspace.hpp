#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "mdh/coeffring.hpp"

namespace mdh {

/// Rank-N phase space with metric eta and unit vector.
struct PhaseFrame {
  int dim = 1;
  std::vector<std::vector<Rational>> eta{{Rational(1)}};
  std::vector<std::vector<Rational>> eta_inv{{Rational(1)}};
  std::vector<Rational> unit{Rational(1)};

  /// The frame of the trivial CohFT: N = 1, eta = [1], unit = [1].
  static PhaseFrame trivial() { return {}; }
  /// Validates symmetry and nondegeneracy and computes the inverse exactly.
  static PhaseFrame make(std::vector<std::vector<Rational>> eta, std::vector<Rational> unit);

  friend bool operator==(const PhaseFrame&, const PhaseFrame&) = default;
};

/// The variable q_m^alpha (alpha is 1-based).
struct QVar {
  long m = 0;
  int alpha = 1;
  auto operator<=>(const QVar&) const = default;
};

/// q_{m_1}^{a_1} ... q_{m_n}^{a_n} (ix)^xpow with the q's kept sorted.
struct QMonomial {
  std::vector<QVar> qvars;
  long xpow = 0;

  static QMonomial make(std::vector<QVar> vars, long xpow);
  int degree() const { return static_cast<int>(qvars.size()); }
  long sum_m() const;
  QMonomial operator*(const QMonomial& o) const;
  auto operator<=>(const QMonomial&) const = default;
  std::string str() const;
};

/// Finite window in which q-side series are kept.
struct TruncationSpec {
  long m_min = -6;
  long m_max = 6;
  int n_max = 6;
  long xpow_min = -64;
  long xpow_max = 64;
  int eps_order = 2;
  int hbar_order = 2;

  SeriesBounds bounds() const { return {eps_order, hbar_order}; }
  bool admits_var(const QVar& v) const { return v.m >= m_min && v.m <= m_max; }
  bool admits(const QMonomial& mon) const;
  void validate() const;
  /// Window with every bound intersected.
  static TruncationSpec meet(const TruncationSpec& a, const TruncationSpec& b);
  /// m-window and n_max doubled (xpow range widened to match).
  TruncationSpec doubled() const;
  friend bool operator==(const TruncationSpec&, const TruncationSpec&) = default;
};

/// Truncated element of B (or of its integrated image when `integrated` is set).
class QElement {
 public:
  using Terms = std::map<QMonomial, CoeffSeries>;

  QElement() = default;
  QElement(PhaseFrame frame, TruncationSpec trunc, bool integrated = false);

  const PhaseFrame& frame() const { return frame_; }
  const TruncationSpec& trunc() const { return trunc_; }
  const Terms& terms() const { return terms_; }
  bool integrated() const { return integrated_; }
  /// Number of monomials discarded because they left the window.
  std::size_t drops() const { return drops_; }
  bool is_zero() const { return terms_.empty(); }

  /// Adds c·mon; out-of-window monomials are counted as drops.
  void add_term(const QMonomial& mon, const CoeffSeries& c);
  void add_drops(std::size_t k) { drops_ += k; }
  CoeffSeries coeff(const QMonomial& mon) const;

  /// Same terms re-truncated to another window.
  QElement with_trunc(const TruncationSpec& t) const;
  /// The part with the given eps/hbar powers.
  QElement slice(int e, int h) const;

  QElement operator-() const;
  QElement& operator+=(const QElement& o);
  QElement& operator-=(const QElement& o);
  QElement& operator*=(const CoeffSeries& c);
  QElement& operator*=(const GaussianRational& c);
  friend QElement operator+(QElement a, const QElement& b) { return a += b; }
  friend QElement operator-(QElement a, const QElement& b) { return a -= b; }
  friend QElement operator*(QElement a, const GaussianRational& c) { return a *= c; }
  /// Equality of terms only (windows and drop counters are ignored).
  friend bool operator==(const QElement& a, const QElement& b) { return a.terms_ == b.terms_; }

  std::string str() const;

 private:
  PhaseFrame frame_;
  TruncationSpec trunc_;
  Terms terms_;
  bool integrated_ = false;
  std::size_t drops_ = 0;
};

/// Throws FrameMismatch unless both elements share frame and integration flag.
void require_compatible(const QElement& a, const QElement& b);

QElement q_mul(const QElement& a, const QElement& b);

/// Coefficient of (ix)^{-1} with the q-free part removed, as an element of B̄.
QElement integrate_dx(const QElement& f);

/// u-side degree of a term: sum of m minus xpow minus eps power minus twice the hbar power.
long md_degree(const QMonomial& mon, int e, int h);

QElement extract_degree(const QElement& f, long d);

/// Values for q-variables; absent variables are zero.
using Assignment = std::map<QVar, CoeffSeries>;

struct EvaluationResult {
  std::map<long, CoeffSeries> by_xpow;
  CoeffSeries at_x_zero() const;
};

/// Substitutes the q-variables. With at_x_zero only the (ix)^0 part is evaluated.
/// Throws CoverageError when the assignment touches a variable outside the window.
EvaluationResult evaluate(const QElement& f, const Assignment& assign, bool at_x_zero = true);

}  // namespace mdh
