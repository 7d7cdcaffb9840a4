#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "mdh/coeffring.hpp"

namespace mdh {

enum class Basis { monomial, falling };

/// Exponent vector (s_1, ..., s_n).
using Exponents = std::vector<int>;

/// Falling factorial m(m-1)...(m-s+1).
Rational falling_factorial(const Rational& m, int s);
Rational factorial(int n);

/// Signed Stirling numbers of the first kind s(n, k).
Rational stirling_first(int n, int k);
/// Stirling numbers of the second kind S(n, k).
Rational stirling_second(int n, int k);

/// Polynomial in n integer variables with rational coefficients, stored either in
/// the monomial basis m^s or in the falling-factorial basis m^{(s)}.
class Polynomial {
 public:
  using Coeffs = std::map<Exponents, Rational>;

  Polynomial() = default;
  Polynomial(int nvars, Basis basis) : nvars_(nvars), basis_(basis) {}

  static Polynomial constant(int nvars, const Rational& c, Basis basis = Basis::monomial);
  /// The variable m_i (monomial basis).
  static Polynomial variable(int nvars, int i);

  int nvars() const { return nvars_; }
  Basis basis() const { return basis_; }
  const Coeffs& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  Rational coeff(const Exponents& s) const;
  void add_term(const Exponents& s, const Rational& c);

  /// Total degree in the stored basis (-1 for the zero polynomial).
  int degree() const;
  /// True when every stored term has total degree d in the stored basis.
  bool is_homogeneous(int d) const;
  bool is_symmetric() const;

  Rational evaluate(std::span<const Rational> point) const;
  Rational evaluate(std::span<const long> point) const;

  Polynomial to_basis(Basis b) const;
  Polynomial to_monomial() const { return to_basis(Basis::monomial); }
  Polynomial to_falling() const { return to_basis(Basis::falling); }

  /// Substitutes variable i by images[i] (all in the same target ring, any basis).
  Polynomial compose(const std::vector<Polynomial>& images) const;
  /// Keeps exactly the terms of total degree d in the stored basis.
  Polynomial homogeneous_part(int d) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  /// Product, computed in the monomial basis and returned in a's basis.
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial pow(int k) const;

  /// Equality of the underlying functions (basis-independent).
  friend bool operator==(const Polynomial& a, const Polynomial& b);

  std::string str(const std::string& var = "m") const;

 private:
  int nvars_ = 0;
  Basis basis_ = Basis::monomial;
  Coeffs coeffs_;
};

using FactorialPolynomial = Polynomial;

enum class StirlingDirection { monomial_to_factorial, factorial_to_monomial };

/// Exact change between the monomial and falling-factorial bases.
Polynomial stirling_convert(const Polynomial& p, StirlingDirection dir);

}  // namespace mdh
