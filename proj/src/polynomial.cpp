#include "mdh/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace mdh {

namespace {

// Univariate basis-change tables: row n gives the expansion of the degree-n basis element.
const std::vector<std::vector<Rational>>& stirling_table(bool first_kind, int n) {
  static std::vector<std::vector<Rational>> first{{Rational(1)}};
  static std::vector<std::vector<Rational>> second{{Rational(1)}};
  auto& t = first_kind ? first : second;
  while (static_cast<int>(t.size()) <= n) {
    int r = static_cast<int>(t.size());
    std::vector<Rational> row(r + 1, Rational(0));
    const auto& prev = t[r - 1];
    for (int k = 1; k <= r; ++k) {
      Rational carry = k - 1 < static_cast<int>(prev.size()) ? prev[k - 1] : Rational(0);
      Rational same = k < static_cast<int>(prev.size()) ? prev[k] : Rational(0);
      // s(r,k) = s(r-1,k-1) - (r-1) s(r-1,k);  S(r,k) = S(r-1,k-1) + k S(r-1,k)
      row[k] = first_kind ? Rational(carry - (r - 1) * same) : Rational(carry + k * same);
    }
    t.push_back(std::move(row));
  }
  return t;
}

Rational power(const Rational& x, int k) {
  Rational r(1);
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

}  // namespace

Rational falling_factorial(const Rational& m, int s) {
  Rational r(1);
  for (int j = 0; j < s; ++j) r *= (m - j);
  return r;
}

Rational factorial(int n) {
  Rational r(1);
  for (int j = 2; j <= n; ++j) r *= j;
  return r;
}

Rational stirling_first(int n, int k) {
  if (n < 0 || k < 0 || k > n) return Rational(0);
  return stirling_table(true, n)[n][k];
}

Rational stirling_second(int n, int k) {
  if (n < 0 || k < 0 || k > n) return Rational(0);
  return stirling_table(false, n)[n][k];
}

Polynomial Polynomial::constant(int nvars, const Rational& c, Basis basis) {
  Polynomial p(nvars, basis);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(int nvars, int i) {
  Polynomial p(nvars, Basis::monomial);
  Exponents e(nvars, 0);
  e.at(i) = 1;
  p.add_term(e, Rational(1));
  return p;
}

Rational Polynomial::coeff(const Exponents& s) const {
  auto it = coeffs_.find(s);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Exponents& s, const Rational& c) {
  if (static_cast<int>(s.size()) != nvars_) throw std::invalid_argument("exponent arity mismatch");
  if (sgn(c) == 0) return;
  Rational v = c;
  v.canonicalize();
  auto [it, inserted] = coeffs_.try_emplace(s, v);
  if (!inserted) {
    it->second += v;
    if (sgn(it->second) == 0) coeffs_.erase(it);
  }
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [s, c] : coeffs_) d = std::max(d, std::accumulate(s.begin(), s.end(), 0));
  return d;
}

bool Polynomial::is_homogeneous(int d) const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [d](const auto& t) { return std::accumulate(t.first.begin(), t.first.end(), 0) == d; });
}

bool Polynomial::is_symmetric() const {
  for (const auto& [s, c] : coeffs_) {
    Exponents sorted = s;
    std::sort(sorted.begin(), sorted.end());
    do {
      if (coeff(sorted) != c) return false;
    } while (std::next_permutation(sorted.begin(), sorted.end()));
  }
  return true;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  if (static_cast<int>(point.size()) != nvars_) throw std::invalid_argument("evaluation arity mismatch");
  Rational total(0);
  for (const auto& [s, c] : coeffs_) {
    Rational term = c;
    for (int i = 0; i < nvars_; ++i)
      term *= basis_ == Basis::monomial ? power(point[i], s[i]) : falling_factorial(point[i], s[i]);
    total += term;
  }
  return total;
}

Rational Polynomial::evaluate(std::span<const long> point) const {
  std::vector<Rational> q(point.begin(), point.end());
  return evaluate(std::span<const Rational>(q));
}

Polynomial Polynomial::to_basis(Basis b) const {
  if (b == basis_) return *this;
  const bool to_falling = b == Basis::falling;
  Polynomial out(nvars_, b);
  for (const auto& [s, c] : coeffs_) {
    // Expand each factor separately and take the tensor product.
    std::vector<std::vector<std::pair<int, Rational>>> factors(nvars_);
    for (int i = 0; i < nvars_; ++i)
      for (int k = 0; k <= s[i]; ++k) {
        Rational w = to_falling ? stirling_second(s[i], k) : stirling_first(s[i], k);
        if (sgn(w) != 0) factors[i].emplace_back(k, w);
      }
    Exponents e(nvars_, 0);
    auto rec = [&](auto&& self, int i, Rational acc) -> void {
      if (i == nvars_) {
        out.add_term(e, acc);
        return;
      }
      for (const auto& [k, w] : factors[i]) {
        e[i] = k;
        self(self, i + 1, Rational(acc * w));
      }
    };
    rec(rec, 0, c);
  }
  return out;
}

Polynomial Polynomial::compose(const std::vector<Polynomial>& images) const {
  if (static_cast<int>(images.size()) != nvars_) throw std::invalid_argument("compose arity mismatch");
  int target = images.empty() ? 0 : images.front().nvars();
  Polynomial mono = to_monomial();
  std::vector<Polynomial> img;
  for (const auto& p : images) img.push_back(p.to_monomial());
  Polynomial out(target, Basis::monomial);
  for (const auto& [s, c] : mono.coeffs_) {
    Polynomial term = constant(target, c);
    for (int i = 0; i < nvars_; ++i)
      if (s[i] > 0) term = term * img[i].pow(s[i]);
    out += term;
  }
  return out.to_basis(basis_);
}

Polynomial Polynomial::homogeneous_part(int d) const {
  Polynomial out(nvars_, basis_);
  for (const auto& [s, c] : coeffs_)
    if (std::accumulate(s.begin(), s.end(), 0) == d) out.coeffs_.emplace(s, c);
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out(*this);
  for (auto& [s, c] : out.coeffs_) c = -c;
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.nvars_ != nvars_) throw std::invalid_argument("polynomial arity mismatch");
  Polynomial rhs = o.to_basis(basis_);
  for (const auto& [s, c] : rhs.coeffs_) add_term(s, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) { return *this += -o; }

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [s, v] : coeffs_) v *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.nvars_ != b.nvars_) throw std::invalid_argument("polynomial arity mismatch");
  Polynomial x = a.to_monomial();
  Polynomial y = b.to_monomial();
  Polynomial out(a.nvars_, Basis::monomial);
  for (const auto& [s, c] : x.coeffs_)
    for (const auto& [t, d] : y.coeffs_) {
      Exponents e(s);
      for (int i = 0; i < a.nvars_; ++i) e[i] += t[i];
      out.add_term(e, c * d);
    }
  return out.to_basis(a.basis_);
}

Polynomial Polynomial::pow(int k) const {
  Polynomial out = constant(nvars_, Rational(1), basis_);
  for (int i = 0; i < k; ++i) out = out * *this;
  return out;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.nvars_ != b.nvars_) return false;
  return a.coeffs_ == b.to_basis(a.basis_).coeffs_;
}

std::string Polynomial::str(const std::string& var) const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [s, c] : coeffs_) {
    if (!first) os << " + ";
    first = false;
    os << c.get_str();
    for (int i = 0; i < nvars_; ++i) {
      if (s[i] == 0) continue;
      os << "*" << var << i + 1 << (basis_ == Basis::falling ? "^_" : "^") << s[i];
    }
  }
  return os.str();
}

Polynomial stirling_convert(const Polynomial& p, StirlingDirection dir) {
  if (dir == StirlingDirection::monomial_to_factorial) return p.to_monomial().to_falling();
  return p.to_falling().to_monomial();
}

}  // namespace mdh
