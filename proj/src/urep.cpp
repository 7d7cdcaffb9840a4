#include "mdh/urep.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "mdh/errors.hpp"
#include "mdh/linsolve.hpp"

namespace mdh {

UMonomial UMonomial::make(std::vector<UVar> vars, int xneg) {
  if (xneg < 0) throw std::invalid_argument("negative pole order");
  std::sort(vars.begin(), vars.end());
  return UMonomial{std::move(vars), xneg};
}

int UMonomial::deriv_sum() const {
  return std::accumulate(uvars.begin(), uvars.end(), 0, [](int s, const UVar& v) { return s + v.k; });
}

UMonomial UMonomial::operator*(const UMonomial& o) const {
  UMonomial out;
  std::merge(uvars.begin(), uvars.end(), o.uvars.begin(), o.uvars.end(), std::back_inserter(out.uvars));
  out.xneg = xneg + o.xneg;
  return out;
}

std::string UMonomial::str() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < uvars.size();) {
    std::size_t j = i;
    while (j < uvars.size() && uvars[j] == uvars[i]) ++j;
    if (!first) os << "*";
    first = false;
    os << "u" << uvars[i].k;
    if (uvars[i].alpha != 1) os << "{" << uvars[i].k << "," << uvars[i].alpha << "}";
    if (j - i > 1) os << "^" << j - i;
    i = j;
  }
  if (xneg > 0) {
    if (!first) os << "*";
    first = false;
    os << "x^-" << xneg;
  }
  if (first) os << "1";
  return os.str();
}

long md_degree(const UMonomial& mon, int e, int h) { return mon.deriv_sum() + mon.xneg - e - 2L * h; }

UPolynomial UPolynomial::monomial(const UMonomial& mon, const GaussianRational& c, SeriesBounds bounds, int e,
                                  int h) {
  UPolynomial p(bounds);
  p.add_term(mon, c, e, h);
  return p;
}

bool UPolynomial::nonsingular() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.nonsingular(); });
}

void UPolynomial::add_term(const UMonomial& mon, const CoeffSeries& c) {
  if (c.is_zero()) return;
  CoeffSeries v = c.with_bounds(SeriesBounds::meet(c.bounds(), bounds_));
  if (v.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(mon, v);
  if (!inserted) {
    it->second += v;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void UPolynomial::add_term(const UMonomial& mon, const GaussianRational& c, int e, int h) {
  add_term(mon, CoeffSeries::term(c, e, h, bounds_));
}

CoeffSeries UPolynomial::coeff(const UMonomial& mon) const {
  auto it = terms_.find(mon);
  return it == terms_.end() ? CoeffSeries(bounds_) : it->second;
}

UPolynomial UPolynomial::with_bounds(SeriesBounds b) const {
  UPolynomial out(b, frame_);
  for (const auto& [mon, c] : terms_) out.add_term(mon, c.with_bounds(b));
  return out;
}

UPolynomial UPolynomial::slice(int e, int h) const {
  UPolynomial out(bounds_, frame_);
  for (const auto& [mon, c] : terms_) out.add_term(mon, c.slice(e, h));
  return out;
}

UPolynomial UPolynomial::shifted(int e, int h) const {
  UPolynomial out(bounds_, frame_);
  for (const auto& [mon, c] : terms_) out.add_term(mon, c.shifted(e, h));
  return out;
}

UPolynomial UPolynomial::extract_degree(long d) const {
  return filter([d](const UMonomial& mon, int e, int h) { return md_degree(mon, e, h) == d; });
}

UPolynomial UPolynomial::operator-() const {
  UPolynomial out(*this);
  for (auto& [mon, c] : out.terms_) c = -c;
  return out;
}

UPolynomial& UPolynomial::operator+=(const UPolynomial& o) {
  if (!(frame_ == o.frame_)) throw FrameMismatch("u-polynomials live on different phase frames");
  SeriesBounds b = SeriesBounds::meet(bounds_, o.bounds_);
  if (!(b == bounds_)) *this = with_bounds(b);
  for (const auto& [mon, c] : o.terms_) add_term(mon, c);
  return *this;
}

UPolynomial& UPolynomial::operator-=(const UPolynomial& o) { return *this += -o; }

UPolynomial& UPolynomial::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [mon, v] : terms_) v *= c;
  return *this;
}

UPolynomial& UPolynomial::operator*=(const CoeffSeries& c) {
  Terms old;
  old.swap(terms_);
  for (const auto& [mon, v] : old) add_term(mon, v * c);
  return *this;
}

UPolynomial operator*(const UPolynomial& a, const UPolynomial& b) {
  if (!(a.frame_ == b.frame_)) throw FrameMismatch("u-polynomials live on different phase frames");
  UPolynomial out(SeriesBounds::meet(a.bounds_, b.bounds_), a.frame_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  return out;
}

std::string UPolynomial::str() const {
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

namespace {

[[noreturn]] void parse_fail(const std::string& what, const std::string& text) {
  throw std::invalid_argument("cannot parse '" + text + "': " + what);
}

long parse_int(const std::string& s, const std::string& text) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char ch) { return std::isdigit(ch); }))
    parse_fail("expected an integer, got '" + s + "'", text);
  return std::stol(s);
}

struct ParsedFactor {
  GaussianRational c{1};
  int e = 0;
  int h = 0;
  std::vector<UVar> vars;
  int xneg = 0;
};

void parse_factor(const std::string& f, ParsedFactor& acc, const std::string& text) {
  std::string base = f;
  long power = 1;
  auto caret = f.find('^');
  if (caret != std::string::npos) {
    base = f.substr(0, caret);
    std::string p = f.substr(caret + 1);
    if (base == "x") {
      if (p.empty() || p[0] != '-') parse_fail("only negative powers of x are allowed", text);
      acc.xneg += static_cast<int>(parse_int(p.substr(1), text));
      return;
    }
    power = parse_int(p, text);
  }
  if (base.empty()) parse_fail("empty factor", text);
  if (std::isdigit(static_cast<unsigned char>(base[0]))) {
    Rational r(parse_int(base, text));
    GaussianRational v(1);
    for (long k = 0; k < power; ++k) v *= GaussianRational(r);
    acc.c *= v;
  } else if (base == "i") {
    acc.c *= GaussianRational::i_pow(power);
  } else if (base == "eps") {
    acc.e += static_cast<int>(power);
  } else if (base == "hbar") {
    acc.h += static_cast<int>(power);
  } else if (base[0] == 'u') {
    UVar v;
    std::string rest = base.substr(1);
    if (!rest.empty() && rest[0] == '{') {
      auto comma = rest.find(',');
      auto close = rest.find('}');
      if (comma == std::string::npos || close == std::string::npos) parse_fail("bad u{k,alpha}", text);
      v.k = static_cast<int>(parse_int(rest.substr(1, comma - 1), text));
      v.alpha = static_cast<int>(parse_int(rest.substr(comma + 1, close - comma - 1), text));
    } else if (!rest.empty()) {
      v.k = static_cast<int>(parse_int(rest, text));
    }
    for (long k = 0; k < power; ++k) acc.vars.push_back(v);
  } else if (base == "x") {
    parse_fail("only negative powers of x are allowed", text);
  } else {
    parse_fail("unknown factor '" + base + "'", text);
  }
}

void parse_divisor(const std::string& d, ParsedFactor& acc, const std::string& text) {
  if (d == "x") {
    acc.xneg += 1;
  } else if (d.rfind("x^", 0) == 0) {
    acc.xneg += static_cast<int>(parse_int(d.substr(2), text));
  } else {
    long v = parse_int(d, text);
    if (v == 0) parse_fail("division by zero", text);
    acc.c *= GaussianRational(Rational(1) / v);
  }
}

}  // namespace

UPolynomial parse_upoly(const std::string& input, SeriesBounds bounds, PhaseFrame frame) {
  std::string text;
  for (char ch : input)
    if (!std::isspace(static_cast<unsigned char>(ch))) text.push_back(ch);
  UPolynomial out(bounds, std::move(frame));
  if (text.empty() || text == "0") return out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    int sign = 1;
    while (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      if (text[pos] == '-') sign = -sign;
      ++pos;
    }
    std::size_t end = pos;
    while (end < text.size() && !((text[end] == '+' || text[end] == '-') && text[end - 1] != '^')) ++end;
    std::string term = text.substr(pos, end - pos);
    if (term.empty()) parse_fail("empty term", input);
    ParsedFactor acc;
    std::stringstream ss(term);
    std::string factor;
    while (std::getline(ss, factor, '*')) {
      std::stringstream fs(factor);
      std::string part;
      bool head = true;
      while (std::getline(fs, part, '/')) {
        if (head) {
          parse_factor(part, acc, input);
          head = false;
        } else {
          parse_divisor(part, acc, input);
        }
      }
    }
    if (sign < 0) acc.c = -acc.c;
    out.add_term(UMonomial::make(acc.vars, acc.xneg), acc.c, acc.e, acc.h);
    pos = end;
  }
  return out;
}

Rational arrangement_sum(const std::vector<QVar>& M, const std::vector<UVar>& slots) {
  const std::size_t n = M.size();
  if (slots.size() != n) throw std::invalid_argument("arrangement size mismatch");
  if (n == 0) return Rational(1);
  // Permanent of a_{ij} = m_i^{(k_j)}, with identical slots grouped: a DP over rows whose state
  // is the number of slots of each type still free.
  std::vector<UVar> types;
  std::vector<int> count;
  for (const auto& v : slots) {
    auto it = std::find(types.begin(), types.end(), v);
    if (it == types.end()) {
      types.push_back(v);
      count.push_back(1);
    } else {
      ++count[it - types.begin()];
    }
  }
  const std::size_t T = types.size();
  std::vector<std::vector<mpz_class>> a(n, std::vector<mpz_class>(T));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < T; ++t) {
      if (M[i].alpha != types[t].alpha) continue;
      mpz_class v = 1;
      for (int r = 0; r < types[t].k; ++r) v *= (M[i].m - r);
      a[i][t] = v;
    }
  std::vector<std::size_t> stride(T + 1, 1);
  for (std::size_t t = 0; t < T; ++t) stride[t + 1] = stride[t] * (count[t] + 1);
  // state index encodes used[t]; rows are placed in order, so the row index is sum used.
  std::vector<mpz_class> dp(stride[T]);
  dp[0] = 1;
  for (std::size_t state = 0; state < stride[T]; ++state) {
    if (dp[state] == 0) continue;
    std::size_t row = 0;
    for (std::size_t t = 0; t < T; ++t) row += (state / stride[t]) % (count[t] + 1);
    if (row == n) continue;
    for (std::size_t t = 0; t < T; ++t) {
      std::size_t used = (state / stride[t]) % (count[t] + 1);
      if (used == static_cast<std::size_t>(count[t]) || a[row][t] == 0) continue;
      dp[state + stride[t]] += dp[state] * a[row][t];
    }
  }
  mpz_class perm = dp[stride[T] - 1];
  for (int c : count)
    for (int r = 2; r <= c; ++r) perm *= r;
  mpz_class sym = 1;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && M[j] == M[i]) ++j;
    for (std::size_t t = 2; t <= j - i; ++t) sym *= t;
    i = j;
  }
  Rational r(perm, sym);
  r.canonicalize();
  return r;
}

namespace {

std::vector<QVar> variable_pool(const TruncationSpec& t, int dim) {
  std::vector<QVar> pool;
  for (long m = t.m_min; m <= t.m_max; ++m)
    for (int a = 1; a <= dim; ++a) pool.push_back({m, a});
  return pool;
}

/// Visits every sorted multiset of size n from the (sorted) pool with sum of m in [lo, hi].
void for_each_multiset(const std::vector<QVar>& pool, int n, long lo, long hi,
                       const std::function<void(const std::vector<QVar>&)>& visit) {
  if (pool.empty()) {
    if (n == 0 && lo <= 0 && 0 <= hi) visit({});
    return;
  }
  const long mtop = pool.back().m;
  std::vector<QVar> cur;
  cur.reserve(n);
  std::function<void(std::size_t, int, long)> rec = [&](std::size_t start, int left, long sum) {
    if (left == 0) {
      if (sum >= lo && sum <= hi) visit(cur);
      return;
    }
    for (std::size_t idx = start; idx < pool.size(); ++idx) {
      long m = pool[idx].m;
      if (sum + left * m > hi) break;
      if (sum + m + (left - 1) * mtop < lo) continue;
      cur.push_back(pool[idx]);
      rec(idx, left - 1, sum + m);
      cur.pop_back();
    }
  };
  rec(0, n, 0);
}

}  // namespace

QElement phi_to_q(const UPolynomial& p, const TruncationSpec& trunc) {
  QElement out(p.frame(), trunc, false);
  std::map<int, std::vector<std::pair<UMonomial, CoeffSeries>>> by_degree;
  for (const auto& [mon, c] : p.terms()) by_degree[mon.degree()].emplace_back(mon, c);
  const auto pool = variable_pool(trunc, p.frame().dim);
  for (const auto& [n, group] : by_degree) {
    if (n > trunc.n_max) continue;
    long lo = std::numeric_limits<long>::max();
    long hi = std::numeric_limits<long>::min();
    for (const auto& [mon, c] : group) {
      long shift = mon.deriv_sum() + mon.xneg;
      lo = std::min(lo, trunc.xpow_min + shift);
      hi = std::max(hi, trunc.xpow_max + shift);
    }
    for_each_multiset(pool, n, lo, hi, [&](const std::vector<QVar>& M) {
      long sum = std::accumulate(M.begin(), M.end(), 0L, [](long s, const QVar& v) { return s + v.m; });
      for (const auto& [mon, c] : group) {
        long shift = mon.deriv_sum() + mon.xneg;
        long xpow = sum - shift;
        if (xpow < trunc.xpow_min || xpow > trunc.xpow_max) continue;
        Rational w = arrangement_sum(M, mon.uvars);
        if (sgn(w) == 0) continue;
        out.add_term(QMonomial{M, xpow}, c * (GaussianRational::i_pow(shift) * GaussianRational(w)));
      }
    });
  }
  return out;
}

namespace {

/// All sorted u-monomials whose factor components are `alphas` (sorted) with
/// derivative sum at most s; the pole order fills up to s.
std::vector<UMonomial> candidate_monomials(const std::vector<int>& alphas, long s) {
  std::vector<std::pair<int, int>> groups;  // (alpha, count)
  for (int a : alphas) {
    if (groups.empty() || groups.back().first != a)
      groups.emplace_back(a, 1);
    else
      ++groups.back().second;
  }
  std::vector<UMonomial> out;
  std::vector<UVar> cur;
  std::function<void(std::size_t, int, int, long)> rec = [&](std::size_t g, int left, int minimum, long budget) {
    if (g == groups.size()) {
      UMonomial mon = UMonomial::make(cur, static_cast<int>(budget));
      out.push_back(mon);
      return;
    }
    if (left == 0) {
      std::size_t next = g + 1;
      rec(next, next < groups.size() ? groups[next].second : 0, 0, budget);
      return;
    }
    for (int k = minimum; k * left <= budget; ++k) {
      cur.push_back({k, groups[g].first});
      rec(g, left - 1, k, budget - k);
      cur.pop_back();
    }
  };
  rec(0, groups.empty() ? 0 : groups[0].second, 0, s);
  return out;
}

}  // namespace

UPolynomial recognize_u(const QElement& f) {
  if (f.integrated()) throw std::invalid_argument("recognize_u expects a non-integrated element");
  const TruncationSpec& t = f.trunc();
  UPolynomial out(t.bounds(), f.frame());

  struct Key {
    int n;
    long s;
    std::vector<int> alphas;
    auto operator<=>(const Key&) const = default;
  };
  std::map<Key, std::vector<const std::pair<const QMonomial, CoeffSeries>*>> groups;
  for (const auto& term : f.terms()) {
    Key k{term.first.degree(), term.first.sum_m() - term.first.xpow, {}};
    for (const auto& v : term.first.qvars) k.alphas.push_back(v.alpha);
    std::sort(k.alphas.begin(), k.alphas.end());
    if (k.s < 0) throw NotInImageError("term " + term.first.str() + " has negative u-side order");
    groups[k].push_back(&term);
  }

  const auto pool = variable_pool(t, f.frame().dim);
  for (const auto& [key, terms] : groups) {
    std::vector<SeriesIndex> rhs_index;
    {
      std::set<SeriesIndex> idx;
      for (const auto* term : terms)
        for (const auto& [i, v] : term->second.terms()) idx.insert(i);
      rhs_index.assign(idx.begin(), idx.end());
    }
    std::map<QMonomial, const CoeffSeries*> lookup;
    for (const auto* term : terms) lookup.emplace(term->first, &term->second);

    const auto unknowns = candidate_monomials(key.alphas, key.s);
    IncrementalSolver solver(unknowns.size(), rhs_index.size());
    const GaussianRational phase = GaussianRational::i_pow(key.s);
    std::size_t lattice_points = 0;
    std::string failure;
    for_each_multiset(pool, key.n, t.xpow_min + key.s, t.xpow_max + key.s, [&](const std::vector<QVar>& M) {
      if (!failure.empty()) return;
      std::vector<int> alphas;
      for (const auto& v : M) alphas.push_back(v.alpha);
      std::sort(alphas.begin(), alphas.end());
      if (alphas != key.alphas) return;
      ++lattice_points;
      std::vector<GaussianRational> row(unknowns.size());
      for (std::size_t j = 0; j < unknowns.size(); ++j) row[j] = phase * GaussianRational(arrangement_sum(M, unknowns[j].uvars));
      std::vector<GaussianRational> rhs(rhs_index.size());
      long sum = std::accumulate(M.begin(), M.end(), 0L, [](long s, const QVar& v) { return s + v.m; });
      auto it = lookup.find(QMonomial{M, sum - key.s});
      if (it != lookup.end())
        for (std::size_t r = 0; r < rhs_index.size(); ++r)
          rhs[r] = it->second->coeff(rhs_index[r].eps, rhs_index[r].hbar);
      if (!solver.add_row(std::move(row), std::move(rhs))) failure = QMonomial{M, sum - key.s}.str();
    });
    if (!failure.empty())
      throw NotInImageError("coefficients of degree-" + std::to_string(key.n) + " terms are not polynomial of order " +
                            std::to_string(key.s) + " (first conflict at " + failure + ")");
    if (!solver.determined())
      throw WindowError("window too small to reconstruct degree-" + std::to_string(key.n) + " terms of order " +
                        std::to_string(key.s) + " (" + std::to_string(lattice_points) + " lattice points)");
    const auto sol = solver.solution();
    for (std::size_t j = 0; j < unknowns.size(); ++j) {
      CoeffSeries c(t.bounds());
      for (std::size_t r = 0; r < rhs_index.size(); ++r) c.add_term(rhs_index[r].eps, rhs_index[r].hbar, sol[r][j]);
      out.add_term(unknowns[j], c);
    }
  }
  return out;
}

}  // namespace mdh
