#include "mdh/derivation.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "mdh/brackets.hpp"
#include "mdh/calculus.hpp"
#include "mdh/hierarchy.hpp"
#include "mdh/linsolve.hpp"

namespace mdh {

namespace {

constexpr int kGenus = 2;

SeriesBounds work_bounds() { return {2 * (kGenus + 1), kGenus + 1}; }

UPolynomial exact_weight(const UPolynomial& p, int w) {
  return p.filter([w](const UMonomial&, int e, int h) { return 2 * h + e == 2 * w; });
}

/// Sorted multisets of n derivative orders with sum at most `total`, each paired with the pole order
/// that brings the degree to `total`.
std::vector<UMonomial> degree_basis(int n, int total) {
  std::vector<UMonomial> out;
  std::vector<UVar> cur;
  auto rec = [&](auto&& self, int left, int minimum, int budget) -> void {
    if (left == 0) {
      out.push_back(UMonomial::make(cur, budget));
      return;
    }
    for (int k = minimum; k <= budget; ++k) {
      cur.push_back({k, 1});
      self(self, left - 1, k, budget - k);
      cur.pop_back();
    }
  };
  rec(rec, n, 0, total);
  return out;
}

struct Keyed {
  UMonomial mon;
  int e;
  int h;
  auto operator<=>(const Keyed&) const = default;
};

void collect(const UPolynomial& p, std::map<Keyed, std::size_t>& index) {
  for (const auto& [mon, c] : p.terms())
    for (const auto& [idx, v] : c.terms()) index.emplace(Keyed{mon, idx.eps, idx.hbar}, index.size());
}

std::vector<GaussianRational> as_vector(const UPolynomial& p, const std::map<Keyed, std::size_t>& index) {
  std::vector<GaussianRational> v(index.size());
  for (const auto& [mon, c] : p.terms())
    for (const auto& [idx, x] : c.terms()) v[index.at(Keyed{mon, idx.eps, idx.hbar})] = x;
  return v;
}

}  // namespace

UPolynomial solve_genus2_functional(int D, const IntegralProvider& genus01, Json* log) {
  if (D < 2) throw std::invalid_argument("solve_genus2_functional needs D >= 2");
  const SeriesBounds b = work_bounds();
  auto prov = std::shared_ptr<const IntegralProvider>(&genus01, [](const IntegralProvider*) {});
  DensitySpec spec;
  spec.kind = CycleKind::MD;
  spec.family = Shape::G;
  spec.d = D;
  spec.trunc.eps_order = b.eps_order;
  spec.trunc.hbar_order = b.hbar_order;
  spec.provider = prov;
  spec.gmax = kGenus - 1;
  const UPolynomial known = density_u(spec);
  const UPolynomial g1 = parse_upoly("u0^3/6 + eps^2*u0*u2/24", b);

  // Unknown genus-2 monomials: eps^{2l} hbar^{2-l}, n = D + l - 2 factors, degree 2g.
  std::vector<UPolynomial> basis;
  for (int l = 0; l <= kGenus; ++l) {
    const int n = D + l - kGenus;
    if (n <= 0) continue;
    for (const auto& mon : degree_basis(n, 2 * kGenus))
      basis.push_back(UPolynomial::monomial(mon, 1, b, 2 * l, kGenus - l));
  }

  // Columns: variational derivatives of the weight-3 commutators with G_1.
  std::vector<UPolynomial> columns;
  for (const auto& x : basis) columns.push_back(variational_derivative_u(exact_weight(commutator_closed(x, g1, 1), kGenus + 1)));
  UPolynomial rhs = -variational_derivative_u(exact_weight(commutator_closed(known, g1, kGenus + 1), kGenus + 1));

  // Work modulo total derivatives: keep basis elements whose variational derivatives are independent.
  std::map<Keyed, std::size_t> fidx;
  std::vector<UPolynomial> fder;
  for (const auto& x : basis) {
    fder.push_back(variational_derivative_u(x));
    collect(fder.back(), fidx);
  }
  IncrementalSolver independence(fidx.size(), 0);
  std::vector<std::size_t> kept;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    std::size_t before = independence.rank();
    independence.add_row(as_vector(fder[j], fidx), {});
    if (independence.rank() > before) kept.push_back(j);
  }

  std::map<Keyed, std::size_t> ridx;
  for (std::size_t j : kept) collect(columns[j], ridx);
  collect(rhs, ridx);
  IncrementalSolver solver(kept.size(), 1);
  std::vector<std::vector<GaussianRational>> colvec;
  for (std::size_t j : kept) colvec.push_back(as_vector(columns[j], ridx));
  std::vector<GaussianRational> r = as_vector(rhs, ridx);
  for (std::size_t row = 0; row < ridx.size(); ++row) {
    std::vector<GaussianRational> a(kept.size());
    for (std::size_t j = 0; j < kept.size(); ++j) a[j] = colvec[j][row];
    solver.add_row(std::move(a), {r[row]});
  }
  if (log) {
    (*log)["D"] = D;
    (*log)["unknowns"] = basis.size();
    (*log)["independent_functionals"] = kept.size();
    (*log)["equations"] = ridx.size();
    (*log)["rank"] = solver.rank();
  }
  if (!solver.consistent()) throw std::runtime_error("genus-2 commutation equations are inconsistent for D=" + std::to_string(D));
  if (!solver.determined())
    throw std::runtime_error("genus-2 functional not unique modulo total derivatives for D=" + std::to_string(D));
  auto sol = solver.solution()[0];
  UPolynomial out(b);
  for (std::size_t j = 0; j < kept.size(); ++j) out += basis[kept[j]] * sol[j];
  return out;
}

IntegralTable derive_genus2_md_table(int d_max, const IntegralProvider& genus01, Json* log) {
  IntegralTable table;
  Json steps = Json::array();
  for (int d = -1; d <= d_max; ++d) {
    UPolynomial hd(work_bounds());
    Json step{{"d", d}};
    if (d + 1 >= 2) {
      Json slog;
      hd = variational_derivative_u(solve_genus2_functional(d + 1, genus01, &slog));
      step["solve"] = slog;
    }
    for (int l = 0; l <= kGenus; ++l) {
      const int n = d + l + 2 - 2 * kGenus;
      if (n < 0) continue;
      IntegralKey key{CycleKind::MD, Shape::H, kGenus, n, d + 1, l};
      Polynomial P(n, Basis::falling);
      UPolynomial slice = hd.slice(2 * l, kGenus - l);
      // Coefficient of a sorted monomial = i^{g-l} (-1)^l (-1)^g / n! * (number of orderings) * [m^{(s)}]P.
      GaussianRational pre = GaussianRational::i_pow(kGenus - l) * GaussianRational((l + kGenus) % 2 ? -1 : 1) /
                             GaussianRational(factorial(n));
      for (const auto& [mon, c] : slice.terms()) {
        if (!mon.nonsingular() || mon.deriv_sum() != 2 * kGenus || mon.degree() != n)
          throw std::runtime_error("genus-2 density term outside the expected shape: " + mon.str());
        std::vector<int> s;
        for (const auto& v : mon.uvars) s.push_back(v.k);
        std::vector<std::vector<int>> perms;
        do perms.push_back(s);
        while (std::next_permutation(s.begin(), s.end()));
        GaussianRational v = c.coeff(2 * l, kGenus - l) / (pre * GaussianRational(static_cast<long>(perms.size())));
        if (v.im() != 0) throw std::runtime_error("non-real genus-2 coefficient at " + mon.str());
        for (const auto& p : perms) P.add_term(p, v.re());
      }
      table.insert(key, {P, Provenance::derived, n == 0 ? "residue-condition" : "commutation-recursion"});
    }
    steps.push_back(step);
  }
  if (log) *log = Json{{"steps", steps}};
  return table;
}

}  // namespace mdh
