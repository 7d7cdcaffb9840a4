#include "mdh/suites.hpp"

#include <random>

#include "mdh/brackets.hpp"
#include "mdh/routes.hpp"

namespace mdh {

namespace {

void finish(Report& r, std::size_t failures, bool conclusive = true) {
  r.verdict = failures > 0 ? Verdict::fail : conclusive ? Verdict::pass : Verdict::inconclusive;
}

UMonomial random_umonomial(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> deg(1, 3), s(0, 3), pole(0, 2);
  std::vector<UVar> vars;
  const int n = deg(rng);
  for (int i = 0; i < n; ++i) vars.push_back({s(rng), 1});
  return UMonomial::make(vars, pole(rng));
}

QElement random_integrated(std::mt19937_64& rng, const TruncationSpec& t) {
  std::uniform_int_distribution<long> m(-4, 3), c(-3, 3);
  std::uniform_int_distribution<int> deg(1, 3), terms(1, 3);
  QElement F(PhaseFrame::trivial(), t, true);
  const int k = terms(rng);
  for (int i = 0; i < k; ++i) {
    std::vector<QVar> vars;
    const int d = deg(rng);
    for (int j = 0; j < d; ++j) vars.push_back({m(rng), 1});
    F.add_term(QMonomial::make(vars, 0), CoeffSeries::constant(GaussianRational(c(rng)), t.bounds()));
  }
  return F;
}

}  // namespace

Report run_ehrhart_suite(int n_max, int d_max, long A_max) {
  Report r;
  r.check = "ehrhart";
  std::size_t cases = 0, failures = 0;
  for (int n = 1; n <= n_max; ++n) {
    std::vector<int> d(n, 0);
    while (true) {
      for (long A = 0; A <= A_max; ++A) {
        ++cases;
        if (ehrhart(d, A) != ehrhart_bruteforce(d, A, A_max)) {
          if (failures++ == 0) {
            r.witness = "n=" + std::to_string(n) + " A=" + std::to_string(A) + " d=";
            for (int x : d) r.witness += std::to_string(x) + ",";
          }
        }
      }
      int i = 0;
      while (i < n && ++d[i] > d_max) d[i++] = 0;
      if (i == n) break;
    }
  }
  r.details = Json{{"n_max", n_max}, {"d_max", d_max}, {"A_max", A_max}, {"cases", cases}, {"failures", failures}};
  finish(r, failures);
  return r;
}

Report run_commutator_suite(std::uint64_t seed, int count, const TruncationSpec& window, int max_order) {
  Report r;
  r.check = "commutator";
  r.window = to_json(window);
  r.max_order = max_order;
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> compared(max_order + 1, 0);
  std::size_t failures = 0;
  for (int i = 0; i < count; ++i) {
    UMonomial f = random_umonomial(rng), g = random_umonomial(rng);
    RouteComparison c = compare_commutator_routes(f, g, window, max_order);
    for (int n = 1; n <= max_order && n < static_cast<int>(c.compared.size()); ++n) compared[n] += c.compared[n];
    if (!c.agree() && failures++ == 0) r.witness = "[" + f.str() + ", " + g.str() + "]: " + c.witness;
  }
  bool every_order = true;
  for (int n = 1; n <= max_order; ++n) every_order = every_order && compared[n] > 0;
  if (!every_order && failures == 0) r.witness = "some hbar order had no certified monomial";
  r.details = Json{{"seed", seed}, {"pairs", count}, {"compared_per_order", compared}, {"failures", failures}};
  finish(r, failures, every_order);
  return r;
}

Report run_bracket_axioms_suite(std::uint64_t seed, int count) {
  Report r;
  r.check = "bracket-axioms";
  TruncationSpec t;
  t.n_max = 8;
  t.hbar_order = 3;
  r.window = to_json(t);
  std::mt19937_64 rng(seed);
  std::size_t failures = 0, nonzero = 0;
  auto fail = [&](const std::string& what, int i) {
    if (failures++ == 0) r.witness = what + " on triple " + std::to_string(i);
  };
  for (int i = 0; i < count; ++i) {
    QElement A = random_integrated(rng, t), B = random_integrated(rng, t), C = random_integrated(rng, t);
    QElement pb = poisson(A, B);
    nonzero += !pb.is_zero();
    if (pb != -poisson(B, A)) fail("antisymmetry", i);
    QElement jac = poisson(poisson(A, B), C) + poisson(poisson(B, C), A) + poisson(poisson(C, A), B);
    if (jac.drops() != 0 || !jac.is_zero()) fail("Jacobi", i);
    QElement expect(PhaseFrame::trivial(), t, true);
    for (const auto& [mon, c] : pb.terms()) expect.add_term(mon, c.shifted(0, 1));
    if (commutator(A, B).slice(0, 1) != expect) fail("leading order of the commutator", i);
  }
  r.details = Json{{"seed", seed}, {"triples", count}, {"nonzero_brackets", nonzero}, {"failures", failures}};
  finish(r, failures, nonzero > 0);
  return r;
}

namespace {

// Sum of 1..3 random terms of md-degree `target`, with eps^2/hbar factors mixed in.
UPolynomial random_homogeneous(std::mt19937_64& rng, long target, SeriesBounds b) {
  std::uniform_int_distribution<int> terms(1, 3), e(0, b.eps_order / 2), h(0, 1), c(1, 5);
  UPolynomial p(b);
  const int k = terms(rng);
  for (int i = 0; i < k;) {
    UMonomial mon = random_umonomial(rng);
    const int ee = 2 * e(rng), hh = h(rng);
    if (md_degree(mon, ee, hh) != target) continue;
    p.add_term(mon, GaussianRational(c(rng)), ee, hh);
    ++i;
  }
  return p;
}

}  // namespace

Report run_degree_law_suite(std::uint64_t seed, int count) {
  Report r;
  r.check = "degree-law";
  const SeriesBounds b{2, 4};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> deg(0, 5);
  std::size_t failures = 0, terms = 0;
  for (int i = 0; i < count; ++i) {
    const long d1 = deg(rng), d2 = deg(rng);
    UPolynomial f = random_homogeneous(rng, d1, b), g = random_homogeneous(rng, d2, b);
    UPolynomial c = commutator_closed(f, g, 3);
    for (const auto& [mon, coef] : c.terms())
      for (const auto& [idx, v] : coef.terms()) {
        ++terms;
        const long got = md_degree(mon, idx.eps, idx.hbar);
        if (got != d1 + d2 - 1 && failures++ == 0)
          r.witness = mon.str() + " has degree " + std::to_string(got) + ", expected " + std::to_string(d1 + d2 - 1);
      }
  }
  r.details = Json{{"seed", seed}, {"pairs", count}, {"terms_checked", terms}, {"failures", failures}};
  finish(r, failures, terms > 0);
  return r;
}

}  // namespace mdh
