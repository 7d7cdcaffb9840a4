#include <gtest/gtest.h>

#include "mdh/brackets.hpp"
#include "mdh/errors.hpp"
#include "mdh/tau.hpp"
#include "oracles.hpp"

#include <numeric>

using namespace mdh;

namespace {

std::shared_ptr<const IntegralProvider> tables() {
  static auto p = default_provider();
  return p;
}

Rational q(const std::string& s) { return parse_rational(s); }

std::vector<int> with_leading_zero(std::vector<int> d) {
  d.insert(d.begin(), 0);
  return d;
}

// Theta-class one-point values <tau_{g-1}>_g for the BGW tau function
// (F_1 = -log(1 - t_0)/8, F_2 = 3/128 t_1/(1 - t_0)^3).
Rational bgw_one_point(int g) { return g == 1 ? q("1/8") : q("3/128"); }

// Theta_{g,n+1} = psi_{n+1} pi^* Theta_{g,n}, so a tau_0 insertion multiplies by 2g - 2 + n.
// The correlator's own marked point counts as one of the extra zeros.
Rational bgw_oracle(int g, int extra_zeros) {
  Rational r = bgw_one_point(g);
  for (int k = 1; k <= extra_zeros; ++k) r *= 2 * g - 2 + k;
  return r;
}

// Enumerates every d in [0, hi]^n.
template <class F>
void for_each_tuple(int n, int hi, F f) {
  std::vector<int> d(n, 0);
  while (true) {
    f(d);
    int i = 0;
    while (i < n && ++d[i] > hi) d[i++] = 0;
    if (i == n) return;
  }
}

}  // namespace

TEST(Tau, WkPinnedValues) {
  EXPECT_EQ(wk_correlator({2}, 1, tables()), q("1/24"));
  EXPECT_EQ(wk_correlator({5}, 2, tables()), q("1/1152"));
}

TEST(Tau, WkMatchesDvvRecursion) {
  oracle::Witten witten;
  int nonzero = 0;
  for (int g = 0; g <= 2; ++g)
    for (int n = 1; n <= (g == 2 ? 2 : 3); ++n)
      for_each_tuple(n, 3 * g + n, [&](const std::vector<int>& d) {
        if (std::accumulate(d.begin(), d.end(), 0) > 3 * g - 1 + n) return;
        Rational want = witten(g, with_leading_zero(d));
        EXPECT_EQ(wk_correlator(d, g, tables()), want) << "g=" << g << " n=" << n << " d0=" << d[0];
        nonzero += sgn(want) != 0;
      });
  EXPECT_GE(nonzero, 20);
}

TEST(Tau, StringEquationSpotChecks) {
  oracle::Witten witten;
  EXPECT_EQ(wk_correlator({0, 0, 1}, 0, tables()), q("1"));
  EXPECT_EQ(wk_correlator({0, 0, 1, 1}, 0, tables()), q("2"));
  EXPECT_EQ(witten(0, {0, 0, 0, 1}), 1);
  EXPECT_EQ(witten(0, {0, 0, 0, 1, 1}), 2);
}

TEST(Tau, BgwValues) {
  EXPECT_EQ(bgw_correlator({0}, 1, tables()), q("1/8"));
  for (int extra = 0; extra <= 2; ++extra) {
    std::vector<int> d1(extra + 1, 0), d2(extra, 0);
    d2.push_back(1);
    EXPECT_EQ(bgw_correlator(d1, 1, tables()), bgw_oracle(1, extra + 1)) << extra;
    if (extra <= 1) {
      EXPECT_EQ(bgw_correlator(d2, 2, tables()), bgw_oracle(2, extra + 1)) << extra;
    }
  }
  // Off the Theta dimension sum d = g - 1.
  EXPECT_EQ(bgw_correlator({1}, 1, tables()), 0);
  EXPECT_EQ(bgw_correlator({0}, 2, tables()), 0);
}

TEST(Tau, BgwGenusZeroVanishes) {
  for (int n = 1; n <= 3; ++n)
    for_each_tuple(n, 3, [&](const std::vector<int>& d) { EXPECT_EQ(bgw_correlator(d, 0, tables()), 0); });
}

TEST(Tau, QwkVanishesOffGate) {
  int off_gate = 0;
  for (int g = 0; g <= 1; ++g)
    for (int l = 0; l <= g; ++l)
      for (int n = 1; n <= 2; ++n)
        for_each_tuple(n, 4, [&](const std::vector<int>& d) {
          CorrelatorQuery query{Model::QWK, d, g, l};
          if (query.on_gate() || 2 * g - 1 + n <= 0) return;
          ++off_gate;
          EXPECT_EQ(correlator(query, tables()).value, 0) << "g=" << g << " l=" << l << " n=" << n;
        });
  EXPECT_GE(off_gate, 20);
}

TEST(Tau, QwkTopHodgeSliceIsWk) {
  oracle::Witten witten;
  for (int g = 0; g <= 2; ++g)
    for (int n = 1; n <= 2; ++n)
      for_each_tuple(n, 3 * g + n, [&](const std::vector<int>& d) {
        CorrelatorQuery query{Model::QWK, d, g, g};
        if (!query.on_gate()) return;
        EXPECT_EQ(correlator(query, tables()).value, witten(g, with_leading_zero(d))) << g;
      });
}

// Same nested commutator built from the degree-0 parts of the DR densities.
TEST(Tau, QwkGenusOneMatchesDrDegreeZero) {
  auto analytic = std::make_shared<StandardProvider>();
  for (const std::vector<int>& d : std::vector<std::vector<int>>{{3}, {1, 3}, {2, 2}}) {
    CorrelatorQuery query{Model::QWK, d, 1, 0};
    ASSERT_TRUE(query.on_gate());
    CorrelatorResult md = correlator(query, analytic);
    DensitySpec base;
    base.kind = CycleKind::DR;
    base.trunc = md.window;
    base.provider = analytic;
    base.gmax = 1;
    auto dr = [&](int k) { return density_u(base.with_d(k)).extract_degree(0); };
    UPolynomial acc = dr(d[0] - 1);
    for (std::size_t i = 1; i < d.size(); ++i) acc = commutator_closed(acc, dr(d[i]), base.trunc.hbar_order);
    CoeffSeries v = evaluate_jet_at_zero(acc, Model::QWK);
    const int h = static_cast<int>(d.size());
    EXPECT_EQ(GaussianRational::i() * v.coeff(0, h), GaussianRational(md.value)) << d.size();
  }
}

TEST(Tau, ClassicalNestingIsLeadingQuantumOrder) {
  for (const std::vector<int>& d : std::vector<std::vector<int>>{{2, 1}, {1, 2, 2}, {3, 1, 2}}) {
    const int n = static_cast<int>(d.size());
    DensitySpec base;
    base.trunc = genus_window(1);
    base.trunc.hbar_order = n - 1;
    base.provider = tables();
    base.gmax = 1;
    UPolynomial cl = iterated_bracket_u(d, BracketMode::classical, base);
    UPolynomial qu = iterated_bracket_u(d, BracketMode::quantum, base);
    UPolynomial lead = qu.filter([n](const UMonomial&, int, int h) { return h == n - 1; });
    for (int h = 0; h < n - 1; ++h) EXPECT_TRUE(qu.filter([h](const UMonomial&, int, int k) { return k == h; }).is_zero());
    EXPECT_EQ(lead, cl.shifted(0, n - 1)) << n;
    EXPECT_FALSE(cl.is_zero());
  }
}

TEST(Tau, NestingOrderInvariance) {
  EXPECT_EQ(wk_correlator({1, 2, 3}, 1, tables()), wk_correlator({1, 3, 2}, 1, tables()));
  EXPECT_EQ(wk_correlator({0, 1, 4}, 1, tables()), wk_correlator({0, 4, 1}, 1, tables()));
  EXPECT_EQ(bgw_correlator({0, 0, 1}, 2, tables()), bgw_correlator({0, 1, 0}, 2, tables()));
  EXPECT_EQ(qwk_correlator({1, 2, 3}, 1, 0, tables()), qwk_correlator({1, 3, 2}, 1, 0, tables()));
}

TEST(Tau, WindowStable) {
  for (const CorrelatorQuery& query : std::vector<CorrelatorQuery>{{Model::WK, {2}, 1, 0},
                                                                   {Model::WK, {0, 1, 2}, 1, 0},
                                                                   {Model::BGW, {0, 0}, 1, 0},
                                                                   {Model::QWK, {1, 3}, 1, 0},
                                                                   {Model::WK, {5}, 2, 0}}) {
    CorrelatorResult small = correlator(query, tables());
    CorrelatorResult big = correlator(query, tables(), small.window.doubled());
    EXPECT_EQ(small.value, big.value) << to_string(query.model);
    EXPECT_EQ(small.q_value, small.u_value);
  }
}

TEST(Tau, TooSmallWindowIsRejected) {
  CorrelatorQuery query{Model::WK, {2}, 1, 0};
  TruncationSpec t = correlator_window(query);
  t.eps_order = 0;
  EXPECT_THROW(correlator(query, tables(), t), WindowError);
  EXPECT_THROW(correlator({Model::QWK, {2}, 1, 2}, tables()), DomainError);
  EXPECT_THROW(correlator({Model::WK, {}, 1, 0}, tables()), DomainError);
}

TEST(Tau, BatchJson) {
  Json in = Json::parse(R"([{"model":"WK","d":[2],"g":1},{"model":"bgw","d":[0],"g":1},
                            {"model":"QWK","d":[3],"g":1,"l":1}])");
  Json out = correlator_batch(in, tables());
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(out[0]["value"], "1/24");
  EXPECT_EQ(out[1]["value"], "1/8");
  EXPECT_EQ(out[2]["value"], "0");
  EXPECT_EQ(out[0]["model"], "WK");
}
