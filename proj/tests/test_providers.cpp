#include <gtest/gtest.h>

#include <functional>
#include <random>
#include <thread>

#include "mdh/errors.hpp"
#include "mdh/providers.hpp"
#include "oracles.hpp"

using namespace mdh;

namespace {

Polynomial parse_falling(int n, std::vector<std::pair<Exponents, Rational>> terms) {
  Polynomial p(n, Basis::falling);
  for (auto& [s, c] : terms) p.add_term(s, c);
  return p;
}

}  // namespace

TEST(Providers, DvvOracleKnownValues) {
  oracle::Witten w;
  EXPECT_EQ(w(0, {0, 0, 0}), 1);
  EXPECT_EQ(w(1, {1}), mpq_class(1, 24));
  EXPECT_EQ(w(2, {4}), mpq_class(1, 1152));
  EXPECT_EQ(w(1, {2, 0}), mpq_class(1, 24));
}

TEST(Providers, PsiIntegralsMatchOracle) {
  oracle::Witten w;
  EXPECT_EQ(psi_genus01(0, {0, 0, 0}), 1);
  EXPECT_EQ(psi_genus01(1, {1}), Rational(1, 24));
  EXPECT_EQ(psi_genus01(0, {0, 0, 0, 1}), 1);
  EXPECT_EQ(psi_genus01(0, {0, 0}), 0);
  for (int g = 0; g <= 1; ++g)
    for (int n = 1; n <= 6; ++n) {
      int total = 3 * g - 3 + n;
      if (total < 0) continue;
      // all compositions of total into n parts
      std::vector<int> d(n, 0);
      std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == n - 1) {
          d[i] = left;
          EXPECT_EQ(psi_genus01(g, d), w(g, d)) << "g=" << g << " n=" << n;
          return;
        }
        for (int x = 0; x <= left; ++x) {
          d[i] = x;
          rec(i + 1, left - x);
        }
      };
      rec(0, total);
    }
}

TEST(Providers, GenusZero) {
  for (int d = 0; d <= 4; ++d) {
    EXPECT_EQ(genus0({CycleKind::MD, Shape::G, 0, d + 2, d, 0}), Polynomial::constant(d + 2, 1));
    EXPECT_TRUE(genus0({CycleKind::MD, Shape::G, 0, d + 3, d, 0}).is_zero());
  }
  EXPECT_EQ(genus0({CycleKind::MD, Shape::H, 0, 2, 1, 0}), Polynomial::constant(2, 1));
  EXPECT_THROW(genus0({CycleKind::MD, Shape::H, 0, 2, 1, 1}), std::invalid_argument);
}

TEST(Providers, HainAnchor) {
  Polynomial p = genus1_dr({CycleKind::DR, Shape::G, 1, 2, 1, 1});
  Polynomial m1 = Polynomial::variable(2, 0), m2 = Polynomial::variable(2, 1);
  EXPECT_EQ(p, (m1 * m1 + m2 * m2) * Rational(1, 24));
}

TEST(Providers, GenusOneMdPolynomial) {
  Polynomial p = genus1_md({CycleKind::MD, Shape::G, 1, 2, 1, 1});
  Polynomial expect = parse_falling(2, {{{2, 0}, Rational(1, 24)},
                                        {{0, 2}, Rational(1, 24)},
                                        {{1, 0}, Rational(1, 24)},
                                        {{0, 1}, Rational(1, 24)},
                                        {{0, 0}, Rational(-1, 24)}});
  EXPECT_EQ(p, expect);
  EXPECT_EQ(p.basis(), Basis::falling);
}

TEST(Providers, GenusOneDrVanishesAtZeroProfile) {
  Polynomial p = genus1_dr({CycleKind::DR, Shape::H, 1, 1, 0, 1});
  EXPECT_LE(p.degree(), 2);
  std::vector<long> zero{0};
  EXPECT_EQ(p.evaluate(std::span<const long>(zero)), 0);
}

TEST(Providers, TopPsiAgreesWithGenusOneEngine) {
  // Two independent routes for lambda_0: the explicit genus-1 class and the top-psi generating series.
  for (int n = 1; n <= 4; ++n)
    for (Shape s : {Shape::H, Shape::G}) {
      IntegralKey k{CycleKind::DR, s, 1, n, 0, 0};
      k.psi_pow = 2 * 1 - 3 + k.markings();
      EXPECT_EQ(genus1_dr(k), dr_top_psi(1, key_profile(k))) << k.str();
    }
  // Top-psi anchor in three points.
  std::vector<Polynomial> prof{-(Polynomial::variable(2, 0) + Polynomial::variable(2, 1)), Polynomial::variable(2, 0),
                               Polynomial::variable(2, 1)};
  Polynomial a1 = Polynomial::variable(2, 0), a2 = Polynomial::variable(2, 1);
  EXPECT_EQ(genus1_dr_profile(prof, 2, 0), (a1 * a1 + a2 * a2 - Polynomial::constant(2, 1)) * Rational(1, 24));
}

TEST(Providers, TopPsiAtZeroProfileIsLambdaIntegral) {
  // DR_g(0,...,0) = (-1)^g lambda_g, and int lambda_g psi^{2g-2} on one point is the Hodge value.
  std::vector<Polynomial> prof{Polynomial(0, Basis::monomial)};
  EXPECT_EQ(dr_top_psi(1, prof).coeff({}), Rational(-1, 24));
  EXPECT_EQ(dr_top_psi(2, prof).coeff({}), Rational(7, 5760));
}

TEST(Providers, MdShapeHHomogeneousInGenusOne) {
  StandardProvider prov;
  for (int n = 0; n <= 4; ++n)
    for (int lam = 0; lam <= 1; ++lam) {
      IntegralKey k{CycleKind::MD, Shape::H, 1, n, 0, lam};
      k.psi_pow = 2 - 3 + k.markings() - lam;
      Polynomial p = prov.polynomial(k);
      EXPECT_TRUE(p.is_zero() || p.is_homogeneous(2)) << k.str() << " " << p.str();
      EXPECT_LE(p.degree(), 2);
      EXPECT_TRUE(p.is_symmetric()) << k.str();
    }
}

TEST(Providers, Dr1FromMdInvertsGenusOne) {
  StandardProvider prov;
  for (Shape s : {Shape::H, Shape::G})
    for (int n = 0; n <= 4; ++n)
      for (int lam = 0; lam <= 1; ++lam) {
        IntegralKey k{CycleKind::DR1, s, 1, n, 0, lam};
        k.psi_pow = 2 - 3 + k.markings() - lam;
        if (!k.saturates()) continue;
        IntegralKey kd = k;
        kd.kind = CycleKind::MD;
        Polynomial dr1 = dr1_from_md(prov, k);
        EXPECT_EQ(dr1, genus1_dr_profile(key_profile(kd), k.psi_pow, lam)) << k.str();
      }
}

TEST(Providers, Dr1GenusZeroIsMd) {
  StandardProvider prov;
  IntegralKey k{CycleKind::DR1, Shape::G, 0, 3, 1, 0};
  IntegralKey km = k;
  km.kind = CycleKind::MD;
  EXPECT_EQ(prov.polynomial(k), prov.polynomial(km));
}

TEST(Providers, CoverageAndDimension) {
  StandardProvider prov;
  EXPECT_TRUE(prov.polynomial({CycleKind::MD, Shape::H, 2, 2, 1, 0}).is_zero());
  EXPECT_THROW(prov.polynomial({CycleKind::MD, Shape::H, 2, 2, 5, 0}), CoverageError);
  EXPECT_NO_THROW(prov.polynomial({CycleKind::DR, Shape::H, 2, 2, 5, 0}));
}

TEST(Providers, TableRoundTripAndInvariants) {
  IntegralTable t;
  IntegralKey k{CycleKind::MD, Shape::H, 1, 2, 1, 1};
  Polynomial good = genus1_md(k);
  t.insert(k, {good, Provenance::derived, "test"});
  IntegralTable back = IntegralTable::from_json(t.to_json());
  EXPECT_EQ(table_lookup(back, k).poly, good);
  EXPECT_EQ(table_lookup(back, k).provenance, Provenance::derived);
  EXPECT_THROW(table_lookup(back, {CycleKind::MD, Shape::H, 2, 2, 5, 0}), CoverageError);
  Polynomial bad = good + Polynomial::constant(2, 1, Basis::falling);
  IntegralTable t2;
  EXPECT_THROW(t2.insert(k, {bad, Provenance::external, "test"}), TableError);
}

TEST(Providers, ChartIndependence) {
  // The G-shape polynomial evaluated on the holomorphic-free chart equals the direct engine everywhere.
  IntegralKey k{CycleKind::MD, Shape::G, 1, 3, 2, 0};
  Polynomial p = genus1_md(k);
  std::mt19937 rng(5);
  std::uniform_int_distribution<long> m(-6, 6);
  Polynomial direct = genus1_dr_profile(key_profile(k), 2, 0);
  for (int t = 0; t < 30; ++t) {
    std::vector<long> pt{m(rng), m(rng), m(rng)};
    EXPECT_EQ(p.evaluate(std::span<const long>(pt)), direct.evaluate(std::span<const long>(pt)));
  }
}

TEST(Providers, ConcurrentLookupsAgree) {
  StandardProvider prov;
  IntegralKey k{CycleKind::DR1, Shape::H, 1, 3, 3, 1};
  std::vector<std::thread> threads;
  std::vector<Polynomial> out(8);
  for (int i = 0; i < 8; ++i) threads.emplace_back([&, i] { out[i] = prov.polynomial(k); });
  for (auto& t : threads) t.join();
  for (int i = 1; i < 8; ++i) EXPECT_EQ(out[i], out[0]);
}
