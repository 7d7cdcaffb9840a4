#include <gtest/gtest.h>

#include "mdh/brackets.hpp"
#include "mdh/calculus.hpp"
#include "mdh/errors.hpp"
#include "mdh/hierarchy.hpp"
#include "mdh/routes.hpp"

#include <algorithm>

using namespace mdh;

namespace {

std::shared_ptr<const IntegralProvider> analytic() {
  static auto p = std::make_shared<StandardProvider>();
  return p;
}

DensitySpec spec(CycleKind k, Shape f, int d, int gmax) {
  DensitySpec s;
  s.kind = k;
  s.family = f;
  s.d = d;
  s.trunc = genus_window(gmax);
  s.provider = analytic();
  s.gmax = gmax;
  return s;
}

UPolynomial up(const std::string& text, const DensitySpec& s) { return parse_upoly(text, s.trunc.bounds()); }

}  // namespace

TEST(Hierarchy, GenusZeroDensity) {
  for (int d = 0; d <= 5; ++d) {
    DensitySpec s = spec(CycleKind::MD, Shape::G, d, 0);
    s.trunc.n_max = d + 2;
    UPolynomial expect = up("u0^" + std::to_string(d + 2) + "/" + factorial(d + 2).get_str(), s);
    EXPECT_EQ(density_u(s), expect) << d;
    EXPECT_EQ(build_density(s), phi_to_q(expect, s.trunc));
  }
}

TEST(Hierarchy, GOneEpsSquaredSlice) {
  DensitySpec s = spec(CycleKind::MD, Shape::G, 1, 1);
  UPolynomial slice = density_u(s).slice(2, 0);
  UPolynomial expect = (up("u0*u2/24", s) + dx_u(up("u0^2*x^-1/48", s))).shifted(2, 0);
  EXPECT_EQ(slice, expect) << slice.str();
}

TEST(Hierarchy, GOneFunctional) {
  DensitySpec s = spec(CycleKind::MD, Shape::G, 1, 1);
  UPolynomial target = up("u0^3/6 + eps^2*u0*u2/24", s);
  EXPECT_TRUE(integrates_to_zero(density_u(s) - target)) << density_u(s).str();
  UPolynomial dr = density_u(s.with_kind(CycleKind::DR));
  EXPECT_TRUE(integrates_to_zero(dr.extract_degree(0) - target)) << dr.str();
}

TEST(Hierarchy, GAndHFamiliesGiveTheSameHamiltonians) {
  for (CycleKind k : {CycleKind::MD, CycleKind::DR, CycleKind::DR1})
    for (int d = 0; d <= 3; ++d) {
      DensitySpec s = spec(k, Shape::G, d, 1);
      UPolynomial G = density_u(s), H = density_u(s.with_family(Shape::H));
      EXPECT_TRUE(integrates_to_zero(G - H)) << to_string(k) << " d=" << d;
      EXPECT_EQ(hamiltonian(s), hamiltonian(s.with_family(Shape::H))) << to_string(k) << " d=" << d;
    }
}

TEST(Hierarchy, VariationalDerivativeOfG) {
  for (CycleKind k : {CycleKind::MD, CycleKind::DR, CycleKind::DR1})
    for (int d = -1; d <= 2; ++d) {
      DensitySpec s = spec(k, Shape::G, d + 1, 1);
      EXPECT_EQ(variational_derivative_u(density_u(s)), density_u(s.with_family(Shape::H).with_d(d)))
          << to_string(k) << " d=" << d;
    }
}

TEST(Hierarchy, MdDensitiesAreNonsingularOfDegreeZero) {
  for (int d = -1; d <= 3; ++d) {
    DensitySpec s = spec(CycleKind::MD, Shape::H, d, 1);
    UPolynomial h = density_u(s);
    EXPECT_TRUE(h.nonsingular()) << h.str();
    EXPECT_EQ(h.extract_degree(0), h);
    if (d <= 1) {
      s.trunc.n_max = d + 3;
      EXPECT_EQ(recognize_u(build_density(s)), h) << d;
    }
  }
}

TEST(Hierarchy, Dr1SubstituteOnElementaryInputs) {
  TruncationSpec t = genus_window(1);
  QElement q(PhaseFrame::trivial(), t);
  q.add_term(QMonomial::make({{-2, 1}}, 0), CoeffSeries::constant(1, t.bounds()));
  QElement expect = q;
  expect.add_term(QMonomial::make({}, 0), CoeffSeries::term(Rational(-1, 24), 2, 0, t.bounds()));
  EXPECT_EQ(dr1_substitute(q), expect);

  UPolynomial u0 = parse_upoly("u0", t.bounds());
  UPolynomial shifted = parse_upoly("u0 + eps^2*x^-2/24", t.bounds());
  EXPECT_EQ(dr1_substitute_u(u0), shifted);
  EXPECT_EQ(dr1_substitute(phi_to_q(u0, t)), phi_to_q(shifted, t));
  UPolynomial u1sq = parse_upoly("u1^2", t.bounds());
  EXPECT_EQ(dr1_substitute(phi_to_q(u1sq, t)), phi_to_q(dr1_substitute_u(u1sq), t));

  TruncationSpec narrow = t;
  narrow.m_min = 0;
  EXPECT_THROW(dr1_substitute(QElement(PhaseFrame::trivial(), narrow)), WindowError);
}

TEST(Hierarchy, Dr1Link) {
  for (int d = 0; d <= 2; ++d) {
    Report r = verify_dr1_link(d, spec(CycleKind::MD, Shape::H, d, 1));
    EXPECT_TRUE(r.passed()) << r.to_json().dump();
  }
}

TEST(Hierarchy, IntegrabilityGenusOne) {
  for (CycleKind k : {CycleKind::MD, CycleKind::DR1}) {
    Report r = verify_integrability(0, 1, spec(k, Shape::H, 0, 1));
    EXPECT_TRUE(r.passed()) << r.to_json().dump();
    EXPECT_GT(r.details["q_compared"].get<std::size_t>(), 0u);
  }
}

TEST(Hierarchy, TauSymmetryGenusOne) {
  for (CycleKind k : {CycleKind::MD, CycleKind::DR1}) {
    Report r = verify_tau_symmetry(1, 2, spec(k, Shape::H, 0, 1));
    EXPECT_TRUE(r.passed()) << r.to_json().dump();
    EXPECT_TRUE(verify_tau_symmetry(2, 2, spec(k, Shape::H, 0, 1)).passed());
  }
}

TEST(Hierarchy, ClassicalReduction) {
  DensitySpec s = spec(CycleKind::MD, Shape::H, 0, 1);
  s.trunc.hbar_order = 0;
  QElement h0 = hamiltonian(s), h1 = hamiltonian(s.with_d(1));
  QElement b = poisson(h0, h1);
  auto cert = commutator_certifier(density_u(s), density_u(s.with_d(1)), s.trunc, 1);
  for (const auto& [mon, c] : b.terms()) {
    QMonomial m = mon;
    m.xpow = -1;
    if (!cert(m)) continue;
    EXPECT_TRUE(c.is_zero()) << mon.str();
  }
  // Inside the window the bracket vanishes; the edge terms above are truncation artefacts.
  TruncationSpec wide = s.trunc.doubled();
  DensitySpec sw = s;
  sw.trunc = wide;
  QElement bw = poisson(hamiltonian(sw), hamiltonian(sw.with_d(1)));
  for (const auto& [mon, c] : bw.terms())
    if (mon.degree() <= 3 && std::all_of(mon.qvars.begin(), mon.qvars.end(), [](const QVar& v) { return v.m >= -4 && v.m <= 4; }))
      ADD_FAILURE() << "nonzero inner term " << mon.str();
}

TEST(Hierarchy, MainTheoremGenusOne) {
  StandardProvider p;
  Report r = verify_main_theorem(1, 0, 1, 2, p, p);
  EXPECT_TRUE(r.passed()) << r.to_json().dump();
  for (int l = 0; l <= 1; ++l)
    for (int d = -1; d <= 2; ++d)
      for (int n = 0; n <= 3; ++n) EXPECT_TRUE(verify_main_theorem(1, d, l, n, p, p).passed());
  EXPECT_TRUE(verify_main_theorem(0, 1, 0, 3, p, p).passed());
}

TEST(Hierarchy, DegreeZero) {
  Report r = verify_degree_zero(1, spec(CycleKind::MD, Shape::H, 1, 1));
  EXPECT_TRUE(r.passed()) << r.to_json().dump();
}

TEST(Hierarchy, CoverageErrorListsKeys) {
  DensitySpec s = spec(CycleKind::MD, Shape::H, 2, 2);
  try {
    density_u(s);
    FAIL() << "expected coverage error";
  } catch (const CoverageError& e) {
    EXPECT_NE(std::string(e.what()).find("g=2"), std::string::npos);
  }
}
