#include <gtest/gtest.h>

#include "mdh/derivation.hpp"
#include "mdh/hierarchy.hpp"

using namespace mdh;

TEST(Derivation, SolvesAreUnique) {
  StandardProvider genus01;
  Json log;
  IntegralTable t = derive_genus2_md_table(7, genus01, &log);
  int solves = 0;
  for (const Json& step : log.at("steps")) {
    if (!step.contains("solve")) continue;
    ++solves;
    EXPECT_EQ(step["solve"]["rank"], step["solve"]["independent_functionals"]) << step.dump();
  }
  EXPECT_EQ(solves, 7);
  for (const auto& [key, e] : t.entries()) {
    EXPECT_EQ(key.g, 2);
    EXPECT_EQ(e.provenance, Provenance::derived);
  }
}

TEST(Derivation, ReproducesShippedTable) {
  StandardProvider genus01;
  IntegralTable derived = derive_genus2_md_table(7, genus01);
  IntegralTable shipped = IntegralTable::load(std::string(MDH_DATA_DIR) + "/genus2_md.json");
  ASSERT_EQ(derived.entries().size(), shipped.entries().size());
  for (const auto& [key, e] : derived.entries()) {
    ASSERT_TRUE(shipped.contains(key)) << key.str();
    EXPECT_EQ(shipped.entries().at(key).poly.to_falling(), e.poly.to_falling()) << key.str();
  }
}

// lambda_0 entries have a closed form independent of the derivation.
TEST(Derivation, LambdaZeroEntriesMatchTopPsi) {
  StandardProvider genus01;
  IntegralTable derived = derive_genus2_md_table(7, genus01);
  int checked = 0;
  for (const auto& [key, e] : derived.entries()) {
    if (key.lam != 0 || !key.saturates()) continue;
    ++checked;
    EXPECT_TRUE(verify_main_theorem(2, key.psi_pow - 1, 0, key.n, StandardProvider({derived}), genus01).passed())
        << key.str();
  }
  EXPECT_GE(checked, 3);
}
