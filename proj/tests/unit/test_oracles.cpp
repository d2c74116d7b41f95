#include <gtest/gtest.h>

#include "slag/oracles.hpp"

using namespace slag;

TEST(HarveyLawson, ConesAndSmoothLeaves) {
  for (int m : {2, 3, 4}) {
    for (double c : {0.0, 1.0}) {
      const OracleResult r = harvey_lawson_sample(m, c, 20);
      EXPECT_TRUE(r.pass) << "m=" << m << " c=" << c << " residual " << r.max_residual;
      EXPECT_GT(r.samples, 0);
    }
  }
}

TEST(UnitCircle, ExtendedChartSatisfiesQuadrics) {
  for (int n : {2, 3}) {
    const Chart c = make_chart(unit_circle_arc(), 0.0, n, 0, 10);
    const OracleResult a = unit_circle_residual(n, c, 0.05, 100, 0.25, 1e-8);
    const OracleResult b = unit_circle_residual(n, c, 0.025, 100, 0.25, 1e-10);
    EXPECT_TRUE(a.pass) << a.max_residual;
    EXPECT_TRUE(b.pass) << b.max_residual;
  }
}

TEST(Planes, ResidualsAndIntersections) {
  for (int n = 2; n <= 5; ++n) {
    const OracleResult r = plane_oracle(n, 20, 3);
    EXPECT_TRUE(r.pass) << r.max_residual;
  }
}

TEST(BranchSeparation, ParabolaN3) {
  TaylorPoly g(28);
  g[2] = 1.0;
  const OracleResult r = branch_separation(ArcSpec::graph(g), 3, 8);
  EXPECT_TRUE(r.pass);
  double c_min = 0.0;
  for (const auto& [name, value] : r.details) {
    if (name == "c_min") c_min = value;
  }
  EXPECT_GT(c_min, 0.5);
}
