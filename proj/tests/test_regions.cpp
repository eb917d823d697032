#include <gtest/gtest.h>

#include <cmath>

#include "lbs/regions.hpp"
#include "reference_values.hpp"

using namespace lbs;

TEST(CriticalCurve, Values) {
  EXPECT_NEAR(critical_curve(Side::below, 0.0), 2.0 - ref::mu0, 1e-12);
  EXPECT_NEAR(critical_curve(Side::above, 0.0), -2.0 + ref::mu0, 1e-12);
  EXPECT_NEAR(critical_curve(Side::below, 12.0), 1.0 - ref::mu0, 1e-12);
  EXPECT_NEAR(critical_curve(Side::above, -12.0), ref::mu0 - 1.0, 1e-12);
  EXPECT_THROW(critical_curve(Side::below, -12.0), DomainError);
  EXPECT_THROW(critical_curve(Side::above, 12.0), DomainError);
}

TEST(CriticalCurve, ZeroOfThresholdPolynomial) {
  for (double mu1 : {-50.0, -20.0, -11.0, 0.0, 7.5, 30.0}) {
    const CouplingPair lo{mu1, critical_curve(Side::below, mu1)};
    EXPECT_NEAR(threshold_polys(lo).a_minus, 0.0, 1e-12);
    EXPECT_NEAR(threshold_poly_expanded(lo, Side::below), 0.0, 1e-10);
    if (mu1 != 12.0) {
      const CouplingPair hi{mu1, critical_curve(Side::above, mu1)};
      EXPECT_NEAR(threshold_polys(hi).a_plus, 0.0, 1e-12);
      EXPECT_NEAR(threshold_poly_expanded(hi, Side::above), 0.0, 1e-10);
    }
  }
}

TEST(CriticalCurve, MirrorDuality) {
  for (double mu1 : {-40.0, -3.0, 5.0, 25.0})
    EXPECT_NEAR(critical_curve(Side::above, -mu1), -critical_curve(Side::below, mu1), 1e-12);
}

TEST(Classify, Origin) {
  const auto r = classify({0, 0});
  EXPECT_EQ(r.a_minus, 0);
  EXPECT_EQ(r.a_plus, 0);
  EXPECT_EQ(r.b_minus, 0);
  EXPECT_EQ(r.b_plus, 0);
  ASSERT_TRUE(r.g_label);
  EXPECT_EQ(*r.g_label, std::make_pair(0, 0));
  EXPECT_EQ(r.boundary, 0u);
  EXPECT_EQ(*r.sector_sum, std::make_pair(0, 0));
}

TEST(Classify, RegionExamples) {
  auto r = classify({-30, 0});
  EXPECT_EQ(r.a_minus, 1);
  EXPECT_EQ(r.a_plus, 0);
  EXPECT_EQ(*r.g_label, std::make_pair(1, 0));

  r = classify({-20, -10});
  EXPECT_EQ(r.a_minus, 2);
  EXPECT_EQ(r.b_minus, 0);
  EXPECT_EQ(*r.g_label, std::make_pair(2, 0));

  r = classify({60, 10.25});
  EXPECT_EQ(r.a_plus, 2);
  EXPECT_EQ(r.a_minus, 0);
  EXPECT_EQ(*r.g_label, std::make_pair(0, 2));

  r = classify({-5, 2});
  EXPECT_EQ(*r.g_label, std::make_pair(0, 0));
}

TEST(Classify, ThreeEigenvalueLabelOnAxis) {
  auto r = classify({0, -16});
  EXPECT_EQ(r.a_minus, 1);
  EXPECT_EQ(r.b_minus, 1);
  EXPECT_EQ(r.d_minus, 3);
  EXPECT_EQ(*r.g_label, std::make_pair(3, 0));
  EXPECT_EQ(*r.sector_sum, std::make_pair(3, 0));

  r = classify({0, 16});
  EXPECT_EQ(*r.g_label, std::make_pair(0, 3));

  // off the axis the table label stays 1 while the sector sum is 3
  r = classify({1, -16});
  EXPECT_EQ(r.d_minus, 1);
  EXPECT_EQ(r.d_minus_offaxis, 3);
  EXPECT_EQ(*r.sector_sum, std::make_pair(3, 0));
}

TEST(Classify, SumOfFourBelow) {
  const auto r = classify({-13, -40});
  EXPECT_EQ(r.a_minus, 2);
  EXPECT_EQ(r.b_minus, 1);
  EXPECT_EQ(*r.sector_sum, std::make_pair(4, 0));
  EXPECT_EQ(*r.g_label, std::make_pair(2, 0));
}

TEST(Classify, TransitionAcrossPole) {
  EXPECT_EQ(classify({-11, -40}).a_minus, 1);
  EXPECT_EQ(classify({-13, -40}).a_minus, 2);
  EXPECT_EQ(classify({-12, -40}).a_minus, 1);
  EXPECT_EQ(classify({12, 40}).a_plus, 1);
}

TEST(Classify, MirrorSymmetry) {
  for (double x : {-50.0, -13.0, -2.0, 0.0, 3.0, 40.0})
    for (double y : {-45.0, -11.0, -1.0, 0.5, 9.0, 33.0}) {
      const auto r = classify({x, y});
      const auto m = classify({-x, -y});
      EXPECT_EQ(r.a_minus, m.a_plus);
      EXPECT_EQ(r.a_plus, m.a_minus);
      EXPECT_EQ(r.b_minus, m.b_plus);
      EXPECT_EQ(r.b_plus, m.b_minus);
    }
}

TEST(Classify, BoundaryFlags) {
  auto r = classify({0, critical_curve(Side::below, 0)});
  EXPECT_TRUE(r.boundary & on_tau_minus);
  EXPECT_FALSE(r.a_minus);
  EXPECT_FALSE(r.g_label);
  EXPECT_FALSE(r.sector_sum);

  r = classify({3, -ref::mu2_crit});
  EXPECT_TRUE(r.boundary & on_b_minus);
  EXPECT_FALSE(r.b_minus);
  EXPECT_TRUE(r.a_minus.has_value());

  r = classify({3, ref::mu2_crit});
  EXPECT_TRUE(r.boundary & on_b_plus);
  EXPECT_EQ(boundary_names(on_tau_minus | on_b_plus), "OnTauMinus OnBPlus");
  EXPECT_EQ(boundary_names(0), "");
}

TEST(Inclusions, HoldOnDefaultGrid) {
  const auto rep = inclusion_checks();
  EXPECT_EQ(rep.points, 200 * 200);
  EXPECT_TRUE(rep.violations.empty());
  EXPECT_EQ(rep.g12_points, 0);
  EXPECT_EQ(rep.g21_points, 0);
  EXPECT_TRUE(rep.ok());
  EXPECT_THROW(inclusion_checks(1), PreconditionError);
}

TEST(PhaseScan, ShapeAndOrder) {
  const auto rows = phase_scan({-1, 1, 3}, {-1, 1, 3});
  ASSERT_EQ(rows.size(), 9u);
  for (const auto& r : rows) EXPECT_EQ(*r.report.sector_sum, std::make_pair(0, 0));
  EXPECT_DOUBLE_EQ(rows[0].report.couplings.mu1, -1.0);
  EXPECT_DOUBLE_EQ(rows[1].report.couplings.mu1, -1.0);
  EXPECT_DOUBLE_EQ(rows[1].report.couplings.mu2, 0.0);
  EXPECT_DOUBLE_EQ(rows[3].report.couplings.mu1, 0.0);
  EXPECT_THROW(phase_scan({0, 1, 1}, {0, 1, 3}), PreconditionError);
}

TEST(PhaseScan, ThreadCountDoesNotChangeOutput) {
  ScanOptions one;
  one.threads = 1;
  ScanOptions many;
  many.threads = 4;
  const ScanAxis ax{-60, 60, 31};
  const auto a = phase_scan(ax, ax, one);
  const auto b = phase_scan(ax, ax, many);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].report.couplings, b[i].report.couplings);
    EXPECT_EQ(a[i].report.sector_sum, b[i].report.sector_sum);
    EXPECT_EQ(a[i].report.boundary, b[i].report.boundary);
  }
}

TEST(PhaseScan, OverfullPointsLieLeftOfPole) {
  const auto rows = phase_scan({-60, 60, 41}, {-60, 60, 41});
  const auto over = overfull_points(rows);
  EXPECT_FALSE(over.empty());
  for (const auto& r : over) {
    const auto& c = r.report.couplings;
    const bool low = r.report.sector_sum->first > 3;
    if (low) {
      EXPECT_LT(c.mu1, -12.0);
      EXPECT_LT(c.mu2, -ref::mu2_crit);
    } else {
      EXPECT_GT(c.mu1, 12.0);
      EXPECT_GT(c.mu2, ref::mu2_crit);
    }
  }
}

TEST(PhaseScan, DeterminantCountsAgreeAwayFromCurves) {
  ScanOptions opt;
  opt.verify = true;
  const auto rows = phase_scan({-37, 37, 9}, {-37, 37, 9}, opt);
  for (const auto& r : rows) {
    ASSERT_TRUE(r.det_counts);
    if (r.report.sector_sum) {
      EXPECT_EQ(*r.det_counts, *r.report.sector_sum)
          << r.report.couplings.mu1 << ',' << r.report.couplings.mu2;
    }
  }
}
