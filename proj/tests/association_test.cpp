#include "latefuse/association.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

namespace latefuse {
namespace {

constexpr double kPi = 3.14159265358979323846;

struct DetSpec {
  double x = 0, y = 0, z = 0;
  double l = 1, w = 1, h = 1;
  double theta = 0;
  double var_pos = 0.5;
  double var_size = 0.01;
  double var_theta = 0.01;
  Category category = Category::Car;
  int agent = 0;
  double t = 0.0;
};

Detection det(const DetSpec& s) {
  return Detection(BBox3D(s.x, s.y, s.z, s.l, s.w, s.h, s.theta),
                   DiagCovariance7(s.var_pos, s.var_pos, s.var_pos, s.var_size, s.var_size,
                                   s.var_size, s.var_theta),
                   s.category, s.agent, s.t, 0.9, std::nullopt);
}

TEST(VolumeSigma, HandExample) {
  // 10% deviation on each extent of a 4 x 2 x 1.5 box
  const double s = volume_sigma(BBox3D(0, 0, 0, 4, 2, 1.5, 0), 0.4, 0.2, 0.15);
  EXPECT_NEAR(s, 12.0 * std::sqrt(0.03), 1e-12);
  EXPECT_NEAR(s, 2.078, 1e-3);
}

TEST(DimensionScore, IdenticalBoxesScoreOne) {
  const Detection a = det({});
  DetSpec bs;
  bs.var_size = 0.09;  // different uncertainty, same volume
  const Detection b = det(bs);
  EXPECT_DOUBLE_EQ(dimension_score(a, a), 1.0);
  EXPECT_DOUBLE_EQ(dimension_score(a, b), 1.0);
}

TEST(DimensionScore, HandDerivedRatioTwo) {
  // V_a = 2 with sigma_Va = 0.2, V_b = 1 with sigma_Vb = 0.1:
  // r = 2, sigma_r = 2 * sqrt(0.1^2 + 0.1^2), min z^2 = 3.125
  DetSpec as;
  as.l = 2;
  as.var_size = DiagCovariance7::kFloor;
  const Detection a = [&] {
    Detection d = det(as);
    DiagCovariance7 cov = d.cov;
    cov.var_w = 0.01;  // sigma_V contribution 2 * 0.1 / 1
    return Detection(d.box, cov, d.category, d.agent_id, d.timestamp, d.confidence, d.gt_id);
  }();
  DetSpec bs;
  bs.var_size = DiagCovariance7::kFloor;
  const Detection b = [&] {
    Detection d = det(bs);
    DiagCovariance7 cov = d.cov;
    cov.var_w = 0.01;
    return Detection(d.box, cov, d.category, d.agent_id, d.timestamp, d.confidence, d.gt_id);
  }();
  EXPECT_NEAR(dimension_score(a, b), std::exp(-1.5625), 1e-6);
  EXPECT_NEAR(dimension_score(a, b), 0.2096, 1e-4);
}

TEST(CenterScore, IdenticalCenters) {
  const Detection a = det({});
  EXPECT_DOUBLE_EQ(center_score(a, a, 3.0), 1.0);
}

TEST(CenterScore, EuclideanReductionAtIdentityCovariance) {
  // per-axis variance 0.5 on both sides sums to the identity
  const Detection a = det({});
  DetSpec bs;
  bs.x = 3.0;
  const Detection b = det(bs);
  EXPECT_NEAR(position_mahalanobis(a, b), 3.0, 1e-12);
  EXPECT_NEAR(center_score(a, b, 3.0), 0.0, 1e-12);
  EXPECT_NEAR(center_score(a, b, 2.0), -0.5, 1e-12);
}

TEST(OrientationScore, EqualYawEqualSigma) {
  DetSpec s;
  s.theta = 1.1;
  const Detection a = det(s);
  EXPECT_DOUBLE_EQ(orientation_score(a, a), 1.0);
}

TEST(OrientationScore, OppositeYawUnitSigma) {
  DetSpec as;
  as.var_theta = 1.0;
  DetSpec bs;
  bs.theta = kPi;
  bs.var_theta = 1.0;
  EXPECT_NEAR(orientation_score(det(as), det(bs)), 0.0, 1e-12);
}

TEST(OrientationScore, EqualYawUnequalSigmaIsNotOne) {
  // alpha_a = 0.5/0.1 = 5, alpha_b = 0.5/0.2 = 2.5
  DetSpec as;
  as.theta = 0.5;
  as.var_theta = 0.01;
  DetSpec bs;
  bs.theta = 0.5;
  bs.var_theta = 0.04;
  const double os = orientation_score(det(as), det(bs));
  EXPECT_NEAR(os, (1.0 + std::cos(2.5)) / 2.0, 1e-12);
  EXPECT_NEAR(os, 0.0994, 1e-4);
}

TEST(PairCost, IdenticalDetectionsCostZero) {
  const Detection a = det({});
  const auto c = pair_cost(a, a, CsbaParams{});
  ASSERT_TRUE(c.has_value());
  EXPECT_DOUBLE_EQ(*c, 0.0);
}

TEST(PairCost, BlendsScoresWithDefaultWeights) {
  // CS = 0.5 (d = 1.5 under identity covariance), OS = 0.5
  // (alpha gap pi/2), DS forced near 0.5 via the volume ratio.
  DetSpec as;
  as.l = 2.0;
  as.var_theta = 1.0;
  as.var_size = DiagCovariance7::kFloor;
  Detection a = det(as);
  {
    DiagCovariance7 cov = a.cov;
    cov.var_w = 0.0450845;  // sigma_r ~ 0.42466 so min z^2 = 2 ln 2
    a = Detection(a.box, cov, a.category, a.agent_id, a.timestamp, a.confidence, a.gt_id);
  }
  DetSpec bs;
  bs.x = 1.5;
  bs.theta = kPi / 2.0;
  bs.var_theta = 1.0;
  bs.var_size = DiagCovariance7::kFloor;
  const Detection b = det(bs);

  const double ds = dimension_score(a, b);
  const double cs = std::clamp(center_score(a, b, 3.0), 0.0, 1.0);
  const double os = orientation_score(a, b);
  EXPECT_NEAR(ds, 0.5, 2e-4);
  EXPECT_NEAR(cs, 0.5, 1e-12);
  EXPECT_NEAR(os, 0.5, 1e-12);

  const auto cost = pair_cost(a, b, CsbaParams{});
  ASSERT_TRUE(cost.has_value());
  EXPECT_NEAR(*cost, 0.2 * (1 - ds) + 0.5 * (1 - cs) + 0.3 * (1 - os), 1e-12);
  EXPECT_NEAR(*cost, 0.5, 1e-4);
}

TEST(PairCost, CategoryMismatchForbidden) {
  const Detection a = det({});
  DetSpec bs;
  bs.category = Category::Pedestrian;
  EXPECT_FALSE(pair_cost(a, det(bs), CsbaParams{}).has_value());
}

TEST(PairCost, SpecVerbatimGateRejectsNegativeCenterScore) {
  const Detection a = det({});
  DetSpec bs;
  bs.x = 3.2;  // d_M just past lambda_max = 3
  const Detection b = det(bs);
  CsbaParams verbatim;
  verbatim.gate_factor = 1.0;
  EXPECT_FALSE(pair_cost(a, b, verbatim).has_value());
  EXPECT_TRUE(pair_cost(a, b, CsbaParams{}).has_value());  // widened default gate
}

TEST(PairCost, CostGateRejectsExpensivePairs) {
  const Detection a = det({});
  DetSpec bs;
  bs.x = 2.9;
  const Detection b = det(bs);
  CsbaParams tight;
  tight.cost_gate = 0.05;
  EXPECT_FALSE(pair_cost(a, b, tight).has_value());
}

TEST(PairCost, RejectsInvalidWeights) {
  const Detection a = det({});
  CsbaParams zero;
  zero.w_ds = zero.w_cs = zero.w_os = 0.0;
  EXPECT_THROW(pair_cost(a, a, zero), std::invalid_argument);
  CsbaParams negative;
  negative.w_ds = -0.1;
  EXPECT_THROW(pair_cost(a, a, negative), std::invalid_argument);
}

DetSpec random_spec(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> pos(-4.0, 4.0);
  std::uniform_real_distribution<double> ext(0.4, 5.0);
  std::uniform_real_distribution<double> yaw(-kPi, kPi);
  std::uniform_real_distribution<double> var(0.01, 1.0);
  DetSpec s;
  s.x = pos(rng);
  s.y = pos(rng);
  s.z = pos(rng);
  s.l = ext(rng);
  s.w = ext(rng);
  s.h = ext(rng);
  s.theta = yaw(rng);
  s.var_pos = var(rng);
  s.var_size = var(rng) * 0.2;
  s.var_theta = var(rng) * 0.3;
  return s;
}

TEST(PairCost, SymmetryRangeAndSelfCostOnRandomPairs) {
  std::mt19937_64 rng(41);
  const CsbaParams p;
  for (int i = 0; i < 500; ++i) {
    const Detection a = det(random_spec(rng));
    const Detection b = det(random_spec(rng));
    EXPECT_DOUBLE_EQ(*pair_cost(a, a, p), 0.0);
    EXPECT_GE(dimension_score(a, b), 0.0);
    EXPECT_LE(dimension_score(a, b), 1.0);
    EXPECT_GE(orientation_score(a, b), 0.0);
    EXPECT_LE(orientation_score(a, b), 1.0);
    EXPECT_LE(center_score(a, b, p.lambda_max), 1.0);
    const auto ab = pair_cost(a, b, p);
    const auto ba = pair_cost(b, a, p);
    ASSERT_EQ(ab.has_value(), ba.has_value());
    if (ab) {
      EXPECT_NEAR(*ab, *ba, 1e-12);
      EXPECT_GE(*ab, 0.0);
      EXPECT_LE(*ab, 1.0);
    }
  }
}

std::vector<Detection> two_cars(double second_x, int agent) {
  DetSpec a;
  a.agent = agent;
  DetSpec b;
  b.x = second_x;
  b.agent = agent;
  return {det(a), det(b)};
}

TEST(AssociatePairwise, SingleIdenticalPair) {
  const std::vector<Detection> a = {det({})};
  std::vector<Detection> b = a;
  const PairAssociation r = associate_pairwise(a, b, CsbaParams{});
  ASSERT_EQ(r.pairs.size(), 1u);
  EXPECT_EQ(r.pairs[0], (std::pair<int, int>{0, 0}));
  EXPECT_DOUBLE_EQ(r.total_cost, 0.0);
  EXPECT_TRUE(r.unmatched_a.empty());
  EXPECT_TRUE(r.unmatched_b.empty());
}

TEST(AssociatePairwise, NeverMatchesAcrossTheGate) {
  const PairAssociation r =
      associate_pairwise(two_cars(50.0, 0), two_cars(50.0, 1), CsbaParams{});
  ASSERT_EQ(r.pairs.size(), 2u);
  EXPECT_EQ(r.pairs[0], (std::pair<int, int>{0, 0}));
  EXPECT_EQ(r.pairs[1], (std::pair<int, int>{1, 1}));
}

TEST(AssociatePairwise, ExtraDetectionStaysUnmatched) {
  std::vector<Detection> a = two_cars(12.0, 0);
  DetSpec far;
  far.x = 300.0;
  far.agent = 0;
  a.push_back(det(far));
  const std::vector<Detection> b = two_cars(12.0, 1);
  const PairAssociation r = associate_pairwise(a, b, CsbaParams{});
  EXPECT_EQ(r.pairs.size(), 2u);
  ASSERT_EQ(r.unmatched_a.size(), 1u);
  EXPECT_EQ(r.unmatched_a[0], 2);
  EXPECT_TRUE(r.unmatched_b.empty());
}

TEST(AssociatePairwise, EmptyInputs) {
  const std::vector<Detection> none;
  const std::vector<Detection> one = {det({})};
  const PairAssociation r1 = associate_pairwise(none, one, CsbaParams{});
  EXPECT_TRUE(r1.pairs.empty());
  ASSERT_EQ(r1.unmatched_b.size(), 1u);
  const PairAssociation r2 = associate_pairwise(one, none, CsbaParams{});
  EXPECT_TRUE(r2.pairs.empty());
  ASSERT_EQ(r2.unmatched_a.size(), 1u);
}

TEST(AssociatePairwise, ShrinkingLambdaNeverAddsMatches) {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Detection> a, b;
    for (int i = 0; i < 6; ++i) {
      DetSpec s = random_spec(rng);
      s.agent = 0;
      a.push_back(det(s));
      s = random_spec(rng);
      s.agent = 1;
      b.push_back(det(s));
    }
    std::size_t prev = 0;
    for (const double lambda : {0.5, 1.5, 3.0, 6.0, 12.0}) {
      CsbaParams p;
      p.lambda_max = lambda;
      const std::size_t n = associate_pairwise(a, b, p).pairs.size();
      EXPECT_GE(n, prev) << "lambda " << lambda;
      prev = n;
    }
  }
}

Frame frame_of(std::vector<Detection> dets, double t = 0.0) {
  return Frame::group_by_agent(t, dets);
}

TEST(AssociateMulti, SingleAgentYieldsSingletons) {
  const ClusterSet cs = associate_multi(frame_of(two_cars(20.0, 3)), CsbaParams{});
  ASSERT_EQ(cs.clusters.size(), 2u);
  for (const auto& cluster : cs.clusters) {
    ASSERT_EQ(cluster.size(), 1u);
    EXPECT_EQ(cluster[0].agent_id, 3);
  }
}

TEST(AssociateMulti, TwoAgentsMatchesPlusSingleton) {
  std::vector<Detection> all = two_cars(20.0, 1);
  const std::vector<Detection> b = two_cars(20.0, 2);
  all.insert(all.end(), b.begin(), b.end());
  DetSpec extra;
  extra.x = 60.0;
  extra.agent = 2;
  all.push_back(det(extra));
  const ClusterSet cs = associate_multi(frame_of(std::move(all)), CsbaParams{});
  ASSERT_EQ(cs.clusters.size(), 3u);
  EXPECT_EQ(cs.clusters[0].size(), 2u);
  EXPECT_EQ(cs.clusters[1].size(), 2u);
  EXPECT_EQ(cs.clusters[2].size(), 1u);
  EXPECT_EQ(cs.clusters[2][0].agent_id, 2);
}

TEST(AssociateMulti, ThreeAgentsOneObject) {
  std::vector<Detection> all;
  for (int agent = 1; agent <= 3; ++agent) {
    DetSpec s;
    s.x = 0.05 * agent;  // small offsets well inside the gate
    s.agent = agent;
    all.push_back(det(s));
  }
  const ClusterSet cs = associate_multi(frame_of(std::move(all)), CsbaParams{});
  ASSERT_EQ(cs.clusters.size(), 1u);
  EXPECT_EQ(cs.clusters[0].size(), 3u);
}

TEST(WindowGroup, EqualTimestampsMakeOneFrame) {
  std::vector<Detection> stream = two_cars(20.0, 0);
  const auto frames = window_group(stream, 0.1);
  ASSERT_EQ(frames.size(), 1u);
  EXPECT_DOUBLE_EQ(frames[0].timestamp, 0.0);
  EXPECT_EQ(frames[0].total_detections(), 2u);
}

TEST(WindowGroup, SplitsPastTheWindow) {
  std::vector<Detection> stream;
  for (const double t : {0.0, 0.05, 0.2}) {
    DetSpec s;
    s.t = t;
    stream.push_back(det(s));
  }
  const auto frames = window_group(stream, 0.1);
  ASSERT_EQ(frames.size(), 2u);
  EXPECT_DOUBLE_EQ(frames[0].timestamp, 0.0);
  EXPECT_EQ(frames[0].total_detections(), 2u);
  EXPECT_DOUBLE_EQ(frames[1].timestamp, 0.2);
  EXPECT_EQ(frames[1].total_detections(), 1u);
}

TEST(WindowGroup, ClosedUpperBoundAndEmptyStream) {
  EXPECT_TRUE(window_group({}, 0.1).empty());
  std::vector<Detection> stream;
  for (const double t : {0.0, 0.1}) {
    DetSpec s;
    s.t = t;
    stream.push_back(det(s));
  }
  EXPECT_EQ(window_group(stream, 0.1).size(), 1u);
}

TEST(WindowGroup, SortsUnorderedInput) {
  std::vector<Detection> stream;
  for (const double t : {0.3, 0.0, 0.31}) {
    DetSpec s;
    s.t = t;
    stream.push_back(det(s));
  }
  const auto frames = window_group(stream, 0.1);
  ASSERT_EQ(frames.size(), 2u);
  EXPECT_DOUBLE_EQ(frames[0].timestamp, 0.0);
  EXPECT_DOUBLE_EQ(frames[1].timestamp, 0.3);
  EXPECT_EQ(frames[1].total_detections(), 2u);
}

}  // namespace
}  // namespace latefuse
