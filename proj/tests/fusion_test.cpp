#include "latefuse/fusion.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace latefuse {
namespace {

constexpr double kPi = 3.14159265358979323846;

Detection det(double x, double var = 0.5, double theta = 0.0, int agent = 0,
              Category cat = Category::Car, double t = 0.0, double conf = 0.9) {
  return Detection(BBox3D(x, 1.0, 2.0, 4.0, 2.0, 1.5, theta),
                   DiagCovariance7(var, var, var, var, var, var, var), cat, agent, t, conf,
                   std::nullopt);
}

TEST(WlsFuse, SingleMemberIsIdentity) {
  const Detection d = det(3.0, 0.7, 1.2, 5);
  const FusedObject f = wls_fuse({d});
  EXPECT_DOUBLE_EQ(f.box.x, d.box.x);
  EXPECT_DOUBLE_EQ(f.box.theta, d.box.theta);
  EXPECT_DOUBLE_EQ(f.cov.var_x, d.cov.var_x);
  EXPECT_DOUBLE_EQ(f.cov.var_theta, d.cov.var_theta);
  EXPECT_DOUBLE_EQ(f.timestamp, d.timestamp);
  EXPECT_DOUBLE_EQ(f.confidence, d.confidence);
  ASSERT_EQ(f.sources.size(), 1u);
  EXPECT_EQ(f.sources[0].agent_id, 5);
  EXPECT_EQ(f.sources[0].index, 0);
}

TEST(WlsFuse, EqualCovarianceAveragesAndHalvesVariance) {
  const Detection a = det(0.0, 0.5, 0.2);
  Detection b = det(2.0, 0.5, 0.4);
  b = Detection(BBox3D(2.0, 3.0, 4.0, 5.0, 3.0, 2.5, 0.4), b.cov, b.category, 1, 1.0, 0.8,
                std::nullopt);
  const FusedObject f = wls_fuse({a, b});
  EXPECT_NEAR(f.box.x, 1.0, 1e-12);
  EXPECT_NEAR(f.box.y, 2.0, 1e-12);
  EXPECT_NEAR(f.box.z, 3.0, 1e-12);
  EXPECT_NEAR(f.box.l, 4.5, 1e-12);
  EXPECT_NEAR(f.box.w, 2.5, 1e-12);
  EXPECT_NEAR(f.box.h, 2.0, 1e-12);
  EXPECT_NEAR(f.box.theta, 0.3, 1e-12);
  EXPECT_NEAR(f.cov.var_x, 0.25, 1e-12);
  EXPECT_NEAR(f.cov.var_theta, 0.25, 1e-12);
  EXPECT_NEAR(f.timestamp, 0.5, 1e-12);  // equal informativeness
  EXPECT_DOUBLE_EQ(f.confidence, 0.9);   // max of members
}

TEST(WlsFuse, ScalarHandExample) {
  // x_1 = 0 with var 1, x_2 = 2 with var 4 -> 0.4 with var 0.8
  const Detection a = det(0.0, 1.0);
  Detection b = det(2.0, 1.0);
  DiagCovariance7 cov = b.cov;
  cov.var_x = 4.0;
  b = Detection(b.box, cov, b.category, b.agent_id, b.timestamp, b.confidence, b.gt_id);
  const FusedObject f = wls_fuse({a, b});
  EXPECT_NEAR(f.box.x, 0.4, 1e-12);
  EXPECT_NEAR(f.cov.var_x, 0.8, 1e-12);
}

TEST(WlsFuse, TimestampUsesTotalInformationWeights) {
  const Detection a = det(0.0, 1.0, 0.0, 0, Category::Car, 1.0);   // info 7
  const Detection b = det(0.0, 0.5, 0.0, 1, Category::Car, 4.0);   // info 14
  const FusedObject f = wls_fuse({a, b});
  EXPECT_NEAR(f.timestamp, (7.0 * 1.0 + 14.0 * 4.0) / 21.0, 1e-12);
}

TEST(WlsFuse, FusedVarianceBelowMinMember) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> var(0.05, 2.0);
  std::uniform_real_distribution<double> pos(-5.0, 5.0);
  std::uniform_int_distribution<int> size(2, 5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Detection> members;
    double min_var_x = 1e18;
    const int n = size(rng);
    for (int i = 0; i < n; ++i) {
      const double v = var(rng);
      min_var_x = std::min(min_var_x, v);
      members.push_back(det(pos(rng), v));
    }
    const FusedObject f = wls_fuse(members);
    EXPECT_LT(f.cov.var_x, min_var_x);  // strict for n >= 2
  }
}

TEST(WlsFuse, PermutationInvariant) {
  std::vector<Detection> members = {det(0.0, 0.3, 0.1), det(1.0, 0.7, 0.2),
                                    det(2.0, 1.3, -0.4)};
  const FusedObject f1 = wls_fuse(members);
  std::swap(members[0], members[2]);
  const FusedObject f2 = wls_fuse(members);
  EXPECT_NEAR(f1.box.x, f2.box.x, 1e-12);
  EXPECT_NEAR(f1.box.theta, f2.box.theta, 1e-12);
  EXPECT_NEAR(f1.cov.var_x, f2.cov.var_x, 1e-12);
  EXPECT_NEAR(f1.timestamp, f2.timestamp, 1e-12);
}

TEST(WlsFuse, CopiesOfOneDetectionAreAFixedPoint) {
  for (const int m : {2, 4}) {
    const Detection d = det(1.5, 0.25, 0.6);
    const FusedObject f = wls_fuse(std::vector<Detection>(m, d));
    EXPECT_DOUBLE_EQ(f.box.x, d.box.x);
    EXPECT_DOUBLE_EQ(f.box.y, d.box.y);
    EXPECT_DOUBLE_EQ(f.box.theta, d.box.theta);
    EXPECT_DOUBLE_EQ(f.cov.var_x, d.cov.var_x / m);
  }
}

TEST(WlsFuse, YawAveragingRespectsTheSeam) {
  const Detection a = det(0.0, 0.5, kPi - 0.01);
  const Detection b = det(0.0, 0.5, -kPi + 0.01);
  const FusedObject f = wls_fuse({a, b});
  EXPECT_NEAR(std::abs(f.box.theta), kPi, 1e-9);
}

TEST(WlsFuse, MatchesComponentwiseOracle) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> var(0.05, 3.0);
  std::uniform_real_distribution<double> pos(-10.0, 10.0);
  std::uniform_int_distribution<int> size(1, 6);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = size(rng);
    std::vector<Detection> members;
    for (int i = 0; i < n; ++i) {
      members.push_back(Detection(
          BBox3D(pos(rng), pos(rng), pos(rng), 1 + var(rng), 1 + var(rng), 1 + var(rng), 0.3),
          DiagCovariance7(var(rng), var(rng), var(rng), var(rng), var(rng), var(rng),
                          var(rng)),
          Category::Truck, i, 0.5, 0.7, std::nullopt));
    }
    const FusedObject f = wls_fuse(members);
    double num = 0.0, info = 0.0;
    for (const Detection& d : members) {
      num += d.box.y / d.cov.var_y;
      info += 1.0 / d.cov.var_y;
    }
    EXPECT_NEAR(f.box.y, num / info, 1e-10);
    EXPECT_NEAR(f.cov.var_y, 1.0 / info, 1e-10);
  }
}

TEST(WlsFuse, RejectsEmptyAndMixedCategories) {
  EXPECT_THROW(wls_fuse({}), std::invalid_argument);
  const Detection car = det(0.0);
  const Detection walker = det(0.2, 0.5, 0.0, 1, Category::Pedestrian);
  EXPECT_THROW(wls_fuse({car, walker}), std::invalid_argument);
  EXPECT_THROW(wls_fuse({car}, std::vector<SourceRef>{}), std::invalid_argument);
}

TEST(FuseFrame, SingleAgentPassesThrough) {
  std::vector<Detection> dets = {det(0.0, 0.5, 0.0, 2), det(30.0, 0.5, 0.0, 2)};
  const auto out = fuse_frame(Frame::group_by_agent(0.0, dets), CsbaParams{});
  ASSERT_EQ(out.size(), 2u);
  EXPECT_DOUBLE_EQ(out[0].box.x, 0.0);
  EXPECT_DOUBLE_EQ(out[0].cov.var_x, 0.5);
  EXPECT_DOUBLE_EQ(out[1].box.x, 30.0);
}

TEST(FuseFrame, TwoAgentsOneObjectEach) {
  std::vector<Detection> dets = {det(0.0, 0.5, 0.0, 1), det(0.4, 0.5, 0.0, 2),
                                 det(30.0, 0.5, 0.0, 1), det(30.4, 0.5, 0.0, 2)};
  const auto out = fuse_frame(Frame::group_by_agent(0.0, dets), CsbaParams{});
  ASSERT_EQ(out.size(), 2u);
  EXPECT_NEAR(out[0].box.x, 0.2, 1e-12);
  EXPECT_EQ(out[0].sources.size(), 2u);
  EXPECT_NEAR(out[1].box.x, 30.2, 1e-12);
}

TEST(FuseFrame, UnsharedObjectSurvivesAsSingleton) {
  std::vector<Detection> dets = {det(0.0, 0.5, 0.0, 1), det(0.4, 0.5, 0.0, 2),
                                 det(60.0, 0.5, 0.0, 1)};
  const auto out = fuse_frame(Frame::group_by_agent(0.0, dets), CsbaParams{});
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[1].sources.size(), 1u);
  EXPECT_DOUBLE_EQ(out[1].box.x, 60.0);
  EXPECT_DOUBLE_EQ(out[1].cov.var_x, 0.5);
}

}  // namespace
}  // namespace latefuse
