#include <gtest/gtest.h>

#include <cmath>

#include "pcf/dispatch.hpp"
#include "pcf/errors.hpp"
#include "pcf/maclaurin.hpp"
#include "test_util.hpp"

using namespace pcf;

namespace {

struct Golden {
  double a;
  cplx z, u;
};

// mpmath.pcfu at 40 digits.
const Golden kGolden[] = {
    {0.3, {1.0, 0.5}, {0.5282919523275651, -0.2654689532173233}},
    {5.0, {4.0, 2.0}, {7.518337807289738e-06, 1.7527339540131662e-06}},
    {-8.0, {6.0, 3.0}, {418.0897574529036, 1325.8609836707626}},
    {-25.0, {3.0, 4.0}, {-1.0084023469542004e+20, -6.5055347422443905e+19}},
    {30.0, {5.0, 1.0}, {3.582309297458794e-29, 9.171030720108336e-30}},
    {2.0, {20.0, 5.0}, {9.32276056281742e-45, -3.3208853541486457e-45}},
    {-3.0, {-1.0, -2.0}, {18.160602399132596, 8.379424184297314}},
    {12.5, {-10.0, 3.0}, {86526690592236.89, 64357146909450.516}},
    {1.5, {2.0, -3.0}, {0.006049694417766711, -0.27663064962763484}},
    {-0.3, {0.0, 0.2}, {1.1172134923086197, -0.049266666440825474}},
    {10.0, {0.0, 3.0}, {-0.0006018787267407104, -0.00018522500019498784}},
    {19.441362, {0.13497, 10.8052}, {1.0959266109268141e-07, -3.486067250952382e-08}},
    {40.0, {0.0, 0.0}, {1.2413021957973968e-24, 0.0}},
    {-45.0, {9.0, 0.0}, {-4.709922640077468e+26, 0.0}},
    {0.0, {0.0, 0.0}, {1.2162802142575202, 0.0}},
    {8.7, {2.33, 1.57}, {7.463353230721957e-07, 2.6749916389947705e-06}},
    {-2.5, {-3.0, 1.0}, {0.8769902737964131, 0.8875344304357424}},
};

}  // namespace

TEST(Dispatch, MethodNames) {
  for (MethodTag m : {MethodTag::Maclaurin, MethodTag::Integral, MethodTag::AiryType, MethodTag::Poincare}) {
    EXPECT_EQ(parse_method(method_name(m)), m);
  }
  EXPECT_EQ(method_name(MethodTag::ConnectionComposite), "connection");
  EXPECT_FALSE(parse_method("connection").has_value());
  EXPECT_FALSE(parse_method("bogus").has_value());
}

TEST(Dispatch, RegionRule) {
  EXPECT_EQ(select_method(0.0, 12.5), MethodTag::Poincare);
  EXPECT_EQ(select_method(6.0, 13.0), MethodTag::Integral);  // 13 = 12 + 6/6, not beyond
  EXPECT_EQ(select_method(25.0, 1.0), MethodTag::AiryType);
  EXPECT_EQ(select_method(-25.0, cplx(3, 4)), MethodTag::AiryType);
  EXPECT_EQ(select_method(30.0, cplx(17.0, 0.1)), MethodTag::Poincare);
  EXPECT_EQ(select_method(0.3, cplx(1, 0.5)), MethodTag::Maclaurin);
  EXPECT_EQ(select_method(5.0, cplx(4, 2)), MethodTag::Integral);
  EXPECT_EQ(select_method(10.5, cplx(1, 1)), MethodTag::Integral);
  EvalOptions no_fast;
  no_fast.maclaurin_fast_path = false;
  EXPECT_EQ(select_method(0.3, cplx(1, 0.5), no_fast), MethodTag::Integral);
}

TEST(Dispatch, IllConditionedSeriesFallsBackToIntegral) {
  const cplx z(2.4, 1.6);
  ASSERT_GT(u_maclaurin(9.0, z).condition, kMaclaurinMaxCondition);
  EXPECT_EQ(select_method(9.0, z), MethodTag::Integral);
}

TEST(Dispatch, GoldenValues) {
  for (const Golden& g : kGolden) {
    EvalResult r = u_pcf(g.a, g.z);
    EXPECT_REL(r.value, g.u, 1e-13) << "a=" << g.a << " z=" << g.z << " via " << method_name(r.method);
    EXPECT_GE(r.est_error, kBaselineError);
  }
}

TEST(Dispatch, ConnectionUsedOutsidePrincipalQuadrant) {
  EvalResult r = u_pcf(-3.0, cplx(-1.0, 2.0));
  EXPECT_EQ(r.method, MethodTag::ConnectionComposite);
  EXPECT_EQ(r.sub_first, select_method(-3.0, cplx(1.0, 2.0)));
  EXPECT_EQ(r.sub_second, select_method(3.0, cplx(2.0, 1.0)));
}

TEST(Dispatch, SchwarzReflectionIsExact) {
  for (const Golden& g : kGolden) {
    if (g.z.imag() == 0.0) continue;
    EXPECT_EQ(u_pcf(g.a, std::conj(g.z)).value, std::conj(u_pcf(g.a, g.z).value)) << g.a << g.z;
  }
}

TEST(Dispatch, RealArgumentGivesRealValue) {
  for (double a : {-25.0, -3.3, 0.0, 2.0, 15.0}) {
    for (double x : {-7.0, -1.0, 0.5, 4.0, 20.0}) {
      EXPECT_EQ(u_pcf(a, x).value.imag(), 0.0) << a << " " << x;
    }
  }
}

TEST(Dispatch, ConnectionAgreesWithSeries) {
  // Left half plane: the series needs no connection formula.
  for (double a : {-4.0, -0.7, 1.3, 3.0}) {
    for (cplx z : {cplx(-1.0, 0.5), cplx(-2.5, 1.5), cplx(-0.5, -2.0)}) {
      EvalResult r = u_pcf(a, z);
      ASSERT_EQ(r.method, MethodTag::ConnectionComposite);
      EXPECT_REL(r.value, u_maclaurin(a, z).value, 5e-13) << a << z;
    }
  }
}

TEST(Dispatch, GammaPoleIsHandled) {
  const cplx z(-3.0, 1.0);
  EvalResult r = u_pcf(-2.5, z);
  EXPECT_TRUE(r.has(kGammaPoleHandled));
  EXPECT_REL(r.value, (z * z - 1.0) * std::exp(-z * z / 4.0), 1e-13);
  EXPECT_EQ(connection_coefficient(-2.5), cplx(0.0));
  EXPECT_EQ(connection_coefficient(-0.5), cplx(0.0));
  EXPECT_REL(connection_coefficient(0.5), std::sqrt(2.0 * kPi) * exp_i_pi(0.0), 1e-15);
}

TEST(Dispatch, NearZeroIsFlagged) {
  // U(-5.2, x) vanishes at x = -1.6143840507445778.
  EvalResult r = u_pcf(-5.2, cplx(-1.6143840507445778, 1e-9));
  EXPECT_TRUE(r.has(kNearZeroOfU));
  EXPECT_GT(r.est_error, kBaselineError);
  EXPECT_FALSE(u_pcf(-5.2, cplx(-1.0, 1e-9)).has(kNearZeroOfU));
}

TEST(Dispatch, ForcedMethodsAgreeInOverlap) {
  EvalOptions o;
  for (MethodTag m : {MethodTag::Maclaurin, MethodTag::Integral}) {
    o.force = m;
    EXPECT_REL(u_pcf(0.3, cplx(1, 0.5), o).value, kGolden[0].u, 1e-13) << method_name(m);
  }
  o.force = MethodTag::Poincare;
  EXPECT_REL(u_pcf(2.0, cplx(20, 5), o).value, kGolden[5].u, 1e-13);
  o.force = MethodTag::AiryType;
  EXPECT_REL(u_pcf(-25.0, cplx(3, 4), o).value, kGolden[3].u, 1e-13);
}

TEST(Dispatch, Errors) {
  EXPECT_THROW(u_pcf(61.0, 1.0), DomainError);
  EXPECT_THROW(u_pcf(0.0, cplx(std::nan(""), 0.0)), DomainError);
  EXPECT_THROW(u_pcf(0.0, cplx(0.0, 60.0)), RangeError);
  EvalOptions o;
  o.force = MethodTag::ConnectionComposite;
  EXPECT_THROW(u_pcf(0.0, 1.0, o), DomainError);
  o.force = MethodTag::AiryType;
  EXPECT_THROW(u_pcf(1.0, 2.0, o), DomainError);
}
