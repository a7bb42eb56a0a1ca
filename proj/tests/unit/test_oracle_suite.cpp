#include <sstream>

#include <gtest/gtest.h>

#include "tmsbell/error.hpp"
#include "tmsbell/oracle_suite.hpp"

namespace tmsbell {
namespace {

TEST(OracleScope, Parse) {
  EXPECT_EQ(parse_oracle_scope("fock"), OracleScope::kFock);
  EXPECT_EQ(parse_oracle_scope("convolution"), OracleScope::kConvolution);
  EXPECT_EQ(parse_oracle_scope("superposition"), OracleScope::kSuperposition);
  EXPECT_EQ(parse_oracle_scope("dominance"), OracleScope::kDominance);
  EXPECT_EQ(parse_oracle_scope("all"), OracleScope::kAll);
  EXPECT_THROW(parse_oracle_scope("everything"), InvalidInput);
}

TEST(RunOracles, FockScopeSmallLattice) {
  OracleOptions opt;
  opt.scope = OracleScope::kFock;
  opt.s_values = {0.0, 0.4};
  opt.nbar_values = {0.0};
  opt.r_values = {0.0};
  opt.fock_points = 20;
  const auto report = run_oracles(opt);
  ASSERT_FALSE(report.checks.empty());
  EXPECT_TRUE(report.passed());
  std::ostringstream out;
  report.print(out);
  EXPECT_NE(out.str().find("fock."), std::string::npos);
}

TEST(RunOracles, ConvolutionSlice) {
  OracleOptions opt;
  opt.scope = OracleScope::kConvolution;
  opt.s_values = {0.5};
  opt.nbar_values = {1.0};
  opt.r_values = {0.5};
  opt.quad_nodes = 24;
  opt.convolution_points = 2;
  const auto report = run_oracles(opt);
  ASSERT_EQ(report.checks.size(), 1u);
  EXPECT_TRUE(report.passed()) << report.checks[0].worst_deviation;
}

TEST(RunOracles, DominanceScope) {
  OracleOptions opt;
  opt.scope = OracleScope::kDominance;
  opt.s_values = {1.0};
  opt.nbar_values = {0.0, 1.0};
  opt.r_values = {0.3};
  opt.dominance_samples = 500;
  EXPECT_TRUE(run_oracles(opt).passed());
}

}  // namespace
}  // namespace tmsbell
