#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace tmsbell {

enum class OracleScope { kFock, kConvolution, kSuperposition, kDominance, kAll };

OracleScope parse_oracle_scope(const std::string& name);

/// Empty lists fall back to the default lattice of each oracle.
struct OracleOptions {
  OracleScope scope = OracleScope::kAll;
  std::vector<double> s_values;
  std::vector<double> nbar_values;
  std::vector<double> r_values;
  int cutoff = 0;  ///< 0 selects the cutoff from the geometric tail bound
  int quad_nodes = 32;
  int fock_points = 100;
  int convolution_points = 5;
  int dominance_samples = 10000;
  std::uint64_t seed = 7;
};

struct OracleCheck {
  std::string name;
  std::string parameters;
  double worst_deviation = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct OracleReport {
  std::vector<OracleCheck> checks;

  bool passed() const noexcept;
  void print(std::ostream& out) const;
};

OracleReport run_oracles(const OracleOptions& options);

}  // namespace tmsbell
