#pragma once

#include <string>
#include <vector>

namespace su2crit {

struct SelftestRow {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  double seconds = 0.0;
};

/// Oracle identities of the density and root-finding layers. Quick mode
/// covers the algebra, quadrature and root checks; full mode adds the
/// large-n asymptotic gap sequence (up to n = 800), the mass truncation and
/// the finite-difference covariance oracle.
std::vector<SelftestRow> run_selftest(bool full);

}  // namespace su2crit
