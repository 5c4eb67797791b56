#pragma once

// Gromov four-point hyperbolicity. For a quadruple, the three pairings
// d(a,b)+d(c,d), d(a,c)+d(b,d), d(a,d)+d(b,c) are sorted S <= M <= L and
// delta+ = (L - M) / 2. delta_avg averages delta+ over quadruples,
// delta_worst takes the maximum.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "lgcn/adjacency.hpp"
#include "lgcn/graph/distances.hpp"

namespace lgcn {

/// nullopt when some pair of the quadruple is disconnected.
/// Throws ContractViolation unless the four nodes are distinct.
std::optional<double> delta_quadruple(const DistanceMatrix& d, NodeId v1, NodeId v2, NodeId v3, NodeId v4);

struct HyperbolicityMode {
  enum class Kind { kExact, kSampled };

  Kind kind = Kind::kExact;
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
  std::size_t exact_cap = 30;  ///< exact mode refuses larger graphs (O(n^4))

  static HyperbolicityMode exact(std::size_t cap = 30) { return {Kind::kExact, 0, 0, cap}; }
  static HyperbolicityMode sampled(std::size_t samples, std::uint64_t seed) {
    return {Kind::kSampled, samples, seed, 30};
  }
  std::string name() const { return kind == Kind::kExact ? "exact" : "sampled"; }
};

struct HyperbolicityReport {
  double delta_avg = 0.0;
  double delta_worst = 0.0;
  std::string mode;
  std::size_t quadruples = 0;  ///< counted (finite) quadruples
  std::size_t skipped = 0;     ///< quadruples with a disconnected pair
};

/// Throws UndefinedMetric for n < 4 or when every quadruple was skipped, and
/// ContractViolation when exact mode exceeds the cap.
HyperbolicityReport delta_hyperbolicity(const DistanceMatrix& d, const HyperbolicityMode& mode);
HyperbolicityReport delta_hyperbolicity(const Adjacency& graph, const HyperbolicityMode& mode);

}  // namespace lgcn
