#include "lgcn/graph/hyperbolicity.hpp"

#include <algorithm>
#include <array>
#include <vector>

#include "lgcn/errors.hpp"
#include "lgcn/util/parallel.hpp"
#include "lgcn/util/rng.hpp"

namespace lgcn {

std::optional<double> delta_quadruple(const DistanceMatrix& d, NodeId v1, NodeId v2, NodeId v3, NodeId v4) {
  const std::array<NodeId, 4> v{v1, v2, v3, v4};
  for (std::size_t i = 0; i < 4; ++i) {
    detail::require(v[i] < d.size(), "delta_quadruple: node out of range");
    for (std::size_t j = i + 1; j < 4; ++j) {
      detail::require(v[i] != v[j], "delta_quadruple: nodes must be distinct");
      if (!d.reachable(v[i], v[j])) return std::nullopt;
    }
  }
  std::array<std::int64_t, 3> sums{
      std::int64_t{d(v1, v2)} + d(v3, v4),
      std::int64_t{d(v1, v3)} + d(v2, v4),
      std::int64_t{d(v1, v4)} + d(v2, v3),
  };
  std::sort(sums.begin(), sums.end());
  return static_cast<double>(sums[2] - sums[1]) / 2.0;
}

namespace {

struct Partial {
  double sum = 0.0;
  double worst = 0.0;
  std::size_t counted = 0;
  std::size_t skipped = 0;

  void add(const std::optional<double>& delta) {
    if (!delta) {
      ++skipped;
      return;
    }
    sum += *delta;
    worst = std::max(worst, *delta);
    ++counted;
  }
};

HyperbolicityReport finish(const std::vector<Partial>& parts, std::string mode) {
  Partial total;
  for (const auto& p : parts) {
    total.sum += p.sum;
    total.worst = std::max(total.worst, p.worst);
    total.counted += p.counted;
    total.skipped += p.skipped;
  }
  if (total.counted == 0) throw UndefinedMetric("hyperbolicity: every quadruple has a disconnected pair");
  return {total.sum / static_cast<double>(total.counted), total.worst, std::move(mode), total.counted, total.skipped};
}

}  // namespace

HyperbolicityReport delta_hyperbolicity(const DistanceMatrix& d, const HyperbolicityMode& mode) {
  const std::size_t n = d.size();
  if (n < 4) throw UndefinedMetric("hyperbolicity: needs at least 4 nodes, graph has " + std::to_string(n));

  if (mode.kind == HyperbolicityMode::Kind::kExact) {
    detail::require(n <= mode.exact_cap, "hyperbolicity: exact mode limited to " + std::to_string(mode.exact_cap) +
                                             " nodes; use sampled mode");
    // Half-integer sums are exact in double, so chunk order does not matter.
    std::vector<Partial> parts(n);
    parallel_chunks(n, 1, [&](std::size_t a, std::size_t, std::size_t) {
      auto& p = parts[a];
      for (std::size_t b = a + 1; b < n; ++b)
        for (std::size_t c = b + 1; c < n; ++c)
          for (std::size_t e = c + 1; e < n; ++e)
            p.add(delta_quadruple(d, static_cast<NodeId>(a), static_cast<NodeId>(b), static_cast<NodeId>(c),
                                  static_cast<NodeId>(e)));
    });
    return finish(parts, mode.name());
  }

  detail::require(mode.samples >= 1, "hyperbolicity: sampled mode needs at least one sample");
  constexpr std::size_t kChunk = 4096;
  const std::size_t chunks = (mode.samples + kChunk - 1) / kChunk;
  std::vector<Partial> parts(chunks);
  parallel_chunks(mode.samples, kChunk, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    auto rng = derive_rng(mode.seed, Stream::kSampling, chunk);
    auto& p = parts[chunk];
    for (std::size_t s = begin; s < end; ++s) {
      std::array<NodeId, 4> q{};
      for (std::size_t k = 0; k < 4; ++k) {
        bool fresh = false;
        while (!fresh) {
          q[k] = static_cast<NodeId>(uniform_index(rng, n));
          fresh = std::find(q.begin(), q.begin() + static_cast<std::ptrdiff_t>(k), q[k]) ==
                  q.begin() + static_cast<std::ptrdiff_t>(k);
        }
      }
      p.add(delta_quadruple(d, q[0], q[1], q[2], q[3]));
    }
  });
  return finish(parts, mode.name());
}

HyperbolicityReport delta_hyperbolicity(const Adjacency& graph, const HyperbolicityMode& mode) {
  if (graph.node_count() < 4)
    throw UndefinedMetric("hyperbolicity: needs at least 4 nodes, graph has " + std::to_string(graph.node_count()));
  return delta_hyperbolicity(all_pairs_distances(graph), mode);
}

}  // namespace lgcn
