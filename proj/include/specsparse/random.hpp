#pragma once

#include <cstdint>
#include <random>

#include "specsparse/types.hpp"

namespace specsparse {

/// Counter-based seed splitting: every (stream, index) pair drawn from one
/// root seed yields an independent deterministic generator seed.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream, std::uint64_t index = 0);

/// Named random streams so modules never share a generator.
enum class Stream : std::uint64_t {
  kGraph = 1,
  kTree = 2,
  kHeat = 3,
  kLambdaMax = 4,
  kRhs = 5,
  kFiedler = 6,
  kOracle = 7,
};

inline std::mt19937_64 make_rng(std::uint64_t root, Stream stream, std::uint64_t index = 0) {
  return std::mt19937_64(derive_seed(root, static_cast<std::uint64_t>(stream), index));
}

/// Uniform +-1 entries with the all-ones component removed. Constant draws
/// are rejected, so the result is nonzero for n >= 2.
VertexVector rademacher_vector(std::size_t n, std::mt19937_64& rng);

}  // namespace specsparse
