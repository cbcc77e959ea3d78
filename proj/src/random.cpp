#include "specsparse/random.hpp"

#include <algorithm>

#include "specsparse/graph.hpp"

namespace specsparse {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream, std::uint64_t index) {
  return splitmix64(splitmix64(splitmix64(root) ^ stream) ^ index);
}

VertexVector rademacher_vector(std::size_t n, std::mt19937_64& rng) {
  VertexVector v(n);
  // A constant draw projects to zero; draw again (probability 2^(1-n)).
  for (;;) {
    for (auto& x : v) x = (rng() >> 63) ? 1.0 : -1.0;
    if (n < 2 || std::any_of(v.begin(), v.end(), [&](double x) { return x != v.front(); })) break;
  }
  project_out_constant(v);
  return v;
}

}  // namespace specsparse
