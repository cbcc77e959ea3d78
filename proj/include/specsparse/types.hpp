#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace specsparse {

using Vertex = std::int32_t;
using EdgeId = std::int32_t;

/// One real value per graph vertex (voltages, right-hand sides, iterates).
using VertexVector = std::vector<double>;

struct Edge {
  Vertex p = 0;
  Vertex q = 0;
  double w = 0.0;
};

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid graph input: bad weight, self loop, disconnected, bad index.
class GraphError : public Error {
 public:
  using Error::Error;
};

/// Vector length does not match the vertex count.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Non-positive pivot in a Laplacian factorization.
class FactorizationError : public Error {
 public:
  FactorizationError(const std::string& what, Vertex vertex)
      : Error(what), vertex_(vertex) {}
  Vertex vertex() const { return vertex_; }

 private:
  Vertex vertex_;
};

/// Zero curvature direction in a Krylov recurrence.
class SolverBreakdown : public Error {
 public:
  using Error::Error;
};

}  // namespace specsparse
