#pragma once

#include <functional>
#include <vector>

#include <json.hpp>

#include "gamcal/calculus.hpp"
#include "gamcal/multivector.hpp"

namespace gamcal {

// Oriented chain of D-simplices embedded in R^n. Vertices are pooled and
// cells reference them by index; each cell carries an orientation weight of
// +1 or -1 on top of its vertex order. The directed volume element of a cell
// with vertices v_0..v_D is weight * (v_1-v_0) ^ ... ^ (v_D-v_0) / D!.
struct SimplexChain {
  int ambient_dim = 0;
  int simplex_dim = 0;

  struct Cell {
    std::vector<int> vertices;
    double weight = 1.0;
  };

  std::vector<std::vector<double>> points;
  std::vector<Cell> cells;

  // Build from explicit simplices, each a list of D+1 vertex coordinate
  // arrays. Vertices are deduplicated by exact coordinate match. Degenerate
  // simplices (directed volume ~ 0 relative to the edge scale) are rejected.
  static SimplexChain from_simplices(
      int dim, const std::vector<std::vector<std::vector<double>>>& simplices);

  std::size_t cell_count() const { return cells.size(); }
  Multivector volume_element(std::size_t cell) const;
  Multivector centroid(std::size_t cell) const;

  // JSON form {dim, simplex_dim, simplices: [[vertex arrays]]}. Orientation
  // weights of -1 are folded into the vertex order on write.
  nlohmann::json to_json() const;
  static SimplexChain from_json(const nlohmann::json& j);
};

// Integrand L(dGamma; q), linear in its first (directed measure) slot.
using ChainIntegrand =
    std::function<Multivector(const Multivector&, const Multivector&)>;

// Riemann sum of L over the chain: one evaluation per cell at its centroid
// with the cell's directed volume element.
Multivector directed_integral(const ChainIntegrand& L, const SimplexChain& chain);

// Oriented boundary: the k-th face of each cell (drop vertex k) enters with
// sign (-1)^k; faces shared with opposite orientation cancel exactly. A face
// that accumulates a coefficient outside {-1, 0, +1} marks an inconsistently
// oriented input and raises an error.
SimplexChain boundary_chain(const SimplexChain& chain);

// Interior integral sum over cells of sum_j (e_j . d) L(e_j . dGamma; q),
// the quantity that a boundary integral of L reproduces in the limit. The
// contraction order matters: e_j . dGamma keeps the simplicial boundary
// orientation and this sum consistent in every measure grade.
Multivector interior_derivative_integral(const ChainIntegrand& L,
                                         const SimplexChain& chain,
                                         StepSize h = StepSize{});

// Triangulated axis-aligned rectangle in R^2, counterclockwise orientation.
SimplexChain triangulated_rectangle(double u0, double u1, double v0, double v1,
                                    int nu, int nv);

// Triangulated image of [u0,u1] x [v0,v1] under an embedding into R^n.
SimplexChain triangulated_graph(
    int dim, const std::function<std::vector<double>(double, double)>& embed,
    double u0, double u1, double v0, double v1, int nu, int nv);

// Oriented polyline through the given points (a 1-chain of segments).
SimplexChain segment_chain(int dim, const std::vector<std::vector<double>>& points);

// Triangulated disk of the given radius about the origin of R^2,
// counterclockwise orientation.
SimplexChain triangulated_disk(double radius, int rings, int sectors);

}  // namespace gamcal
