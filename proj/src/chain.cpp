#include "gamcal/chain.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <json.hpp>

#include "gamcal/errors.hpp"

namespace gamcal {

namespace {

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// Sort a copy of the vertex ids, returning the permutation parity.
std::pair<std::vector<int>, int> canonical_face(const std::vector<int>& verts) {
  std::vector<int> sorted = verts;
  int swaps = 0;
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    for (std::size_t j = 0; j + 1 < sorted.size() - i; ++j) {
      if (sorted[j] > sorted[j + 1]) {
        std::swap(sorted[j], sorted[j + 1]);
        ++swaps;
      }
    }
  }
  return {sorted, (swaps % 2) ? -1 : 1};
}

}  // namespace

SimplexChain SimplexChain::from_simplices(
    int dim, const std::vector<std::vector<std::vector<double>>>& simplices) {
  SimplexChain chain;
  chain.ambient_dim = dim;
  if (simplices.empty()) throw Error("SimplexChain: empty simplex list");
  chain.simplex_dim = static_cast<int>(simplices.front().size()) - 1;
  if (chain.simplex_dim < 0) throw Error("SimplexChain: simplex without vertices");

  std::map<std::vector<double>, int> pool;
  for (std::size_t s = 0; s < simplices.size(); ++s) {
    const auto& simplex = simplices[s];
    if (static_cast<int>(simplex.size()) != chain.simplex_dim + 1) {
      throw Error("SimplexChain: simplex " + std::to_string(s) +
                  " has an inconsistent vertex count");
    }
    Cell cell;
    for (const auto& vertex : simplex) {
      if (static_cast<int>(vertex.size()) != dim) {
        throw Error("SimplexChain: vertex dimension mismatch in simplex " +
                    std::to_string(s));
      }
      for (double x : vertex) {
        if (!std::isfinite(x)) {
          throw Error("SimplexChain: non-finite vertex in simplex " + std::to_string(s));
        }
      }
      auto [it, inserted] = pool.try_emplace(vertex, static_cast<int>(chain.points.size()));
      if (inserted) chain.points.push_back(vertex);
      cell.vertices.push_back(it->second);
    }
    chain.cells.push_back(std::move(cell));
  }

  // Reject degenerate cells relative to their own edge scale.
  for (std::size_t c = 0; c < chain.cells.size(); ++c) {
    if (chain.simplex_dim == 0) continue;
    double edge_scale = 0.0;
    const auto& verts = chain.cells[c].vertices;
    for (std::size_t a = 0; a < verts.size(); ++a) {
      for (std::size_t b = a + 1; b < verts.size(); ++b) {
        double d2 = 0.0;
        for (int k = 0; k < dim; ++k) {
          const double d = chain.points[verts[a]][k] - chain.points[verts[b]][k];
          d2 += d * d;
        }
        edge_scale = std::max(edge_scale, std::sqrt(d2));
      }
    }
    const double vol = magnitude(chain.volume_element(c)) * factorial(chain.simplex_dim);
    if (vol <= 1e-12 * std::pow(std::max(edge_scale, 1e-30), chain.simplex_dim)) {
      throw Error("SimplexChain: degenerate simplex at index " + std::to_string(c));
    }
  }
  return chain;
}

Multivector SimplexChain::volume_element(std::size_t cell) const {
  const Cell& c = cells.at(cell);
  if (simplex_dim == 0) {
    return Multivector::scalar(ambient_dim, c.weight);
  }
  std::vector<Multivector> edges;
  const auto& base = points[c.vertices[0]];
  for (int k = 1; k <= simplex_dim; ++k) {
    std::vector<double> edge(ambient_dim);
    const auto& tip = points[c.vertices[k]];
    for (int j = 0; j < ambient_dim; ++j) edge[j] = tip[j] - base[j];
    edges.push_back(Multivector::vector(ambient_dim, edge));
  }
  return wedge_all(edges) * (c.weight / factorial(simplex_dim));
}

Multivector SimplexChain::centroid(std::size_t cell) const {
  const Cell& c = cells.at(cell);
  std::vector<double> mean(ambient_dim, 0.0);
  for (int v : c.vertices) {
    for (int j = 0; j < ambient_dim; ++j) mean[j] += points[v][j];
  }
  for (double& x : mean) x /= static_cast<double>(c.vertices.size());
  return Multivector::vector(ambient_dim, mean);
}

nlohmann::json SimplexChain::to_json() const {
  nlohmann::json j;
  j["dim"] = ambient_dim;
  j["simplex_dim"] = simplex_dim;
  nlohmann::json simplices = nlohmann::json::array();
  for (const Cell& cell : cells) {
    if (std::abs(std::abs(cell.weight) - 1.0) > 1e-12) {
      throw Error("SimplexChain: only unit orientation weights serialize");
    }
    std::vector<int> order = cell.vertices;
    if (cell.weight < 0.0) {
      if (simplex_dim == 0) {
        throw Error("SimplexChain: negatively oriented points do not serialize");
      }
      std::swap(order[0], order[1]);  // fold the sign into the vertex order
    }
    nlohmann::json simplex = nlohmann::json::array();
    for (int v : order) simplex.push_back(points[v]);
    simplices.push_back(std::move(simplex));
  }
  j["simplices"] = std::move(simplices);
  return j;
}

SimplexChain SimplexChain::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("simplices")) {
    throw ConfigError("simplex chain JSON needs 'dim' and 'simplices'");
  }
  const int dim = j.at("dim").get<int>();
  std::vector<std::vector<std::vector<double>>> simplices;
  for (const auto& simplex : j.at("simplices")) {
    std::vector<std::vector<double>> verts;
    for (const auto& vertex : simplex) {
      verts.push_back(vertex.get<std::vector<double>>());
    }
    simplices.push_back(std::move(verts));
  }
  if (simplices.empty()) throw ConfigError("simplex chain JSON holds no simplices");
  SimplexChain chain = from_simplices(dim, simplices);
  if (j.contains("simplex_dim") && j.at("simplex_dim").get<int>() != chain.simplex_dim) {
    throw ConfigError("simplex chain JSON declares a mismatched simplex_dim");
  }
  return chain;
}

Multivector directed_integral(const ChainIntegrand& L, const SimplexChain& chain) {
  if (!L) throw Error("directed_integral: missing integrand");
  Multivector total(chain.ambient_dim);
  for (std::size_t c = 0; c < chain.cell_count(); ++c) {
    const Multivector value = L(chain.volume_element(c), chain.centroid(c));
    if (!is_finite(value)) {
      throw Error("directed_integral: non-finite integrand at cell " + std::to_string(c));
    }
    total += value;
  }
  return total;
}

SimplexChain boundary_chain(const SimplexChain& chain) {
  if (chain.simplex_dim == 0) {
    throw Error("boundary_chain: a 0-chain has no boundary");
  }
  std::map<std::vector<int>, double> coefficients;
  for (const auto& cell : chain.cells) {
    for (std::size_t k = 0; k < cell.vertices.size(); ++k) {
      std::vector<int> face;
      for (std::size_t i = 0; i < cell.vertices.size(); ++i) {
        if (i != k) face.push_back(cell.vertices[i]);
      }
      const double face_sign = (k % 2) ? -1.0 : 1.0;
      auto [sorted, parity] = canonical_face(face);
      coefficients[sorted] += cell.weight * face_sign * parity;
    }
  }

  SimplexChain out;
  out.ambient_dim = chain.ambient_dim;
  out.simplex_dim = chain.simplex_dim - 1;
  out.points = chain.points;
  for (const auto& [face, coef] : coefficients) {
    if (std::abs(coef) < 1e-12) continue;
    if (std::abs(std::abs(coef) - 1.0) > 1e-12) {
      throw Error("boundary_chain: inconsistent orientation across a shared face");
    }
    out.cells.push_back({face, coef < 0.0 ? -1.0 : 1.0});
  }
  return out;
}

Multivector interior_derivative_integral(const ChainIntegrand& L,
                                         const SimplexChain& chain, StepSize h) {
  if (!L) throw Error("interior_derivative_integral: missing integrand");
  const int n = chain.ambient_dim;
  Multivector total(n);
  for (std::size_t c = 0; c < chain.cell_count(); ++c) {
    const Multivector dG = chain.volume_element(c);
    const Multivector q = chain.centroid(c);
    for (int j = 1; j <= n; ++j) {
      const Multivector ej = Multivector::basis_vector(n, j);
      const Multivector slot = inner(ej, dG);
      if (slot.is_zero()) continue;
      const Multivector lp = L(slot, q + h.value * ej);
      const Multivector lm = L(slot, q - h.value * ej);
      if (!is_finite(lp) || !is_finite(lm)) {
        throw Error("interior_derivative_integral: non-finite integrand near cell " +
                    std::to_string(c));
      }
      total += (lp - lm) / (2.0 * h.value);
    }
  }
  return total;
}

SimplexChain triangulated_rectangle(double u0, double u1, double v0, double v1, int nu,
                                    int nv) {
  return triangulated_graph(
      2, [](double u, double v) { return std::vector<double>{u, v}; }, u0, u1, v0, v1,
      nu, nv);
}

SimplexChain triangulated_graph(
    int dim, const std::function<std::vector<double>(double, double)>& embed, double u0,
    double u1, double v0, double v1, int nu, int nv) {
  if (nu < 1 || nv < 1) throw Error("triangulated_graph: need at least one cell per axis");
  std::vector<std::vector<std::vector<double>>> simplices;
  auto point = [&](int i, int j) {
    const double u = u0 + (u1 - u0) * static_cast<double>(i) / nu;
    const double v = v0 + (v1 - v0) * static_cast<double>(j) / nv;
    std::vector<double> p = embed(u, v);
    if (static_cast<int>(p.size()) != dim) {
      throw Error("triangulated_graph: embedding returned the wrong dimension");
    }
    return p;
  };
  for (int i = 0; i < nu; ++i) {
    for (int j = 0; j < nv; ++j) {
      const auto p00 = point(i, j);
      const auto p10 = point(i + 1, j);
      const auto p11 = point(i + 1, j + 1);
      const auto p01 = point(i, j + 1);
      simplices.push_back({p00, p10, p11});
      simplices.push_back({p00, p11, p01});
    }
  }
  return SimplexChain::from_simplices(dim, simplices);
}

SimplexChain segment_chain(int dim, const std::vector<std::vector<double>>& points) {
  if (points.size() < 2) throw Error("segment_chain: need at least two points");
  std::vector<std::vector<std::vector<double>>> simplices;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    simplices.push_back({points[i], points[i + 1]});
  }
  return SimplexChain::from_simplices(dim, simplices);
}

SimplexChain triangulated_disk(double radius, int rings, int sectors) {
  if (rings < 1 || sectors < 3) throw Error("triangulated_disk: mesh too coarse");
  auto ring_point = [&](int r, int s) {
    const double rho = radius * static_cast<double>(r) / rings;
    // Wrap the sector index so the seam reuses bit-identical coordinates.
    const double theta =
        2.0 * 3.14159265358979323846 * static_cast<double>(s % sectors) / sectors;
    return std::vector<double>{rho * std::cos(theta), rho * std::sin(theta)};
  };
  std::vector<std::vector<std::vector<double>>> simplices;
  for (int s = 0; s < sectors; ++s) {
    // Innermost fan around the center.
    simplices.push_back({{0.0, 0.0}, ring_point(1, s), ring_point(1, s + 1)});
  }
  for (int r = 1; r < rings; ++r) {
    for (int s = 0; s < sectors; ++s) {
      const auto a = ring_point(r, s);
      const auto b = ring_point(r + 1, s);
      const auto c = ring_point(r + 1, s + 1);
      const auto d = ring_point(r, s + 1);
      simplices.push_back({a, b, c});
      simplices.push_back({a, c, d});
    }
  }
  return SimplexChain::from_simplices(2, simplices);
}

}  // namespace gamcal
