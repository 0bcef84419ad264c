#pragma once

#include <utility>
#include <vector>

#include "rmtev/model.hpp"
#include "rmtev/stieltjes.hpp"

namespace rmtev {

enum class ContourRule { gauss_legendre, midpoint };

// Positively oriented rectangle with corners u_l +- i v0 and u_r +- i v0.
struct Contour {
  double u_l = 0.0;
  double u_r = 0.0;
  double v0 = 1.0;
  int nodes_per_side = 256;
  ContourRule rule = ContourRule::gauss_legendre;

  // Throws on degenerate geometry, a side through the origin, fewer than
  // 64 nodes per side ("insufficient resolution") or an odd node count
  // (which would put a node on the real axis).
  void validate() const;
  bool encloses(Interval support) const { return u_l < support.lo && u_r > support.hi; }
};

// Quadrature node: the contour integral of f is approximated by
// sum f(z) * weight.
struct ContourNode {
  cplx z;
  cplx weight;
};

std::vector<ContourNode> contour_nodes(const Contour& contour);

// Two rectangles are disjoint when one lies strictly inside the other.
bool contours_disjoint(const Contour& a, const Contour& b);

// Nested pair (outer v0 = 1, inner v0 = 0.5) around support_interval(h, c).
// With positive_left the left sides stay in (0, lo); this needs lo > 0.
std::pair<Contour, Contour> default_contours(const SpectralMeasure& h, double c, bool positive_left = false,
                                             int nodes_per_side = 256);

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n);

}  // namespace rmtev
