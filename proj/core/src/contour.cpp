#include "rmtev/contour.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rmtev/error.hpp"

namespace rmtev {

void Contour::validate() const {
  if (!(u_l < u_r)) throw ConfigError("contour: u_l must be below u_r");
  if (!(v0 > 0.0)) throw ConfigError("contour: v0 must be positive");
  if (u_l == 0.0 || u_r == 0.0) throw ConfigError("contour: a side passes through 0");
  if (nodes_per_side < 64) throw ConfigError("contour: insufficient resolution");
  if (nodes_per_side % 2 != 0) throw ConfigError("contour: odd node count places a node on the real axis");
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  if (n < 1) throw ConfigError("gauss_legendre: n must be positive");
  std::vector<double> x(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n));
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double root = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = root;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * root * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (root * p1 - p0) / (root * root - 1.0);
      const double step = p1 / dp;
      root -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const double weight = 2.0 / ((1.0 - root * root) * dp * dp);
    x[static_cast<std::size_t>(i)] = -root;
    x[static_cast<std::size_t>(n - 1 - i)] = root;
    w[static_cast<std::size_t>(i)] = weight;
    w[static_cast<std::size_t>(n - 1 - i)] = weight;
  }
  if (n % 2 == 1) x[static_cast<std::size_t>(n / 2)] = 0.0;
  return {x, w};
}

std::vector<ContourNode> contour_nodes(const Contour& contour) {
  contour.validate();
  const int m = contour.nodes_per_side;

  // Positions s in (0, 1) along a side and their weights.
  std::vector<double> s(static_cast<std::size_t>(m)), w(static_cast<std::size_t>(m));
  if (contour.rule == ContourRule::gauss_legendre) {
    auto [x, gw] = gauss_legendre(m);
    for (int j = 0; j < m; ++j) {
      s[static_cast<std::size_t>(j)] = 0.5 * (x[static_cast<std::size_t>(j)] + 1.0);
      w[static_cast<std::size_t>(j)] = 0.5 * gw[static_cast<std::size_t>(j)];
    }
  } else {
    for (int j = 0; j < m; ++j) {
      s[static_cast<std::size_t>(j)] = (j + 0.5) / m;
      w[static_cast<std::size_t>(j)] = 1.0 / m;
    }
  }

  const cplx corners[4] = {{contour.u_l, -contour.v0},
                           {contour.u_r, -contour.v0},
                           {contour.u_r, contour.v0},
                           {contour.u_l, contour.v0}};
  std::vector<ContourNode> nodes;
  nodes.reserve(4 * static_cast<std::size_t>(m));
  for (int side = 0; side < 4; ++side) {
    const cplx a = corners[side];
    const cplx b = corners[(side + 1) % 4];
    for (std::size_t j = 0; j < s.size(); ++j) {
      cplx z = a + (b - a) * s[j];
      // Vertical sides are symmetric about the axis; keep nodes exactly
      // conjugate so mirrored solves line up.
      if (side % 2 == 1) z = cplx(a.real(), z.imag());
      nodes.push_back({z, (b - a) * w[j]});
    }
  }
  return nodes;
}

bool contours_disjoint(const Contour& a, const Contour& b) {
  const auto inside = [](const Contour& inner, const Contour& outer) {
    return outer.u_l < inner.u_l && inner.u_r < outer.u_r && inner.v0 < outer.v0;
  };
  return inside(a, b) || inside(b, a);
}

std::pair<Contour, Contour> default_contours(const SpectralMeasure& h, double c, bool positive_left,
                                             int nodes_per_side) {
  const Interval support = support_interval(h, c);
  const double right = 0.05 * support.hi;
  Contour outer{0.0, support.hi + right, 1.0, nodes_per_side, ContourRule::gauss_legendre};
  Contour inner{0.0, support.hi + 0.5 * right, 0.5, nodes_per_side, ContourRule::gauss_legendre};
  if (support.lo > 0.0) {
    const double left = std::min(0.5 * support.lo, right);
    outer.u_l = support.lo - left;
    inner.u_l = support.lo - 0.5 * left;
  } else {
    if (positive_left) throw ConfigError("contour: support reaches 0, no contour with u_l > 0 exists");
    outer.u_l = -right;
    inner.u_l = -0.5 * right;
  }
  outer.validate();
  inner.validate();
  return {outer, inner};
}

}  // namespace rmtev
