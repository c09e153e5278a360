#pragma once

#include "goldshift/qsqrt5.hpp"
#include "goldshift/tms.hpp"

#include <array>
#include <vector>

namespace goldshift {

// Geometry of the golden cat map A = [[1, 1], [1, 0]] on R^2 / Z^2, in
// eigen-coordinates p = u e_u + s e_s with e_u = (phi, 1), e_s = (1, -phi).
// The map acts as (u, s) -> (phi u, -s / phi).

struct Rect {
  QSqrt5 u0, u1, s0, s1;
  bool empty() const { return !(u0 < u1) || !(s0 < s1); }
  QSqrt5 area() const;  // Lebesgue area on the torus
};

struct TorusPoint {
  double x = 0, y = 0;
};

// Markov partition R_1, R_2, R_3 (index 0..2).
const std::array<Rect, 3>& torus_partition();
// Lattice vectors (1, 0) and (0, 1) in eigen-coordinates.
std::array<QSqrt5, 2> lattice_u();
std::array<QSqrt5, 2> lattice_s();

Rect image(const Rect& r);          // f(r)
Rect preimage(const Rect& r);       // f^{-1}(r)
Rect intersect(const Rect& a, const Rect& b);
Rect translate(const Rect& r, int a, int b);

// Pieces of a ∩ (b + Z^2), each located inside a.
std::vector<Rect> intersect_mod_lattice(const Rect& a, const Rect& b, int reach = 4);

// Leb(f(R_i) ∩ R_j) / Leb(R_i).
QSqrt5 transition_fraction(State i, State j);
AdjacencyMatrix markov_adjacency();

// Pieces of R_{w_0} ∩ f^{-1} R_{w_1} ∩ ... ∩ f^{-(k-1)} R_{w_{k-1}}.
std::vector<Rect> cylinder_cell(const std::vector<State>& w);
QSqrt5 stationary_cylinder_mass(const std::vector<State>& w);  // mu_Q([w]) exactly

struct PushforwardReport {
  int depth = 0;
  std::size_t words = 0;
  QSqrt5 max_residual;  // max |Leb(cell) - mu_Q| over all words
  bool exact() const { return max_residual == QSqrt5(0); }
};

PushforwardReport pushforward_check(int depth);

TorusPoint apply_f(TorusPoint p);
TorusPoint apply_f_inverse(TorusPoint p);
TorusPoint to_xy(const QSqrt5& u, const QSqrt5& s);
// Region containing p (half-open rectangles), with the distance to its edge.
struct RegionHit {
  int region = -1;
  double margin = 0;
};
RegionHit region_of(TorusPoint p);

struct Itinerary {
  Word word;
  double min_margin = 0;
  bool reliable = false;
};
// Word over [-N, N] with w_n the region of f^n(p).
Itinerary itinerary(TorusPoint p, int N, double margin = 1e-9);

struct PhiApprox {
  TorusPoint point;
  double bound = 0;  // Euclidean radius guaranteed to contain phi(x)
  Rect cell;
};

// Point coded by x on [-N, N]; x must cover a symmetric window around 0.
PhiApprox phi_approx(const Word& x);

// Corners (x, y) of each region, counter-clockwise, for plotting.
std::vector<std::array<TorusPoint, 4>> region_polygons();

}  // namespace goldshift
