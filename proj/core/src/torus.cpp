#include "goldshift/torus.hpp"

#include "goldshift/errors.hpp"

#include <algorithm>
#include <cmath>

namespace goldshift {

namespace {

const QSqrt5 kInvSqrt5{0, Rational(1, 5)};                 // 1/sqrt5
const QSqrt5 kInvPhiSqrt5{Rational(1, 2), Rational(-1, 10)};  // 1/(phi sqrt5)
const QSqrt5 kInvPhi2Sqrt5{Rational(-1, 2), Rational(3, 10)}; // 1/(phi^2 sqrt5)

QSqrt5 jacobian() { return QSqrt5::phi() * QSqrt5::sqrt5(); }

std::array<double, 2> to_us(TorusPoint p) {
  const double j = kPhi * std::sqrt(5.0);
  return {(kPhi * p.x + p.y) / j, (p.x - kPhi * p.y) / j};
}

}  // namespace

QSqrt5 Rect::area() const { return empty() ? QSqrt5(0) : (u1 - u0) * (s1 - s0) * jacobian(); }

const std::array<Rect, 3>& torus_partition() {
  static const std::array<Rect, 3> parts = {
      Rect{0, kInvSqrt5, kInvPhi2Sqrt5, kInvSqrt5},
      Rect{0, kInvSqrt5, 0, kInvPhi2Sqrt5},
      Rect{kInvSqrt5, kInvSqrt5 + kInvPhiSqrt5, 0, kInvPhiSqrt5},
  };
  return parts;
}

std::array<QSqrt5, 2> lattice_u() { return {kInvSqrt5, kInvPhiSqrt5}; }
std::array<QSqrt5, 2> lattice_s() { return {kInvPhiSqrt5, -kInvSqrt5}; }

Rect image(const Rect& r) {
  const QSqrt5 phi = QSqrt5::phi(), inv = phi - 1;
  return {phi * r.u0, phi * r.u1, -r.s1 * inv, -r.s0 * inv};
}

Rect preimage(const Rect& r) {
  const QSqrt5 phi = QSqrt5::phi(), inv = phi - 1;
  return {r.u0 * inv, r.u1 * inv, -phi * r.s1, -phi * r.s0};
}

Rect intersect(const Rect& a, const Rect& b) {
  return {max(a.u0, b.u0), min(a.u1, b.u1), max(a.s0, b.s0), min(a.s1, b.s1)};
}

Rect translate(const Rect& r, int a, int b) {
  const auto lu = lattice_u();
  const auto ls = lattice_s();
  const QSqrt5 du = lu[0] * a + lu[1] * b, ds = ls[0] * a + ls[1] * b;
  return {r.u0 + du, r.u1 + du, r.s0 + ds, r.s1 + ds};
}

std::vector<Rect> intersect_mod_lattice(const Rect& a, const Rect& b, int reach) {
  static const double lu0 = lattice_u()[0].to_double(), lu1 = lattice_u()[1].to_double();
  static const double ls0 = lattice_s()[0].to_double(), ls1 = lattice_s()[1].to_double();
  const double au0 = a.u0.to_double(), au1 = a.u1.to_double(), as0 = a.s0.to_double(), as1 = a.s1.to_double();
  const double bu0 = b.u0.to_double(), bu1 = b.u1.to_double(), bs0 = b.s0.to_double(), bs1 = b.s1.to_double();
  constexpr double slack = 1e-9;
  std::vector<Rect> out;
  for (int i = -reach; i <= reach; ++i)
    for (int j = -reach; j <= reach; ++j) {
      // Cheap rejection before the exact test.
      const double du = i * lu0 + j * lu1, ds = i * ls0 + j * ls1;
      if (bu0 + du > au1 + slack || bu1 + du < au0 - slack || bs0 + ds > as1 + slack || bs1 + ds < as0 - slack)
        continue;
      Rect r = intersect(a, translate(b, i, j));
      if (!r.empty()) out.push_back(std::move(r));
    }
  return out;
}

QSqrt5 transition_fraction(State i, State j) {
  const auto& R = torus_partition();
  QSqrt5 area = 0;
  for (const auto& piece : intersect_mod_lattice(R.at(j), image(R.at(i)))) area += piece.area();
  return area / R.at(i).area();
}

AdjacencyMatrix markov_adjacency() {
  std::vector<std::vector<int>> rows(3, std::vector<int>(3, 0));
  for (State i = 0; i < 3; ++i)
    for (State j = 0; j < 3; ++j) rows[i][j] = transition_fraction(i, j).sign() > 0;
  return AdjacencyMatrix(rows);
}

std::vector<Rect> cylinder_cell(const std::vector<State>& w) {
  if (w.empty()) throw InputError("cylinder_cell: empty word");
  const auto& R = torus_partition();
  std::vector<Rect> cell{R.at(w.back())};
  for (std::size_t k = w.size() - 1; k-- > 0;) {
    std::vector<Rect> next;
    for (const auto& piece : cell)
      for (auto& r : intersect_mod_lattice(R.at(w[k]), preimage(piece))) next.push_back(std::move(r));
    cell = std::move(next);
  }
  return cell;
}

QSqrt5 stationary_cylinder_mass(const std::vector<State>& w) {
  if (w.empty()) throw InputError("stationary_cylinder_mass: empty word");
  const QSqrt5 phi = QSqrt5::phi();
  const QSqrt5 pi[3] = {kInvSqrt5, kInvPhiSqrt5, kInvPhiSqrt5};
  const QSqrt5 inv_phi = QSqrt5(1) / phi, inv_phi2 = inv_phi * inv_phi;
  const QSqrt5 q[3][3] = {{inv_phi, 0, inv_phi2}, {inv_phi, 0, inv_phi2}, {0, 1, 0}};
  QSqrt5 m = pi[w[0]];
  for (std::size_t i = 0; i + 1 < w.size(); ++i) m *= q[w[i]][w[i + 1]];
  return m;
}

PushforwardReport pushforward_check(int depth) {
  if (depth < 1 || depth > 16) throw InputError("pushforward_check: depth must be in [1, 16]");
  PushforwardReport rep;
  rep.depth = depth;
  const auto adj = AdjacencyMatrix::golden();
  for (int len = 1; len <= depth; ++len)
    for (const Word& w : enumerate_admissible(adj, static_cast<std::size_t>(len))) {
      QSqrt5 leb = 0;
      for (const auto& r : cylinder_cell(w.symbols)) leb += r.area();
      QSqrt5 diff = leb - stationary_cylinder_mass(w.symbols);
      if (diff.sign() < 0) diff = -diff;
      rep.max_residual = max(rep.max_residual, diff);
      ++rep.words;
    }
  return rep;
}

TorusPoint apply_f(TorusPoint p) {
  const double x = p.x + p.y;
  return {x - std::floor(x), p.x - std::floor(p.x)};
}

TorusPoint to_xy(const QSqrt5& u, const QSqrt5& s) {
  const double ud = u.to_double(), sd = s.to_double();
  const double x = kPhi * ud + sd, y = ud - kPhi * sd;
  return {x - std::floor(x), y - std::floor(y)};
}

RegionHit region_of(TorusPoint p) {
  static const auto boxes = [] {
    std::array<std::array<double, 4>, 3> b{};
    for (std::size_t i = 0; i < 3; ++i) {
      const auto& r = torus_partition()[i];
      b[i] = {r.u0.to_double(), r.u1.to_double(), r.s0.to_double(), r.s1.to_double()};
    }
    return b;
  }();
  const auto lu = lattice_u(), ls = lattice_s();
  const double lu0 = lu[0].to_double(), lu1 = lu[1].to_double(), ls0 = ls[0].to_double(), ls1 = ls[1].to_double();
  const auto us = to_us(p);
  RegionHit best;
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b) {
      const double u = us[0] + a * lu0 + b * lu1, s = us[1] + a * ls0 + b * ls1;
      for (int i = 0; i < 3; ++i) {
        const auto& bx = boxes[static_cast<std::size_t>(i)];
        if (u >= bx[0] && u < bx[1] && s >= bx[2] && s < bx[3]) {
          const double m = std::min({u - bx[0], bx[1] - u, s - bx[2], bx[3] - s});
          if (best.region < 0 || m > best.margin) best = {i, m};
        }
      }
    }
  return best;
}

TorusPoint apply_f_inverse(TorusPoint p) {
  const double y = p.x - p.y;
  return {p.y - std::floor(p.y), y - std::floor(y)};
}

Itinerary itinerary(TorusPoint p, int N, double margin) {
  if (N < 0) throw InputError("itinerary: N must be >= 0");
  Itinerary it;
  it.word.start = -N;
  it.word.symbols.assign(static_cast<std::size_t>(2 * N + 1), 0);
  it.min_margin = std::numeric_limits<double>::infinity();
  auto visit = [&](TorusPoint q, int n) {
    const RegionHit h = region_of(q);
    if (h.region < 0) throw ConstructionError("itinerary: point outside every region");
    it.word.symbols[static_cast<std::size_t>(n + N)] = static_cast<State>(h.region);
    // Rounding grows by at most phi per step.
    it.min_margin = std::min(it.min_margin, h.margin - 4e-16 * std::pow(kPhi, std::abs(n)));
  };
  TorusPoint q = p;
  for (int n = 0; n <= N; ++n, q = apply_f(q)) visit(q, n);
  q = apply_f_inverse(p);
  for (int n = -1; n >= -N; --n, q = apply_f_inverse(q)) visit(q, n);
  it.reliable = it.min_margin > margin;
  return it;
}

PhiApprox phi_approx(const Word& x) {
  if (x.size() % 2 == 0 || x.start != -BigInt(x.size() / 2))
    throw InputError("phi_approx: x must cover a symmetric window [-N, N]");
  if (!is_admissible(x, AdjacencyMatrix::golden())) throw InputError("phi_approx: x is not admissible");
  const std::size_t N = x.size() / 2;
  if (N > 60) throw CapExceeded("phi_approx: window beyond 60", std::to_string(N));
  const auto& R = torus_partition();
  const std::vector<State> fwd(x.symbols.begin() + static_cast<std::ptrdiff_t>(N), x.symbols.end());
  const auto a = cylinder_cell(fwd);
  // Backward cell R_{x_0} ∩ f(R_{x_{-1}}) ∩ ... ∩ f^N(R_{x_{-N}}).
  std::vector<Rect> b{R.at(x.symbols.front())};
  for (std::size_t k = 1; k <= N; ++k) {
    std::vector<Rect> next;
    for (const auto& piece : b)
      for (auto& r : intersect_mod_lattice(R.at(x.symbols[k]), image(piece))) next.push_back(std::move(r));
    b = std::move(next);
  }
  std::vector<Rect> cells;
  for (const auto& ra : a)
    for (const auto& rb : b) {
      Rect r = intersect(ra, rb);
      if (!r.empty()) cells.push_back(r);
    }
  if (cells.size() != 1) throw ConstructionError("phi_approx: cell is not a single rectangle");
  PhiApprox out;
  out.cell = cells.front();
  const QSqrt5 half(Rational(1, 2));
  out.point = to_xy((out.cell.u0 + out.cell.u1) * half, (out.cell.s0 + out.cell.s1) * half);
  const double W = kInvSqrt5.to_double(), H = kInvPhiSqrt5.to_double();
  out.bound = std::sqrt(kPhi * std::sqrt(5.0)) * std::pow(kPhi, -static_cast<double>(N)) * std::hypot(W, H);
  return out;
}

std::vector<std::array<TorusPoint, 4>> region_polygons() {
  std::vector<std::array<TorusPoint, 4>> out;
  for (const auto& r : torus_partition()) {
    auto corner = [](const QSqrt5& u, const QSqrt5& s) {
      const double ud = u.to_double(), sd = s.to_double();
      return TorusPoint{kPhi * ud + sd, ud - kPhi * sd};
    };
    out.push_back({corner(r.u0, r.s0), corner(r.u1, r.s0), corner(r.u1, r.s1), corner(r.u0, r.s1)});
  }
  return out;
}

}  // namespace goldshift
