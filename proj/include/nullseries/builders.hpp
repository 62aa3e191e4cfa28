#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "nullseries/certify.hpp"
#include "nullseries/coeff_seq.hpp"
#include "nullseries/interval_union.hpp"

namespace nullseries {

// Periodic C^2 piecewise cubic on [0,1). Piece k lives on [t_k, t_{k+1}) (the last one
// wraps to t_0 + 1) and is stored as sum_i coef[i] (x - t_k)^i.
// Only f''' jumps, so f^(l) = sum_k J_k e(-l t_k) / (2 pi l)^4 for l != 0.
class C2Spline {
 public:
  C2Spline() = default;
  C2Spline(std::vector<Rational> knots, std::vector<std::array<double, 4>> pieces);

  double value(double x) const;
  double mean() const;
  cplx coefficient(std::int64_t l) const;
  CoeffSeq coefficients(std::int64_t L) const;
  // sum_{|l| >= L} |f^(l)|, L >= 1
  double tail_bound(std::int64_t L) const;
  // smallest L with tail_bound(L + 1) <= tol
  std::int64_t degree_for_tail(double tol) const;
  // x -> f(a x) on [0, 1/a], zero elsewhere. Needs a knot at 0 and f = 0 near 1.
  C2Spline squeezed(std::int64_t a) const;
  // largest jump of f, f', f'' across knots (should be rounding level)
  double continuity_defect() const;

  double jump3_sum() const { return jump_sum_; }
  const std::vector<Rational>& knots() const { return knots_; }

 private:
  double piece_length(std::size_t k) const;
  std::vector<Rational> knots_;
  std::vector<std::array<double, 4>> pieces_;
  std::vector<std::int64_t> num_, den_;
  std::vector<double> t_, jump3_;
  double jump_sum_ = 0.0;
};

// Plateau: 1 on [eps/2, 1 - eps/2], cubic spline edges, u(0) = 0.
struct Plateau {
  Rational eps;
  Rational edge;  // eps / 2
  C2Spline spline;
  CoeffSeq u;
  IntervalUnion support;
  double l1_defect = 0.0;  // ||u - 1||_{L^1}, exact
  double tail = 0.0;
  std::vector<Certificate> certificates;
};
Plateau build_plateau(double eps);
// shape only, no truncation (used by the assembly step)
C2Spline plateau_spline(const Rational& edge);

// Unit-mass cubic B-spline on [1/(16m), 7/(16m)].
struct Window {
  std::int64_t m = 1;
  std::int64_t n = 0;
  Rational offset, width;
  C2Spline spline;
  CoeffSeq q;
  double floor = 0.0;  // certified min_{|k|<=n} |q^(k)|
  double tail = 0.0;
  IntervalUnion support;
  std::vector<Certificate> certificates;
};
Window build_window(std::int64_t m, std::int64_t n);
// closed form sinc^4 e(-k centre); independent of the spline machinery
cplx window_coefficient_closed_form(std::int64_t m, std::int64_t k);

// Real trig polynomial with P^(0) = 1 and small sup on [0, 1/2].
struct ArcPoly {
  std::int64_t n = 0;
  CoeffSeq P;
  double sup_bound = 0.0;    // certified
  double lower_bound = 0.0;  // Lawson lower bound on the minimal sup at this n
  double log_constant = 0.0; // n / log(1/eps)
  std::string method;        // lawson | chebyshev-fallback | constant
  int iterations = 0;
  double fallback_sup = -1.0;
  SupCertificate sup;
  std::vector<Certificate> certificates;
};

struct ArcOptions {
  int max_degree = 64;
  int max_iterations = 4000;
  double rel_gap = 1e-3;
};

ArcPoly build_arc_poly(double eps, const ArcOptions& opt = {});
// minimax at fixed degree (no eps target)
ArcPoly arc_minimax(std::int64_t n, const ArcOptions& opt = {});

// Monic Chebyshev polynomial of the arc {e(x) : x in [0, 1/2]}.
struct ArcChebyshev {
  std::int64_t n = 0;
  CoeffSeq Q;          // Q^(k) = coefficient of z^k, k = 0..n
  double upper = 0.0;  // certified sup
  double lower = 0.0;  // Lawson lower bound
  int iterations = 0;
};
ArcChebyshev arc_chebyshev(std::int64_t n, const ArcOptions& opt = {});
// P = Re(e(-n x) Q_n(e(x))); P^(0) = 1
CoeffSeq arc_poly_from_chebyshev(const ArcChebyshev& q);

// Gevrey-2 step psi(t) = int_0^t exp(-1/s - 1/(1-s)) ds / Z.
class GevreyStep {
 public:
  GevreyStep();
  double operator()(double t) const;
  // k-th derivative, k >= 0
  double derivative(int k, double t) const;
  double normalizer() const { return Z_; }

 private:
  double Z_;
};

struct BumpProfile {
  Rational edge_width;
  std::string smoothness;  // C2 | Gevrey2
  double C_psi = 0.0;
  std::vector<double> derivative_sup;  // k = 0..8
  GevreyStep step;
};
BumpProfile build_gevrey_step();

struct Cutoff {
  Rational a, b, margin;
  CoeffSeq phi;
  double C = 0.0, c = 0.0;  // |phi^(l)| <= C exp(-c sqrt(l margin))
  std::int64_t sample_grid = 0;
  double value(double x) const;  // exact (via psi)
  GevreyStep step;
};
Cutoff build_smooth_cutoff(const Rational& a, const Rational& b, const Rational& margin,
                           std::int64_t s_scale);

}  // namespace nullseries
