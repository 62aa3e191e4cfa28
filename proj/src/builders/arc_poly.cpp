#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "nullseries/builders.hpp"
#include "nullseries/errors.hpp"

namespace nullseries {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <typename S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <typename S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

template <typename S>
struct LawsonState {
  Vec<S> x;
  double lower = 0.0;  // sqrt of the weighted LS optimum: <= discrete minimax
  double upper = 0.0;  // discrete max of the best iterate
  int iterations = 0;
  Eigen::VectorXd w;
};

// Lawson's iteratively reweighted least squares for min_x max_i |(A x - f)_i|.
template <typename S>
void lawson(const Mat<S>& A, const Vec<S>& f, int max_iter, double rel_gap, LawsonState<S>& st) {
  const auto G = A.rows();
  if (st.w.size() != G) st.w = Eigen::VectorXd::Constant(G, 1.0 / static_cast<double>(G));
  st.upper = std::numeric_limits<double>::infinity();
  for (int it = 0; it < max_iter; ++it) {
    const Eigen::VectorXd sw = st.w.cwiseSqrt();
    const Mat<S> Aw = sw.asDiagonal() * A;
    const Vec<S> fw = sw.asDiagonal() * f;
    const Vec<S> x = Aw.householderQr().solve(fw);
    const Eigen::VectorXd r = (A * x - f).cwiseAbs();
    const double lo = std::sqrt((st.w.array() * r.array().square()).sum());
    const double hi = r.maxCoeff();
    st.lower = std::max(st.lower, lo);
    if (hi < st.upper) {
      st.upper = hi;
      st.x = x;
    }
    ++st.iterations;
    if (st.upper - st.lower <= rel_gap * st.upper) break;
    st.w = st.w.cwiseProduct(r);
    const double s = st.w.sum();
    if (!(s > 0)) break;
    st.w /= s;
  }
}

std::vector<double> arc_nodes(std::int64_t n) {
  const auto G = static_cast<int>(60 * n + 400);
  std::vector<double> x;
  for (int i = 0; i < G; ++i) x.push_back(0.25 * (1.0 - std::cos(std::numbers::pi * i / (G - 1))));
  for (int i = 1; i < G; i += 2) x.push_back(0.5 * i / G);
  std::sort(x.begin(), x.end());
  x.erase(std::unique(x.begin(), x.end()), x.end());
  return x;
}

// local maxima of |p| on a fine grid of [0, 1/2] that are not yet nodes
template <typename F>
std::vector<double> new_extrema(const F& absval, const std::vector<double>& nodes) {
  const int fine = 1 << 14;
  std::vector<double> v(fine + 1);
  for (int i = 0; i <= fine; ++i) v[i] = absval(0.5 * i / fine);
  std::vector<double> out;
  for (int i = 0; i <= fine; ++i) {
    const bool left = i == 0 || v[i] >= v[i - 1];
    const bool right = i == fine || v[i] >= v[i + 1];
    if (!(left && right)) continue;
    const double x = 0.5 * i / fine;
    auto it = std::lower_bound(nodes.begin(), nodes.end(), x);
    const bool near = (it != nodes.end() && *it - x < 1e-9) ||
                      (it != nodes.begin() && x - *(it - 1) < 1e-9);
    if (!near) out.push_back(x);
  }
  return out;
}

const IntervalUnion& half_arc() {
  static const IntervalUnion arc = IntervalUnion::single(0, Rational(1, 2));
  return arc;
}

}  // namespace

ArcPoly arc_minimax(std::int64_t n, const ArcOptions& opt) {
  if (n < 1) throw std::invalid_argument("arc minimax needs n >= 1");
  auto nodes = arc_nodes(n);
  LawsonState<double> st;
  Vec<double> x;
  for (int round = 0; round < 3; ++round) {
    const auto G = static_cast<Eigen::Index>(nodes.size());
    Mat<double> A(G, 2 * n);
    for (Eigen::Index i = 0; i < G; ++i) {
      for (std::int64_t k = 1; k <= n; ++k) {
        A(i, k - 1) = std::cos(kTwoPi * k * nodes[i]);
        A(i, n + k - 1) = std::sin(kTwoPi * k * nodes[i]);
      }
    }
    const Vec<double> f = Vec<double>::Constant(G, -1.0);
    if (round > 0) {
      // new nodes start at the current mean weight
      Eigen::VectorXd w(G);
      w.setConstant(st.w.mean());
      st.w = w / w.sum();
    }
    lawson<double>(A, f, opt.max_iterations, opt.rel_gap, st);
    x = st.x;
    auto absval = [&](double t) {
      double s = 1.0;
      for (std::int64_t k = 1; k <= n; ++k)
        s += x(k - 1) * std::cos(kTwoPi * k * t) + x(n + k - 1) * std::sin(kTwoPi * k * t);
      return std::abs(s);
    };
    auto extra = new_extrema(absval, nodes);
    if (extra.empty()) break;
    nodes.insert(nodes.end(), extra.begin(), extra.end());
    std::sort(nodes.begin(), nodes.end());
  }
  ArcPoly out;
  out.n = n;
  out.P = CoeffSeq(n, true);
  out.P[0] = 1.0;
  for (std::int64_t k = 1; k <= n; ++k) {
    out.P[k] = cplx(x(k - 1), -x(n + k - 1)) / 2.0;
    out.P[-k] = std::conj(out.P[k]);
  }
  out.lower_bound = st.lower;
  out.iterations = st.iterations;
  out.method = "lawson";
  out.sup = certified_sup(out.P, n, half_arc());
  out.sup_bound = out.sup.bound;
  return out;
}

ArcChebyshev arc_chebyshev(std::int64_t n, const ArcOptions& opt) {
  if (n < 1) throw std::invalid_argument("arc Chebyshev needs n >= 1");
  using C = std::complex<double>;
  auto nodes = arc_nodes(n);
  const auto G = static_cast<Eigen::Index>(nodes.size());
  Mat<C> A(G, n);
  Vec<C> f(G);
  for (Eigen::Index i = 0; i < G; ++i) {
    const C z = std::polar(1.0, kTwoPi * nodes[i]);
    C zk = 1.0;
    for (std::int64_t k = 0; k < n; ++k) {
      A(i, k) = zk;
      zk *= z;
    }
    f(i) = -zk;
  }
  LawsonState<C> st;
  lawson<C>(A, f, opt.max_iterations, opt.rel_gap, st);
  ArcChebyshev out;
  out.n = n;
  out.Q = CoeffSeq(n, false);
  for (std::int64_t k = 0; k < n; ++k) out.Q[k] = st.x(k);
  out.Q[n] = 1.0;
  out.lower = st.lower;
  out.iterations = st.iterations;
  out.upper = certified_sup(out.Q, n, half_arc()).bound;
  return out;
}

CoeffSeq arc_poly_from_chebyshev(const ArcChebyshev& q) {
  const auto n = q.n;
  CoeffSeq g(n, false);  // g(x) = e(-n x) Q(e(x))
  for (std::int64_t k = 0; k <= n; ++k) g[k - n] = q.Q[k];
  CoeffSeq P(n, true);
  for (std::int64_t j = -n; j <= n; ++j) P[j] = 0.5 * (g.at(j) + std::conj(g.at(-j)));
  P[0] = 1.0;
  return P;
}

ArcPoly build_arc_poly(double eps, const ArcOptions& opt) {
  if (!(eps > 0.0)) throw std::invalid_argument("arc eps must be positive");
  ArcPoly best;
  if (eps >= 1.0) {
    best.n = 0;
    best.P = CoeffSeq::delta();
    best.sup_bound = 1.0;
    best.lower_bound = 1.0;
    best.method = "constant";
    best.sup = certified_sup(best.P, 0, half_arc());
  } else {
    std::ostringstream trail;
    bool found = false;
    for (std::int64_t n = 1; n <= opt.max_degree && !found; ++n) {
      auto cand = arc_minimax(n, opt);
      trail << "n=" << n << " lower=" << cand.lower_bound << " upper=" << cand.sup_bound << "; ";
      if (cand.sup_bound <= eps) {
        best = std::move(cand);
        found = true;
        break;
      }
      if (cand.lower_bound > eps) continue;
      // undecided at this degree: try the Chebyshev-based polynomial
      auto cheb = arc_chebyshev(n, opt);
      auto P = arc_poly_from_chebyshev(cheb);
      auto s = certified_sup(P, n, half_arc());
      if (s.bound <= eps) {
        best.n = n;
        best.P = std::move(P);
        best.sup = s;
        best.sup_bound = s.bound;
        best.lower_bound = cand.lower_bound;
        best.method = "chebyshev-fallback";
        best.iterations = cheb.iterations;
        found = true;
      }
    }
    if (!found) throw NumericError("arc polynomial: no certified degree <= max; " + trail.str());
    if (best.method == "lawson" && best.n >= 1) {
      auto cheb = arc_chebyshev(best.n, opt);
      best.fallback_sup = certified_sup(arc_poly_from_chebyshev(cheb), best.n, half_arc()).bound;
    }
  }
  best.log_constant = eps < 1.0 ? static_cast<double>(best.n) / std::log(1.0 / eps) : 0.0;
  best.certificates.push_back(make_certificate("arc_sup", best.sup_bound, eps, false,
                                               sup_detail(best.sup)));
  best.certificates.push_back(boolean_certificate("arc_mean_one", best.P[0] == cplx(1.0, 0.0)));
  return best;
}

}  // namespace nullseries
