#include "qc/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "qc/errors.hpp"
#include "qc/special.hpp"

namespace qc {

namespace {

struct Segment {
  double a, b, fa, fm, fb, whole;
};

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

}  // namespace

QuadResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                            double abs_tol, std::size_t max_evals) {
  QuadResult res;
  if (a == b) return res;

  auto eval = [&](double x) {
    ++res.evaluations;
    return f(x);
  };

  const double fa = eval(a);
  const double m0 = 0.5 * (a + b);
  const double fm = eval(m0);
  const double fb = eval(b);
  if (!std::isfinite(fa) || !std::isfinite(fm) || !std::isfinite(fb)) {
    res.hit_infinity = true;
    res.value = !std::isfinite(fa) ? fa : (!std::isfinite(fm) ? fm : fb);
    return res;
  }

  std::vector<std::pair<Segment, double>> work;  // segment + its tolerance share
  work.push_back({{a, b, fa, fm, fb, simpson(a, b, fa, fm, fb)}, abs_tol});

  double total = 0.0;
  while (!work.empty()) {
    auto [seg, tol] = work.back();
    work.pop_back();

    const double m = 0.5 * (seg.a + seg.b);
    const double lm = 0.5 * (seg.a + m);
    const double rm = 0.5 * (m + seg.b);
    const double flm = eval(lm);
    const double frm = eval(rm);
    if (!std::isfinite(flm) || !std::isfinite(frm)) {
      res.hit_infinity = true;
      res.value = !std::isfinite(flm) ? flm : frm;
      return res;
    }
    const double left = simpson(seg.a, m, seg.fa, flm, seg.fm);
    const double right = simpson(m, seg.b, seg.fm, frm, seg.fb);
    const double delta = left + right - seg.whole;

    if (std::fabs(delta) <= 15.0 * tol || res.evaluations >= max_evals) {
      if (res.evaluations >= max_evals && std::fabs(delta) > 15.0 * tol) res.converged = false;
      total += left + right + delta / 15.0;  // Richardson correction
    } else {
      work.push_back({{seg.a, m, seg.fa, flm, seg.fm, left}, 0.5 * tol});
      work.push_back({{m, seg.b, seg.fm, frm, seg.fb, right}, 0.5 * tol});
    }
  }
  res.value = total;
  return res;
}

const GaussLegendre& gauss_legendre(int m) {
  if (m < 1) throw InputError("gauss_legendre: order must be positive");
  static std::map<int, GaussLegendre> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;

  GaussLegendre gl;
  gl.nodes.resize(m);
  gl.weights.resize(m);
  // Roots of P_m via Newton from the Chebyshev-like initial guess.
  for (int i = 0; i < (m + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (m + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= m; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = m * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    gl.nodes[i] = -x;
    gl.nodes[m - 1 - i] = x;
    gl.weights[i] = w;
    gl.weights[m - 1 - i] = w;
  }
  return cache.emplace(m, std::move(gl)).first->second;
}

double gauss_integrate(const std::function<double(double)>& f, double a, double b, int order) {
  const auto& gl = gauss_legendre(order);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double s = 0.0;
  for (int i = 0; i < order; ++i) s += gl.weights[i] * f(mid + half * gl.nodes[i]);
  return half * s;
}

}  // namespace qc
