#include "quadrature.hpp"

#include <cmath>

namespace qsym::quad {

namespace {

struct Simpson {
  const std::function<double(double)>& f;
  double max_panel;

  double estimate(double a, double b, double fa, double fm, double fb) const {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  }

  double recurse(double a, double b, double fa, double fm, double fb,
                 double whole, double tol, int depth) const {
    const double m = (a + b) / 2.0;
    const double lm = (a + m) / 2.0, rm = (m + b) / 2.0;
    const double flm = f(lm), frm = f(rm);
    const double left = estimate(a, m, fa, flm, fm);
    const double right = estimate(m, b, fm, frm, fb);
    const double err = left + right - whole;
    if (depth <= 0) return left + right + err / 15.0;
    if (b - a <= max_panel && std::abs(err) <= 15.0 * tol)
      return left + right + err / 15.0;
    return recurse(a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           recurse(m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
  }
};

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double abs_tol, double max_panel) {
  if (b <= a) return 0.0;
  Simpson s{f, max_panel};
  const double m = (a + b) / 2.0;
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = s.estimate(a, b, fa, fm, fb);
  return s.recurse(a, b, fa, fm, fb, whole, abs_tol, 48);
}

}  // namespace qsym::quad
