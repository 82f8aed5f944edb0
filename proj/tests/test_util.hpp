#ifndef TEST_UTIL_HPP
#define TEST_UTIL_HPP

#include <cmath>
#include <functional>

// Test-side adaptive Simpson quadrature, independent of the library's
// integration code so it can serve as an oracle.
inline double simpson_rule(double fa, double fm, double fb, double h) {
  return h / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson_rec(const std::function<double(double)>& f,
                                   double a, double b, double fa, double fm,
                                   double fb, double whole, double eps,
                                   int depth) {
  double m = 0.5 * (a + b);
  double flm = f(0.5 * (a + m));
  double frm = f(0.5 * (m + b));
  double left = simpson_rule(fa, flm, fm, m - a);
  double right = simpson_rule(fm, frm, fb, b - m);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * eps) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a,
                        double b, double eps = 1e-12) {
  double m = 0.5 * (a + b);
  double fa = f(a), fm = f(m), fb = f(b);
  return adaptive_simpson_rec(f, a, b, fa, fm, fb,
                              simpson_rule(fa, fm, fb, b - a), eps, 48);
}

#endif
