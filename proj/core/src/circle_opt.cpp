#include "banachlab/circle_opt.hpp"

#include <algorithm>
#include <cmath>

namespace banachlab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double golden_max(const std::function<double(double)>& f, double a, double b,
                  double* arg) {
  const double invphi = 0.6180339887498948482;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 80 && (b - a) > 1e-13; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    }
  }
  double xm = 0.5 * (a + b);
  double fm = f(xm);
  if (f1 > fm) {
    fm = f1;
    xm = x1;
  }
  if (f2 > fm) {
    fm = f2;
    xm = x2;
  }
  *arg = xm;
  return fm;
}

}  // namespace

CircleMax circle_maximize(const std::function<double(double)>& f, int grid,
                          const std::vector<double>& breakpoints) {
  std::vector<double> thetas;
  thetas.reserve(grid + 2 * breakpoints.size());
  for (int i = 0; i < grid; ++i) thetas.push_back(kTwoPi * i / grid);
  for (double b : breakpoints) {
    double t = std::fmod(b, kTwoPi);
    if (t < 0) t += kTwoPi;
    thetas.push_back(t);
    // Sample just off the kink as well.
    thetas.push_back(std::fmod(t + 1e-7, kTwoPi));
  }
  std::sort(thetas.begin(), thetas.end());
  thetas.erase(std::unique(thetas.begin(), thetas.end()), thetas.end());

  const int n = static_cast<int>(thetas.size());
  std::vector<double> vals(n);
  for (int i = 0; i < n; ++i) vals[i] = f(thetas[i]);

  // Polish around the few best grid points; the target functions are
  // piecewise smooth, so a local search per candidate cell is enough.
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return vals[a] > vals[b]; });

  CircleMax best{thetas[order[0]], vals[order[0]]};
  const int polish = std::min(n, 6);
  for (int r = 0; r < polish; ++r) {
    int i = order[r];
    double lo = thetas[(i + n - 1) % n];
    double hi = thetas[(i + 1) % n];
    if (i == 0) lo -= kTwoPi;
    if (i == n - 1) hi += kTwoPi;
    double arg = 0.0;
    double val = golden_max(f, lo, hi, &arg);
    if (val > best.value) {
      best.value = val;
      best.theta = std::fmod(arg + kTwoPi, kTwoPi);
    }
  }
  return best;
}

}  // namespace banachlab
