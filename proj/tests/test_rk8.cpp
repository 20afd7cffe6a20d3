#include <doctest.h>

#include <cmath>
#include <vector>

#include "sshwire/rk8.hpp"

using sshwire::Rk8Tableau;
using sshwire::rk8_tableau;

namespace {

// scalar test integrator
template <typename Rhs>
double integrate(Rhs rhs, double y0, double t_final, double h) {
  const auto& tab = rk8_tableau();
  double y = y0, t = 0.0;
  const int n = static_cast<int>(std::llround(t_final / h));
  double k[Rk8Tableau::kStages];
  for (int s = 0; s < n; ++s) {
    for (int i = 0; i < Rk8Tableau::kStages; ++i) {
      double yi = y;
      for (int j = 0; j < i; ++j) yi += h * tab.a[i][j] * k[j];
      k[i] = rhs(t + tab.c[i] * h, yi);
    }
    for (int i = 0; i < Rk8Tableau::kStages; ++i) y += h * tab.b[i] * k[i];
    t += h;
  }
  return y;
}

}  // namespace

TEST_CASE("tableau consistency: row sums equal nodes") {
  const auto& tab = rk8_tableau();
  for (int i = 0; i < Rk8Tableau::kStages; ++i) {
    double row = 0.0;
    for (int j = 0; j < i; ++j) row += tab.a[i][j];
    CHECK(row == doctest::Approx(tab.c[i]).epsilon(1e-14));
  }
  double sum_b = 0.0;
  for (double b : tab.b) sum_b += b;
  CHECK(sum_b == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("tableau satisfies the order-8 quadrature conditions") {
  const auto& tab = rk8_tableau();
  for (int k = 0; k <= 7; ++k) {
    double s = 0.0;
    for (int i = 0; i < Rk8Tableau::kStages; ++i)
      s += tab.b[i] * std::pow(tab.c[i], k);
    CHECK(s == doctest::Approx(1.0 / (k + 1)).epsilon(1e-13));
  }
}

TEST_CASE("empirical convergence order is eight") {
  // stiff-free nonlinear problem with a large enough solution variation that
  // halving the step sits well above roundoff
  auto rhs = [](double t, double y) { return y * std::cos(3.0 * t) - 0.5 * y * y; };
  const double ref = integrate(rhs, 1.0, 3.0, 1e-4);
  const double e1 = std::abs(integrate(rhs, 1.0, 3.0, 0.5) - ref);
  const double e2 = std::abs(integrate(rhs, 1.0, 3.0, 0.25) - ref);
  const double e3 = std::abs(integrate(rhs, 1.0, 3.0, 0.125) - ref);
  // slope over two halvings; a single ratio fluctuates once the error
  // approaches roundoff
  const double order = 0.5 * std::log2(e1 / e3);
  CHECK(order > 7.5);
  CHECK(e3 < e2);
  CHECK(e2 < e1);
}

TEST_CASE("harmonic oscillator phase accuracy over many periods") {
  // y'' = -y integrated as a complex first-order system via two reals
  const auto& tab = rk8_tableau();
  double y = 1.0, v = 0.0, t = 0.0;
  const double h = 0.1;
  const int n = 2000;  // 200 radians
  double ky[Rk8Tableau::kStages], kv[Rk8Tableau::kStages];
  for (int s = 0; s < n; ++s) {
    for (int i = 0; i < Rk8Tableau::kStages; ++i) {
      double yi = y, vi = v;
      for (int j = 0; j < i; ++j) {
        yi += h * tab.a[i][j] * ky[j];
        vi += h * tab.a[i][j] * kv[j];
      }
      ky[i] = vi;
      kv[i] = -yi;
    }
    for (int i = 0; i < Rk8Tableau::kStages; ++i) {
      y += h * tab.b[i] * ky[i];
      v += h * tab.b[i] * kv[i];
    }
    t += h;
  }
  CHECK(y == doctest::Approx(std::cos(t)).epsilon(1e-9));
  CHECK(v == doctest::Approx(-std::sin(t)).epsilon(1e-9));
  CHECK(y * y + v * v == doctest::Approx(1.0).epsilon(1e-10));
}
