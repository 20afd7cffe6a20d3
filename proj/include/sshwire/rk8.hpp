#ifndef SSHWIRE_RK8_HPP
#define SSHWIRE_RK8_HPP

#include <cmath>

namespace sshwire {

// Cooper-Verner explicit Runge-Kutta method of order eight, eleven stages.
// Coefficients are algebraic in sqrt(21) and therefore exact to roundoff.
struct Rk8Tableau {
  static constexpr int kStages = 11;
  double a[kStages][kStages] = {};
  double b[kStages] = {};
  double c[kStages] = {};

  Rk8Tableau() {
    const double s = std::sqrt(21.0);
    c[0] = 0.0;
    c[1] = 0.5;
    c[2] = 0.5;
    c[3] = (7.0 + s) / 14.0;
    c[4] = (7.0 + s) / 14.0;
    c[5] = 0.5;
    c[6] = (7.0 - s) / 14.0;
    c[7] = (7.0 - s) / 14.0;
    c[8] = 0.5;
    c[9] = (7.0 + s) / 14.0;
    c[10] = 1.0;

    a[1][0] = 0.5;
    a[2][0] = 0.25;
    a[2][1] = 0.25;
    a[3][0] = 1.0 / 7.0;
    a[3][1] = (-7.0 - 3.0 * s) / 98.0;
    a[3][2] = (21.0 + 5.0 * s) / 49.0;
    a[4][0] = (11.0 + s) / 84.0;
    a[4][2] = (18.0 + 4.0 * s) / 63.0;
    a[4][3] = (21.0 - s) / 252.0;
    a[5][0] = (5.0 + s) / 48.0;
    a[5][2] = (9.0 + s) / 36.0;
    a[5][3] = (-231.0 + 14.0 * s) / 360.0;
    a[5][4] = (63.0 - 7.0 * s) / 80.0;
    a[6][0] = (10.0 - s) / 42.0;
    a[6][2] = (-432.0 + 92.0 * s) / 315.0;
    a[6][3] = (633.0 - 145.0 * s) / 90.0;
    a[6][4] = (-504.0 + 115.0 * s) / 70.0;
    a[6][5] = (63.0 - 13.0 * s) / 35.0;
    a[7][0] = 1.0 / 14.0;
    a[7][4] = (14.0 - 3.0 * s) / 126.0;
    a[7][5] = (13.0 - 3.0 * s) / 63.0;
    a[7][6] = 1.0 / 9.0;
    a[8][0] = 1.0 / 32.0;
    a[8][4] = (91.0 - 21.0 * s) / 576.0;
    a[8][5] = 11.0 / 72.0;
    a[8][6] = (-385.0 - 75.0 * s) / 1152.0;
    a[8][7] = (63.0 + 13.0 * s) / 128.0;
    a[9][0] = 1.0 / 14.0;
    a[9][4] = 1.0 / 9.0;
    a[9][5] = (-733.0 - 147.0 * s) / 2205.0;
    a[9][6] = (515.0 + 111.0 * s) / 504.0;
    a[9][7] = (-51.0 - 11.0 * s) / 56.0;
    a[9][8] = (132.0 + 28.0 * s) / 245.0;
    a[10][4] = (-42.0 + 7.0 * s) / 18.0;
    a[10][5] = (-18.0 + 28.0 * s) / 45.0;
    a[10][6] = (-273.0 - 53.0 * s) / 72.0;
    a[10][7] = (301.0 + 53.0 * s) / 72.0;
    a[10][8] = (28.0 - 28.0 * s) / 45.0;
    a[10][9] = (49.0 - 7.0 * s) / 18.0;

    b[0] = 1.0 / 20.0;
    b[7] = 49.0 / 180.0;
    b[8] = 16.0 / 45.0;
    b[9] = 49.0 / 180.0;
    b[10] = 1.0 / 20.0;
  }
};

inline const Rk8Tableau& rk8_tableau() {
  static const Rk8Tableau tab;
  return tab;
}

}  // namespace sshwire

#endif
