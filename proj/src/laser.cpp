#include "sshwire/laser.hpp"

#include <cmath>

#include "sshwire/errors.hpp"
#include "sshwire/units.hpp"

namespace sshwire {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

// Reduce a phase to (-pi, pi] and snap it to a 2^-40 grid. IEEE remainder is
// exact, and the snap absorbs the rounding of a caller-side "+ 2*pi", so
// phases differing by full turns evaluate bit-identically.
double canonical_phase(double phi) {
  const double r = std::remainder(phi, kTwoPi);
  return std::round(r * 0x1p40) * 0x1p-40;
}

double two_color(const LaserPulse& p, double t) {
  const double w = p.omega / kHbar;  // photon energy -> angular frequency
  return p.eps_w * std::cos(w * t + canonical_phase(p.phi_w)) +
         p.eps_2w * std::cos(2.0 * w * t + canonical_phase(p.phi_2w));
}

}  // namespace

void LaserPulse::validate() const {
  if (eps_w < 0 || eps_2w < 0)
    throw config_error("pulse amplitudes must be non-negative");
  if (kind == PulseKind::Gaussian && t_width <= 0)
    throw config_error("gaussian pulse requires t_width > 0");
  if (kind == PulseKind::Plateau) {
    if (t_ramp <= 0) throw config_error("plateau pulse requires t_ramp > 0");
    if (!(t_on < t_off))
      throw config_error("plateau pulse requires t_on < t_off");
  }
}

double field_value(const LaserPulse& pulse, double t) {
  switch (pulse.kind) {
    case PulseKind::Off:
      return 0.0;
    case PulseKind::Gaussian: {
      const double s = (t - pulse.t_center) / pulse.t_width;
      return std::exp(-s * s) * two_color(pulse, t);
    }
    case PulseKind::Plateau: {
      double env = 1.0;
      if (t <= pulse.t_on) {
        const double s = (t - pulse.t_on) / pulse.t_ramp;
        env = std::exp(-s * s);
      } else if (t >= pulse.t_off) {
        const double s = (t - pulse.t_off) / pulse.t_ramp;
        env = std::exp(-s * s);
      }
      return env * two_color(pulse, t);
    }
  }
  return 0.0;
}

LaserPulse preset(const std::string& label) {
  LaserPulse p;
  if (label == "off") {
    return p;
  }
  if (label == "f1" || label == "f2" || label == "f3" || label == "f4") {
    p.kind = PulseKind::Gaussian;
    const bool long_pulse = (label == "f1" || label == "f2");
    const bool strong = (label == "f2" || label == "f4");
    p.t_center = long_pulse ? 900.0 : 50.0;
    p.t_width = long_pulse ? 300.0 : 10.0;
    p.eps_2w = strong ? 4.00e-2 : 8.70e-3;
    p.eps_w = 2.82 * p.eps_2w;
    return p;
  }
  if (label == "stark_plateau") {
    p.kind = PulseKind::Plateau;
    p.t_on = 300.0;
    p.t_off = 700.0;
    p.t_ramp = 100.0;
    p.eps_2w = 6.1e-3;
    p.eps_w = 2.0 * p.eps_2w;
    p.omega = 0.13;
    return p;
  }
  if (label == "stark_gaussian") {
    p.kind = PulseKind::Gaussian;
    p.t_center = 900.0;
    p.t_width = 300.0;
    p.eps_2w = 8.7e-3;
    p.eps_w = 2.0 * p.eps_2w;
    p.omega = 0.3;
    return p;
  }
  throw config_error("unknown pulse preset: " + label);
}

}  // namespace sshwire
