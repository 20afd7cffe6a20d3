#ifndef SSHWIRE_LASER_HPP
#define SSHWIRE_LASER_HPP

#include <string>

namespace sshwire {

enum class PulseKind { Off, Gaussian, Plateau };

// Two-color (omega + 2 omega) driving field. Gaussian pulses follow
//   E(t) = exp(-(t-T_c)^2/T_W^2) (eps_w cos(w t + phi_w)
//                                 + eps_2w cos(2 w t + phi_2w)),
// plateau pulses carry the same two-color factor under a three-branch
// envelope: Gaussian turn-on until t_on, flat top, Gaussian turn-off
// after t_off.
struct LaserPulse {
  PulseKind kind = PulseKind::Off;
  double eps_w = 0.0;    // amplitude of the omega component (V/A)
  double eps_2w = 0.0;   // amplitude of the 2 omega component (V/A)
  double omega = 0.0;    // photon energy hbar*omega (eV)
  double phi_w = 0.0;    // phase of the omega component (rad)
  double phi_2w = 0.0;   // phase of the 2 omega component (rad)
  double t_center = 0.0; // T_c (fs), gaussian
  double t_width = 1.0;  // T_W (fs), gaussian
  double t_on = 0.0;     // plateau start of flat top (fs)
  double t_off = 0.0;    // plateau end of flat top (fs)
  double t_ramp = 1.0;   // plateau ramp width T_w (fs)

  void validate() const;
};

// Field value at time t (V/A). Phases are reduced to (-pi, pi] on a fixed
// binary grid inside this call, so shifting either phase by 2*pi yields a
// bit-identical field.
double field_value(const LaserPulse& pulse, double t);

// Named parameter sets: f1..f4 (Table-style gaussian pulses), stark_plateau,
// stark_gaussian, off. Throws config_error for unknown labels.
LaserPulse preset(const std::string& label);

}  // namespace sshwire

#endif
