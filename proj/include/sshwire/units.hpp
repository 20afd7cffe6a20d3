#ifndef SSHWIRE_UNITS_HPP
#define SSHWIRE_UNITS_HPP

// Internal unit system: energies in eV, times in fs, lengths in Angstrom.
// Momenta are eV*fs/Angstrom, masses eV*fs^2/Angstrom^2, electric fields
// V/Angstrom (so |e|*x*E is an energy with |e| = 1).

namespace sshwire {

inline constexpr double kHbar = 0.6582119569;  // eV fs

}  // namespace sshwire

#endif
