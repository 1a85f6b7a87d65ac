#pragma once

// Metal units throughout: energies in eV, lengths in Angstrom.
// Stress and elastic moduli cross module boundaries in GPa,
// surface energies in J/m^2.

namespace atomforge::units {

inline constexpr double kGPaPerEvA3 = 160.21766208;   // 1 eV/A^3 in GPa
inline constexpr double kJm2PerEvA2 = 16.021766208;   // 1 eV/A^2 in J/m^2
inline constexpr double kMPaPerGPa = 1000.0;

} // namespace atomforge::units
