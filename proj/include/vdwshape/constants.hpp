#pragma once

namespace vdw {

inline constexpr double hbar = 1.054571817e-34;   // J s
inline constexpr double eV   = 1.602176634e-19;   // J
inline constexpr double e_charge = 1.602176634e-19;   // C
inline constexpr double m_e  = 9.1093837015e-31;  // kg
inline constexpr double eps0 = 8.8541878128e-12;  // F/m

// photon energy in eV -> angular frequency in rad/s
inline constexpr double ev_to_rads(double e) { return e * eV / hbar; }

} // namespace vdw
