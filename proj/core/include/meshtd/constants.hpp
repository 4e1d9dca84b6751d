#pragma once

namespace meshtd {

inline constexpr double c0   = 299792458.0;        // m/s
inline constexpr double eps0 = 8.8541878128e-12;   // F/m
inline constexpr double mu0  = 1.25663706212e-6;   // H/m
inline constexpr double eta0 = 376.730313668;      // Ohm, sqrt(mu0/eps0)
inline constexpr double pi   = 3.14159265358979323846;

}  // namespace meshtd
