#pragma once

#include <numbers>

// Atomic units throughout: hbar = m_e = |e| = 1.
namespace sfi::constants {

inline constexpr double speed_of_light = 137.035999;
inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Intensity carried by a peak field of 1 a.u.
inline constexpr double intensity_au_in_wcm2 = 3.50945e16;

inline double wcm2_to_au(double intensity_wcm2) { return intensity_wcm2 / intensity_au_in_wcm2; }
inline double au_to_wcm2(double intensity_au) { return intensity_au * intensity_au_in_wcm2; }

}  // namespace sfi::constants
