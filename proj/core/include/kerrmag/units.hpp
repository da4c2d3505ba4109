#pragma once

#include <numbers>

// Unit convention: every rate, detuning and coupling inside the library is
// an angular frequency in rad/s. User-facing surfaces (config files, CLI,
// printed tables) quote frequencies as f = omega/2pi, the way they appear
// in lab notebooks. These helpers are the single conversion point.

namespace kerrmag::units {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// f/2pi with the given prefix -> rad/s
constexpr double ghz(double f) { return two_pi * f * 1e9; }
constexpr double mhz(double f) { return two_pi * f * 1e6; }
constexpr double khz(double f) { return two_pi * f * 1e3; }
constexpr double hz(double f) { return two_pi * f; }
constexpr double uhz(double f) { return two_pi * f * 1e-6; }

// rad/s -> f/2pi in Hz (output convention for tables)
constexpr double to_hz(double omega) { return omega / two_pi; }
constexpr double to_mhz(double omega) { return omega / (two_pi * 1e6); }

// powers -> W
constexpr double mw(double p) { return p * 1e-3; }
constexpr double uw(double p) { return p * 1e-6; }

// magnetic field -> T
constexpr double mt(double h) { return h * 1e-3; }

} // namespace kerrmag::units

namespace kerrmag {

struct PhysicalConstants {
  double hbar = 1.054571817e-34;                    // J s
  double gyromagnetic_gamma = units::ghz(28.0);     // rad/(s T), gamma/2pi = 28 GHz/T
};

// immutable, shared by all modules
inline constexpr PhysicalConstants constants{};

} // namespace kerrmag
