#pragma once

#include "kerrmag/params.hpp"

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace kerrmag {

struct ModeState {
  std::complex<double> a1{};
  std::complex<double> a2{};
  std::complex<double> m{};
  double t = 0.0; // seconds

  bool finite() const;
};

/// Right-hand side of the semiclassical equations of motion (no noise),
/// d/dt in 1/s. Returned ModeState carries the rates in its amplitude
/// slots; its t field is the input time.
ModeState derivative(const SystemParams& params, const DriveConfig& drives,
                     const ModeState& state);

enum class SettleStatus { Converged, Unconverged, Diverged };

struct SettleOptions {
  double rel_tol = 1e-9;       // adaptive-step error control, relative
  double conv_tol = 1e-9;      // relative amplitude change over a 10/gamma_m window
  double horizon = 500.0;      // in units of 1/gamma_m
  double ceiling_factor = 1e6; // diverged when |a|^2 or |m|^2 exceeds factor * max(M_scale, 1)
};

struct SettleResult {
  ModeState state;
  SettleStatus status = SettleStatus::Unconverged;
  std::string note; // diagnostic for Diverged / non-finite aborts
};

/// Integrates until the relative change of all three amplitudes over a
/// 10/gamma_m window drops below conv_tol, the horizon is reached
/// (Unconverged, reported not raised) or an amplitude blows past the
/// ceiling (Diverged, expected above the parametric threshold).
SettleResult settle(const SystemParams& params, const DriveConfig& drives,
                    const ModeState& initial, const SettleOptions& opts = {});

enum class SweepDirection { Forward, Backward };

struct TracePoint {
  double abscissa;
  double m_num; // |m|^2 at the settled state
  SettleStatus status;
  ModeState state; // carried forward as the next point's seed
};

/// Traces one hysteresis branch: each point's settle() is seeded with
/// the previous point's final state; the first point starts from zero
/// (Forward convention) or from `seed` when given (Backward traces are
/// seeded from the forward endpoint at the top abscissa). The abscissa
/// list must already be ordered in the stated sweep direction. Diverged
/// propagates as DivergedError carrying the offending abscissa.
std::vector<TracePoint> hysteresis_sweep(
    const SystemParams& params,
    const std::function<DriveConfig(double)>& drives_at,
    std::span<const double> abscissa, SweepDirection direction,
    const SettleOptions& opts = {},
    const std::optional<ModeState>& seed = std::nullopt);

} // namespace kerrmag
