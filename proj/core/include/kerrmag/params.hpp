#pragma once

#include "kerrmag/units.hpp"

namespace kerrmag {

/// Fixed physical rates and detunings of the three-mode system: a
/// parametrically driven cavity (PDC, mode a1), a magnonic cavity (MC,
/// mode a2) and the Kerr magnon mode m hosted by the YIG sphere.
///
/// All entries are angular frequencies in rad/s. kappa1, kappa2 and
/// gamma_m are TOTAL loss rates; the equations of motion damp with
/// kappa/2 and gamma_m/2, the halving happens inside the formulas.
struct SystemParams {
  double delta1 = 0.0;     // PDC detuning omega1 - omega_d
  double delta2 = 0.0;     // MC detuning omega2 - omega_d
  double delta_m = 0.0;    // bare magnon detuning omega_m - omega_d
  double kappa1 = 0.0;     // PDC total loss rate, > 0
  double kappa2 = 0.0;     // MC total loss rate, > 0
  double gamma_m = 0.0;    // magnon total loss rate, > 0
  double g = 0.0;          // magnon-MC coupling, > 0
  double j_coupling = 0.0; // PDC-MC photon coupling J, >= 0
  double lambda_p = 0.0;   // parametric strength, signed (the critical value is negative)
  double kerr_k = 0.0;     // Kerr coefficient K, signed by crystal-axis orientation
  double eta1 = 0.5;       // external/total loss ratio of the PDC, in [0,1]
  double eta2 = 0.5;       // same for the MC
  double eta_m = 0.5;      // same for the magnons

  /// Throws std::domain_error when a rate is nonpositive, an eta is
  /// outside [0,1], J is negative, or any field is non-finite.
  void validate() const;
};

/// Drive powers and the Rabi amplitudes derived from them.
/// Amplitudes are real and nonnegative by convention; relative drive
/// phases are out of scope. The degenerate pump at omega_p = 2 omega_d
/// is implied by the rotating frame.
struct DriveConfig {
  double p1 = 0.0;  // PDC drive power [W]
  double p2 = 0.0;  // MC drive power [W]
  double p_m = 0.0; // magnon drive power [W]
  double omega_d = 0.0; // drive frequency [rad/s]

  double omega1_amp = 0.0; // Omega_1 = sqrt(eta1 kappa1 P1 / hbar omega_d) [rad/s]
  double omega2_amp = 0.0; // Omega_2
  double omega_m_amp = 0.0; // Omega_m (gamma_m in place of kappa)

  /// Derives all three Rabi amplitudes from powers. Throws on negative
  /// power or nonpositive omega_d.
  static DriveConfig from_powers(const SystemParams& params,
                                 double p1, double p2, double p_m, double omega_d);

  /// Same config with the MC drive off (PDC and magnon drives kept).
  DriveConfig pdc_only(const SystemParams& params) const;
  /// Same config with the PDC drive off.
  DriveConfig mc_only(const SystemParams& params) const;

  bool any_drive_on() const {
    return omega1_amp != 0.0 || omega2_amp != 0.0 || omega_m_amp != 0.0;
  }
};

/// Omega = sqrt(eta * loss_rate * power / (hbar * omega_d)), in rad/s.
/// Domain error on eta outside [0,1], loss_rate <= 0, power < 0 or
/// omega_d <= 0.
double drive_amplitude(double eta, double loss_rate, double power, double omega_d);

/// omega_m = gamma * H for a YIG sphere in a static field H >= 0 [T].
double magnon_frequency_from_field(double h_field);

/// Kerr coefficient K = mu0 * K_an * gamma / (M^2 * V_m). Convenience
/// helper only; sweeps take K directly. All inputs strictly positive.
double kerr_from_material(double mu0, double k_an, double saturation_m, double volume);

} // namespace kerrmag
