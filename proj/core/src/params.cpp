#include "kerrmag/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace kerrmag {

namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v))
    throw std::domain_error(std::string(name) + " must be finite");
}

void require_ratio(double v, const char* name) {
  require_finite(v, name);
  if (v < 0.0 || v > 1.0)
    throw std::domain_error(std::string(name) + " must lie in [0, 1]");
}

} // namespace

void SystemParams::validate() const {
  require_finite(delta1, "delta1");
  require_finite(delta2, "delta2");
  require_finite(delta_m, "delta_m");
  require_finite(lambda_p, "lambda_p");
  require_finite(kerr_k, "kerr_k");
  for (auto [v, name] : {std::pair{kappa1, "kappa1"}, {kappa2, "kappa2"},
                         {gamma_m, "gamma_m"}, {g, "g"}}) {
    require_finite(v, name);
    if (v <= 0.0)
      throw std::domain_error(std::string(name) + " must be strictly positive");
  }
  require_finite(j_coupling, "j_coupling");
  if (j_coupling < 0.0)
    throw std::domain_error("j_coupling must be nonnegative");
  require_ratio(eta1, "eta1");
  require_ratio(eta2, "eta2");
  require_ratio(eta_m, "eta_m");
}

double drive_amplitude(double eta, double loss_rate, double power, double omega_d) {
  if (eta < 0.0 || eta > 1.0)
    throw std::domain_error("drive_amplitude: eta must lie in [0, 1]");
  if (loss_rate <= 0.0)
    throw std::domain_error("drive_amplitude: loss_rate must be positive");
  if (power < 0.0)
    throw std::domain_error("drive_amplitude: power must be nonnegative");
  if (omega_d <= 0.0)
    throw std::domain_error("drive_amplitude: omega_d must be positive");
  return std::sqrt(eta * loss_rate * power / (constants.hbar * omega_d));
}

double magnon_frequency_from_field(double h_field) {
  if (h_field < 0.0)
    throw std::domain_error("magnon_frequency_from_field: field must be nonnegative");
  return constants.gyromagnetic_gamma * h_field;
}

double kerr_from_material(double mu0, double k_an, double saturation_m, double volume) {
  if (mu0 <= 0.0 || k_an <= 0.0 || saturation_m <= 0.0 || volume <= 0.0)
    throw std::domain_error("kerr_from_material: all inputs must be strictly positive");
  return mu0 * k_an * constants.gyromagnetic_gamma / (saturation_m * saturation_m * volume);
}

DriveConfig DriveConfig::from_powers(const SystemParams& params,
                                     double p1, double p2, double p_m, double omega_d) {
  DriveConfig d;
  d.p1 = p1;
  d.p2 = p2;
  d.p_m = p_m;
  d.omega_d = omega_d;
  d.omega1_amp = drive_amplitude(params.eta1, params.kappa1, p1, omega_d);
  d.omega2_amp = drive_amplitude(params.eta2, params.kappa2, p2, omega_d);
  d.omega_m_amp = drive_amplitude(params.eta_m, params.gamma_m, p_m, omega_d);
  return d;
}

DriveConfig DriveConfig::pdc_only(const SystemParams& params) const {
  return from_powers(params, p1, 0.0, p_m, omega_d);
}

DriveConfig DriveConfig::mc_only(const SystemParams& params) const {
  return from_powers(params, 0.0, p2, p_m, omega_d);
}

} // namespace kerrmag
