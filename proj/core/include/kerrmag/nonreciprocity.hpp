#pragma once

#include "kerrmag/dynamics.hpp"
#include "kerrmag/steady_state.hpp"

#include <array>

namespace kerrmag {

/// The coupling/parametric strengths at which the single-drive
/// magnon-number polynomials coincide (drives only through the PDC or
/// only through the MC, no magnon drive). Two solutions exist: one
/// without the parametric element and one with it, which trades the
/// sqrt(Delta1^2 + kappa1^2/4) prefactor for plain Delta1 and so relaxes
/// the matching requirement on J.
struct CriticalParams {
  double j_c0 = 0.0;      // (Omega2/Omega1) sqrt(Delta1^2 + kappa1^2/4)
  double lambda_c0 = 0.0; // exactly 0
  double j_c = 0.0;       // (Omega2/Omega1) Delta1 (signed)
  double lambda_c = 0.0;  // exactly -kappa1/2
  double drive_ratio = 0.0;         // Omega2/Omega1 used
  bool magnon_drive_warning = false; // true when P_m > 0: formulas assume Omega_m = 0
};

// formula cores, usable with kappa1 = 0 (degenerate limit)
double critical_j0(double drive_ratio, double delta1, double kappa1);
double critical_j(double drive_ratio, double delta1);

/// Domain error when Omega1 = 0 (the ratio Omega2/Omega1 must exist).
CriticalParams critical_params(const SystemParams& params, const DriveConfig& drives);

/// Relative mismatch of the drive-dependent coefficients (c2, c1, c0)
/// between the PDC-only and MC-only reductions of the template drives
/// (the magnon drive, if present, is kept in both).
struct CoefficientMatch {
  std::array<double, 3> rel_mismatch{}; // c2, c1, c0
  std::array<double, 3> pdc{};
  std::array<double, 3> mc{};
  bool reciprocal = false; // all three mismatches < 1e-9
};

CoefficientMatch coefficient_match(const SystemParams& params, const DriveConfig& template_drives);

enum class BranchPolicy { ForwardSweep, BackwardSweep, LowestStable, HighestStable };

const char* to_string(BranchPolicy p);

/// One nonreciprocity sample: branch-selected magnon number under
/// PDC-only drive (m1) vs MC-only drive (m2). nr_db is
/// 10 (log10 m1 - log10 m2); NaN unless both are strictly positive.
struct NrRecord {
  double m1 = 0.0;
  double m2 = 0.0;
  double nr_abs = 0.0;
  double nr_db = 0.0;
};

NrRecord make_nr_record(double m1, double m2);

/// Solves the steady state under each single-cavity drive and selects
/// one stable branch per the policy. ForwardSweep settles from zero,
/// BackwardSweep from the highest stable branch; both snap the landed
/// state to the nearest stable root. Marginal counts as unstable for
/// selection. Throws NoStableBranchError when a side has no stable root.
NrRecord response_pair(const SystemParams& params, const DriveConfig& template_drives,
                       BranchPolicy policy, const RootTolerances& tol = {},
                       const SettleOptions& settle_opts = {});

} // namespace kerrmag
