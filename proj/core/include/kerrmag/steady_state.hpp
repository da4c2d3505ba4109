#pragma once

#include "kerrmag/params.hpp"

#include <array>
#include <complex>
#include <vector>

namespace kerrmag {

/// The composite quantities entering the steady-state magnon amplitude
///   ms = (A* Omega + B Omega*) / (|B|^2 - |A|^2),
/// evaluated at the effective magnon detuning t = Delta_m + 2 K M.
/// A and B are affine in t; Omega does not depend on it. Units: rate^3.
struct ABOmega {
  std::complex<double> a_val;
  std::complex<double> b_val;
  std::complex<double> omega_val;
  double t_eff; // Delta_m + 2 K M [rad/s]
};

ABOmega eval_abomega(const SystemParams& params, const DriveConfig& drives, double m_num);

struct RootTolerances {
  double negativity_slack = 1e-6; // roots in (-slack * M_scale, 0) clamp to 0; below: dropped
  double merge = 1e-8;            // relative spacing below which roots are deduplicated
  double residual = 1e-10;        // Newton polish target on the unexpanded defining expression
  double realness = 1e-8;         // keep eigenvalues with |Im z| <= realness * (1 + |Re z|)
  double branch_accept = 1e-8;    // max normalized steady-state residual of an accepted branch
};

/// Coefficients c5..c0 (descending degree) of the magnon-number
/// polynomial P(M) = M (|B|^2 - |A|^2)^2 - |A* Omega + B Omega*|^2.
/// c5, c4, c3 depend only on SystemParams; c2, c1, c0 carry the drives.
struct QuinticPoly {
  std::array<double, 6> c{}; // physical units, c[0] = c5 ... c[5] = c0
  SystemParams params;
  DriveConfig drives;

  // internal nondimensional frame: rates scaled by gamma_m, M = m_scale * x
  double m_scale = 1.0;          // characteristic magnon number max(Omega_k)^2 / gamma_m^2
  std::array<double, 6> c_scaled{}; // coefficients of the polynomial in x

  /// Horner evaluation of the expanded coefficients at physical M.
  double eval(double m_num) const;
  /// The unexpanded defining expression at physical M (no coefficient
  /// cancellation; used for polishing and cross-checks).
  double eval_defining(double m_num) const;
};

QuinticPoly quintic_coefficients(const SystemParams& params, const DriveConfig& drives);

/// All real roots M >= 0 of the polynomial, ascending, deduplicated and
/// Newton-polished on the defining expression. Companion-matrix
/// eigenvalues seed the iteration. Throws DegenerateError when every
/// coefficient sits below the noise floor and NoPhysicalRootError when
/// no nonnegative real root survives the filters.
std::vector<double> solve_quintic(const QuinticPoly& poly, const RootTolerances& tol = {});

enum class Stability { Stable, Unstable, Marginal };

const char* to_string(Stability s);

/// One steady-state branch: the magnon number, the recovered complex
/// amplitudes and the worst normalized residual of the three
/// steady-state equations. `stability` is Marginal until the stability
/// module fills it (solve_branches does).
struct SteadyStateBranch {
  double m_num = 0.0;
  std::complex<double> ms{};
  std::complex<double> a1s{};
  std::complex<double> a2s{};
  double residual = 0.0;
  Stability stability = Stability::Marginal;
};

/// Recovers ms, a2s, a1s by back-substitution at a root of the quintic.
/// Throws SingularPointError when |A| = |B| within relative 1e-10.
SteadyStateBranch recover_branch(const SystemParams& params, const DriveConfig& drives,
                                 double m_num);

} // namespace kerrmag
