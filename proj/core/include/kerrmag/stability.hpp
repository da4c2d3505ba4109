#pragma once

#include "kerrmag/steady_state.hpp"

#include <Eigen/Core>

#include <functional>
#include <span>
#include <vector>

namespace kerrmag {

/// Linearization of the semiclassical equations of motion around a
/// steady state, in the doubled basis (da1, da1*, da2, da2*, dm, dm*).
/// The doubling is mandatory: the parametric term couples a1 to a1*,
/// and the Kerr term couples dm to dm* through ms^2. Rows for
/// conjugated variables are the complex conjugates of their partners,
/// so eigenvalues come in conjugate pairs and the trace is exactly
/// -(kappa1 + kappa2 + gamma_m).
struct Jacobian6 {
  Eigen::Matrix<std::complex<double>, 6, 6> m;
};

/// Only the params and the magnon amplitude ms enter; the cavity
/// amplitudes drop out of the linearization.
Jacobian6 build_jacobian(const SystemParams& params, const SteadyStateBranch& branch);

Eigen::Matrix<std::complex<double>, 6, 1> jacobian_eigenvalues(const Jacobian6& jac);

/// Stable when all eigenvalue real parts < -margin, Unstable when any
/// exceeds +margin, Marginal otherwise. Marginal is propagated, never
/// coerced; branch selection treats it as Unstable.
Stability classify(const Jacobian6& jac, double margin);

/// Default margin 1e-9 * gamma_m.
Stability classify(const Jacobian6& jac, const SystemParams& params);

/// Quintic roots -> recovered amplitudes -> stability verdict, ascending
/// in M. Roots whose recovery hits the |A| = |B| singularity or whose
/// residual exceeds tol.branch_accept are dropped.
std::vector<SteadyStateBranch> solve_branches(const SystemParams& params,
                                              const DriveConfig& drives,
                                              const RootTolerances& tol = {});

/// One sweep point for turning-point detection.
struct SweepRootSample {
  double abscissa;
  std::vector<double> roots;
};

/// Abscissas where the real-root count changes by 2 (saddle-node
/// bracketing). When `roots_at` is provided each bracket is refined by
/// bisection on the count change down to rel_resolution of the grid
/// span; otherwise bracket midpoints are returned.
std::vector<double> find_turning_points(
    std::span<const SweepRootSample> sweep,
    const std::function<std::vector<double>(double)>& roots_at = nullptr,
    double rel_resolution = 1e-6);

} // namespace kerrmag
