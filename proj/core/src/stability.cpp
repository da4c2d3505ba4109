#include "kerrmag/stability.hpp"
#include "kerrmag/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace kerrmag {

namespace {
using cplx = std::complex<double>;
constexpr cplx I{0.0, 1.0};
} // namespace

Jacobian6 build_jacobian(const SystemParams& p, const SteadyStateBranch& branch) {
  const cplx ms = branch.ms;
  const double m_abs2 = std::norm(ms);

  const cplx d1{0.5 * p.kappa1, p.delta1};   // kappa/2 + i delta
  const cplx d2{0.5 * p.kappa2, p.delta2};
  // Kerr shift: 4K|ms|^2 on the diagonal, 2K ms^2 cross-coupling
  const cplx dm{0.5 * p.gamma_m, p.delta_m + 4.0 * p.kerr_k * m_abs2};
  const cplx kerr_cross = -I * 2.0 * p.kerr_k * ms * ms;

  Eigen::Matrix<cplx, 6, 6> J = Eigen::Matrix<cplx, 6, 6>::Zero();
  // da1
  J(0, 0) = -d1;
  J(0, 1) = p.lambda_p;
  J(0, 2) = -I * p.j_coupling;
  // da2
  J(2, 2) = -d2;
  J(2, 0) = -I * p.j_coupling;
  J(2, 4) = -I * p.g;
  // dm
  J(4, 4) = -dm;
  J(4, 5) = kerr_cross;
  J(4, 2) = -I * p.g;
  // conjugate rows: row(2k+1) = conj(row(2k)) with columns swapped in pairs
  for (int r = 0; r < 6; r += 2) {
    for (int c = 0; c < 6; c += 2) {
      J(r + 1, c + 1) = std::conj(J(r, c));
      J(r + 1, c) = std::conj(J(r, c + 1));
    }
  }
  return Jacobian6{J};
}

Eigen::Matrix<cplx, 6, 1> jacobian_eigenvalues(const Jacobian6& jac) {
  Eigen::ComplexEigenSolver<Eigen::Matrix<cplx, 6, 6>> es(jac.m, false);
  if (es.info() != Eigen::Success)
    throw NumericError("6x6 eigenvalue computation failed");
  return es.eigenvalues();
}

Stability classify(const Jacobian6& jac, double margin) {
  const auto ev = jacobian_eigenvalues(jac);
  double max_re = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 6; ++i) max_re = std::max(max_re, ev[i].real());
  if (max_re < -margin) return Stability::Stable;
  if (max_re > margin) return Stability::Unstable;
  return Stability::Marginal;
}

Stability classify(const Jacobian6& jac, const SystemParams& params) {
  return classify(jac, 1e-9 * params.gamma_m);
}

std::vector<SteadyStateBranch> solve_branches(const SystemParams& params,
                                              const DriveConfig& drives,
                                              const RootTolerances& tol) {
  const QuinticPoly poly = quintic_coefficients(params, drives);
  const auto roots = solve_quintic(poly, tol);

  std::vector<SteadyStateBranch> branches;
  branches.reserve(roots.size());
  for (double m_num : roots) {
    SteadyStateBranch b;
    try {
      b = recover_branch(params, drives, m_num);
    } catch (const SingularPointError&) {
      continue; // drive-free artifacts of the modulus-squared construction
    }
    if (b.residual > tol.branch_accept) continue;
    b.stability = classify(build_jacobian(params, b), params);
    branches.push_back(b);
  }
  return branches;
}

std::vector<double> find_turning_points(
    std::span<const SweepRootSample> sweep,
    const std::function<std::vector<double>(double)>& roots_at,
    double rel_resolution) {
  std::vector<double> points;
  if (sweep.size() < 2) return points;

  const double span = std::abs(sweep.back().abscissa - sweep.front().abscissa);
  const double resolution = rel_resolution * span;

  auto count_at = [&](double x) { return static_cast<int>(roots_at(x).size()); };

  for (size_t i = 0; i + 1 < sweep.size(); ++i) {
    int ca = static_cast<int>(sweep[i].roots.size());
    int cb = static_cast<int>(sweep[i + 1].roots.size());
    if (ca == cb) continue;
    double a = sweep[i].abscissa;
    double b = sweep[i + 1].abscissa;
    if (roots_at) {
      while (std::abs(b - a) > resolution) {
        const double mid = 0.5 * (a + b);
        const int cm = count_at(mid);
        if (cm == ca) {
          a = mid;
        } else {
          b = mid;
          cb = cm;
        }
      }
    }
    const int pairs = std::max(1, std::abs(cb - ca) / 2);
    for (int k = 0; k < pairs; ++k) points.push_back(0.5 * (a + b));
  }
  return points;
}

} // namespace kerrmag
