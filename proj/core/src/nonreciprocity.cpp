#include "kerrmag/nonreciprocity.hpp"
#include "kerrmag/errors.hpp"
#include "kerrmag/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kerrmag {

double critical_j0(double drive_ratio, double delta1, double kappa1) {
  return drive_ratio * std::sqrt(delta1 * delta1 + 0.25 * kappa1 * kappa1);
}

double critical_j(double drive_ratio, double delta1) {
  return drive_ratio * delta1;
}

CriticalParams critical_params(const SystemParams& params, const DriveConfig& drives) {
  if (drives.omega1_amp <= 0.0)
    throw std::domain_error("critical_params: Omega1 must be positive (ratio Omega2/Omega1)");
  CriticalParams cp;
  cp.drive_ratio = drives.omega2_amp / drives.omega1_amp;
  cp.j_c0 = critical_j0(cp.drive_ratio, params.delta1, params.kappa1);
  cp.lambda_c0 = 0.0;
  cp.j_c = critical_j(cp.drive_ratio, params.delta1);
  cp.lambda_c = -0.5 * params.kappa1;
  cp.magnon_drive_warning = drives.p_m > 0.0;
  return cp;
}

CoefficientMatch coefficient_match(const SystemParams& params,
                                   const DriveConfig& template_drives) {
  const QuinticPoly pdc = quintic_coefficients(params, template_drives.pdc_only(params));
  const QuinticPoly mc = quintic_coefficients(params, template_drives.mc_only(params));

  CoefficientMatch out;
  for (int k = 0; k < 3; ++k) {
    const double a = pdc.c[3 + k]; // c2, c1, c0
    const double b = mc.c[3 + k];
    out.pdc[k] = a;
    out.mc[k] = b;
    const double big = std::max(std::abs(a), std::abs(b));
    out.rel_mismatch[k] = big == 0.0 ? 0.0 : std::abs(a - b) / big;
  }
  out.reciprocal = std::all_of(out.rel_mismatch.begin(), out.rel_mismatch.end(),
                               [](double r) { return r < 1e-9; });
  return out;
}

const char* to_string(BranchPolicy p) {
  switch (p) {
    case BranchPolicy::ForwardSweep: return "forward";
    case BranchPolicy::BackwardSweep: return "backward";
    case BranchPolicy::LowestStable: return "lowest";
    case BranchPolicy::HighestStable: return "highest";
  }
  return "?";
}

NrRecord make_nr_record(double m1, double m2) {
  NrRecord r;
  r.m1 = m1;
  r.m2 = m2;
  r.nr_abs = std::abs(m1 - m2);
  r.nr_db = (m1 > 0.0 && m2 > 0.0) ? 10.0 * (std::log10(m1) - std::log10(m2))
                                   : std::numeric_limits<double>::quiet_NaN();
  return r;
}

namespace {

// stable branches ascending in M; throws when none
std::vector<const SteadyStateBranch*> stable_of(const std::vector<SteadyStateBranch>& branches) {
  std::vector<const SteadyStateBranch*> stable;
  for (const auto& b : branches)
    if (b.stability == Stability::Stable) stable.push_back(&b);
  if (stable.empty()) throw NoStableBranchError();
  return stable;
}

double select_branch(const SystemParams& params, const DriveConfig& drives,
                     const std::vector<SteadyStateBranch>& branches, BranchPolicy policy,
                     const SettleOptions& settle_opts) {
  const auto stable = stable_of(branches);
  switch (policy) {
    case BranchPolicy::LowestStable:
      return stable.front()->m_num;
    case BranchPolicy::HighestStable:
      return stable.back()->m_num;
    case BranchPolicy::ForwardSweep:
    case BranchPolicy::BackwardSweep: {
      ModeState seed;
      if (policy == BranchPolicy::BackwardSweep) {
        const auto* top = stable.back();
        seed.a1 = top->a1s;
        seed.a2 = top->a2s;
        seed.m = top->ms;
      }
      const SettleResult res = settle(params, drives, seed, settle_opts);
      if (res.status == SettleStatus::Diverged)
        throw DivergedError(std::norm(res.state.m));
      // snap the landed magnon number to the nearest stable root
      const double landed = std::norm(res.state.m);
      const SteadyStateBranch* best = stable.front();
      for (const auto* b : stable)
        if (std::abs(b->m_num - landed) < std::abs(best->m_num - landed)) best = b;
      return best->m_num;
    }
  }
  throw std::logic_error("unreachable branch policy");
}

} // namespace

NrRecord response_pair(const SystemParams& params, const DriveConfig& template_drives,
                       BranchPolicy policy, const RootTolerances& tol,
                       const SettleOptions& settle_opts) {
  const DriveConfig d1 = template_drives.pdc_only(params);
  const DriveConfig d2 = template_drives.mc_only(params);
  const auto b1 = solve_branches(params, d1, tol);
  const auto b2 = solve_branches(params, d2, tol);
  const double m1 = select_branch(params, d1, b1, policy, settle_opts);
  const double m2 = select_branch(params, d2, b2, policy, settle_opts);
  return make_nr_record(m1, m2);
}

} // namespace kerrmag
