#include "kerrmag/experiments.hpp"
#include "kerrmag/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace kerrmag {

namespace {
constexpr double nan_d = std::numeric_limits<double>::quiet_NaN();
}

const char* to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::Power: return "power";
    case SweepVariable::Detuning: return "detuning";
    case SweepVariable::BiasField: return "bias_field";
    case SweepVariable::KerrCoeff: return "kerr";
  }
  return "?";
}

const char* to_string(Spacing s) {
  return s == Spacing::Linear ? "linear" : "log";
}

std::string flags_to_string(unsigned flags) {
  static constexpr std::pair<unsigned, const char*> names[] = {
      {sweep_flags::unconverged, "unconverged"},
      {sweep_flags::singular_point, "singular_point"},
      {sweep_flags::no_stable_pdc, "no_stable_pdc"},
      {sweep_flags::no_stable_mc, "no_stable_mc"},
      {sweep_flags::degenerate, "degenerate"},
      {sweep_flags::no_physical_root, "no_physical_root"},
      {sweep_flags::root_overflow, "root_overflow"},
  };
  std::string out;
  for (const auto& [bit, name] : names) {
    if (flags & bit) {
      if (!out.empty()) out += '|';
      out += name;
    }
  }
  return out;
}

std::vector<double> sweep_grid(const SweepSpec& spec) {
  if (spec.points < 2) throw std::invalid_argument("sweep: points must be >= 2");
  if (!(spec.lo < spec.hi)) throw std::invalid_argument("sweep: lo must be < hi");
  if (spec.spacing == Spacing::Log && spec.lo <= 0.0)
    throw std::invalid_argument("sweep: log spacing requires lo > 0");
  std::vector<double> grid(spec.points);
  const int n = spec.points;
  for (int i = 0; i < n; ++i) {
    const double f = static_cast<double>(i) / (n - 1);
    grid[i] = spec.spacing == Spacing::Linear
                  ? spec.lo + (spec.hi - spec.lo) * f
                  : spec.lo * std::pow(spec.hi / spec.lo, f);
  }
  return grid;
}

std::pair<SystemParams, DriveConfig> instantiate_point(const SweepSpec& spec, double x) {
  SystemParams p = spec.base;
  double p1 = spec.base_drives.p1;
  double p2 = spec.base_drives.p2;
  double omega_d = spec.base_drives.omega_d;

  switch (spec.variable) {
    case SweepVariable::Power:
      p1 = p2 = x;
      break;
    case SweepVariable::Detuning: {
      // magnon frequency fixed; the drive is placed Delta below it
      const double omega_m0 = spec.base_drives.omega_d + spec.base.delta_m;
      p.delta1 = p.delta2 = p.delta_m = x;
      omega_d = omega_m0 - x;
      break;
    }
    case SweepVariable::BiasField:
      p.delta_m = magnon_frequency_from_field(x) - omega_d;
      break;
    case SweepVariable::KerrCoeff:
      p.kerr_k = x;
      break;
  }

  DriveConfig d = DriveConfig::from_powers(p, p1, p2, spec.p_m, omega_d);
  if (d.omega1_amp <= 0.0)
    throw std::domain_error("sweep: PDC drive must be on to derive J from j_mult");
  const double ratio = d.omega2_amp / d.omega1_amp;
  p.lambda_p = spec.lambda_mult * (-0.5 * p.kappa1);
  p.j_coupling = std::abs(spec.j_mult * critical_j(ratio, p.delta1));
  return {p, d};
}

std::vector<double> pdc_roots_at(const SweepSpec& spec, double x, const RootTolerances& tol) {
  const auto [p, d] = instantiate_point(spec, x);
  return solve_quintic(quintic_coefficients(p, d.pdc_only(p)), tol);
}

namespace {

// solve one side of a record, folding the error taxonomy into flags
std::vector<SteadyStateBranch> solve_side(const SystemParams& p, const DriveConfig& d,
                                          const RootTolerances& tol, unsigned& flags) {
  try {
    return solve_branches(p, d, tol);
  } catch (const DegenerateError&) {
    flags |= sweep_flags::degenerate;
  } catch (const NoPhysicalRootError&) {
    flags |= sweep_flags::no_physical_root;
  } catch (const SingularPointError&) {
    flags |= sweep_flags::singular_point;
  }
  return {};
}

void merge_roots(SweepRecord& rec) {
  for (const auto& b : rec.roots_pdc) rec.roots.emplace_back(b.m_num, b.stability);
  for (const auto& b : rec.roots_mc) rec.roots.emplace_back(b.m_num, b.stability);
  std::sort(rec.roots.begin(), rec.roots.end());
  // collapse reciprocal duplicates
  auto near = [](double a, double b) {
    return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
  };
  std::vector<std::pair<double, Stability>> merged;
  for (const auto& r : rec.roots) {
    if (!merged.empty() && near(merged.back().first, r.first) &&
        merged.back().second == r.second)
      continue;
    merged.push_back(r);
  }
  rec.roots = std::move(merged);
  if (rec.roots.size() > 5) rec.flags |= sweep_flags::root_overflow;
}

std::vector<const SteadyStateBranch*> stable_roots(const std::vector<SteadyStateBranch>& v) {
  std::vector<const SteadyStateBranch*> out;
  for (const auto& b : v)
    if (b.stability == Stability::Stable) out.push_back(&b); // Marginal counts as unstable
  return out;
}

// continuation pass: walk the grid in sweep order, following the stable
// root closest to the previously selected one; at a fold the followed
// branch disappears and the nearest survivor is the jump target
void select_by_continuation(std::vector<SweepRecord>& recs, bool forward,
                            std::vector<SteadyStateBranch> SweepRecord::*side,
                            double SweepRecord::*out) {
  double prev = nan_d;
  const int n = static_cast<int>(recs.size());
  for (int step = 0; step < n; ++step) {
    const int i = forward ? step : n - 1 - step;
    auto& rec = recs[i];
    const auto stable = stable_roots(rec.*side);
    if (stable.empty()) {
      rec.*out = nan_d;
      continue; // keep prev: continuation resumes at the next good point
    }
    const SteadyStateBranch* pick = nullptr;
    if (std::isnan(prev)) {
      pick = forward ? stable.front() : stable.back();
    } else {
      pick = stable.front();
      for (const auto* b : stable)
        if (std::abs(b->m_num - prev) < std::abs(pick->m_num - prev)) pick = b;
    }
    rec.*out = pick->m_num;
    prev = pick->m_num;
  }
}

void select_direct(std::vector<SweepRecord>& recs, bool lowest,
                   std::vector<SteadyStateBranch> SweepRecord::*side,
                   double SweepRecord::*out) {
  for (auto& rec : recs) {
    const auto stable = stable_roots(rec.*side);
    rec.*out = stable.empty() ? nan_d : (lowest ? stable.front() : stable.back())->m_num;
  }
}

} // namespace

SweepResult run_sweep(const SweepSpec& spec, int threads, const RootTolerances& tol) {
  const auto grid = sweep_grid(spec);
  SweepResult result;
  result.spec = spec;
  result.records.resize(grid.size());

  auto compute_point = [&](size_t i) {
    SweepRecord& rec = result.records[i];
    rec.abscissa = grid[i];
    const auto [p, d] = instantiate_point(spec, grid[i]);
    rec.roots_pdc = solve_side(p, d.pdc_only(p), tol, rec.flags);
    rec.roots_mc = solve_side(p, d.mc_only(p), tol, rec.flags);
    if (rec.roots_pdc.empty()) rec.flags |= sweep_flags::no_stable_pdc;
    if (rec.roots_mc.empty()) rec.flags |= sweep_flags::no_stable_mc;
    merge_roots(rec);
  };

  const int nthreads = std::max(1, threads);
  if (nthreads == 1 || grid.size() < 8) {
    for (size_t i = 0; i < grid.size(); ++i) compute_point(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) {
      pool.emplace_back([&] {
        for (size_t i = next.fetch_add(1); i < grid.size(); i = next.fetch_add(1))
          compute_point(i);
      });
    }
    for (auto& th : pool) th.join();
  }

  // branch selection (order-stable, independent of the thread count)
  switch (spec.policy) {
    case BranchPolicy::ForwardSweep:
      select_by_continuation(result.records, true, &SweepRecord::roots_pdc, &SweepRecord::m1);
      select_by_continuation(result.records, true, &SweepRecord::roots_mc, &SweepRecord::m2);
      break;
    case BranchPolicy::BackwardSweep:
      select_by_continuation(result.records, false, &SweepRecord::roots_pdc, &SweepRecord::m1);
      select_by_continuation(result.records, false, &SweepRecord::roots_mc, &SweepRecord::m2);
      break;
    case BranchPolicy::LowestStable:
      select_direct(result.records, true, &SweepRecord::roots_pdc, &SweepRecord::m1);
      select_direct(result.records, true, &SweepRecord::roots_mc, &SweepRecord::m2);
      break;
    case BranchPolicy::HighestStable:
      select_direct(result.records, false, &SweepRecord::roots_pdc, &SweepRecord::m1);
      select_direct(result.records, false, &SweepRecord::roots_mc, &SweepRecord::m2);
      break;
  }

  for (auto& rec : result.records) {
    if (std::isnan(rec.m1) || std::isnan(rec.m2)) {
      if (std::isnan(rec.m1)) rec.flags |= sweep_flags::no_stable_pdc;
      if (std::isnan(rec.m2)) rec.flags |= sweep_flags::no_stable_mc;
      rec.nr_abs = nan_d;
      rec.nr_db = nan_d;
    } else {
      const NrRecord nr = make_nr_record(rec.m1, rec.m2);
      rec.nr_abs = nr.nr_abs;
      rec.nr_db = nr.nr_db;
    }
  }
  return result;
}

namespace {

SystemParams caption_params(double delta_over_gamma) {
  SystemParams p;
  p.gamma_m = units::mhz(20.0);
  p.kappa1 = units::mhz(25.0);
  p.kappa2 = units::mhz(5.0);
  p.g = units::mhz(41.0);
  p.delta1 = delta_over_gamma * p.gamma_m;
  p.delta2 = delta_over_gamma * p.gamma_m;
  p.delta_m = 0.0; // omega_m = omega_d at the operating point
  p.kerr_k = units::uhz(0.5);
  p.eta1 = p.eta2 = p.eta_m = 0.5;
  return p;
}

SweepSpec make_spec(SweepVariable var, double lo, double hi, Spacing spacing,
                    double delta_over_gamma, double p_common, double p_m,
                    double j_mult, double lambda_mult) {
  SweepSpec s;
  s.variable = var;
  s.lo = lo;
  s.hi = hi;
  s.spacing = spacing;
  s.j_mult = j_mult;
  s.lambda_mult = lambda_mult;
  s.p_m = p_m;
  s.base = caption_params(delta_over_gamma);
  s.base_drives =
      DriveConfig::from_powers(s.base, p_common, p_common, p_m, units::ghz(10.1));
  return s;
}

} // namespace

std::vector<std::pair<std::string, SweepSpec>> scenario_catalog() {
  std::vector<std::pair<std::string, SweepSpec>> cat;
  cat.reserve(32);

  // (j_mult, lambda_mult) per panel a..d of figs 2-5
  constexpr std::pair<double, double> panel_mults[4] = {
      {1.0, 1.0}, {0.8, 1.0}, {1.0, 0.2}, {0.8, 0.2}};
  constexpr char panel_names[4] = {'a', 'b', 'c', 'd'};

  // fig 2: power sweep, P1 = P2 = P, Delta = 4 gamma_m, no magnon drive
  for (int k = 0; k < 4; ++k) {
    auto [jm, lm] = panel_mults[k];
    cat.emplace_back(std::string("fig2") + panel_names[k],
                     make_spec(SweepVariable::Power, units::mw(0.02), units::mw(20.0),
                               Spacing::Log, 4.0, units::mw(100.0), 0.0, jm, lm));
  }
  // fig 3: detuning sweep at P = 100 mW
  for (int k = 0; k < 4; ++k) {
    auto [jm, lm] = panel_mults[k];
    cat.emplace_back(std::string("fig3") + panel_names[k],
                     make_spec(SweepVariable::Detuning, -4.0 * units::mhz(20.0),
                               4.0 * units::mhz(20.0), Spacing::Linear, 4.0,
                               units::mw(100.0), 0.0, jm, lm));
  }
  // fig 4: bias-field sweep at P = 100 mW, Delta = 0.1 gamma_m
  for (int k = 0; k < 4; ++k) {
    auto [jm, lm] = panel_mults[k];
    cat.emplace_back(std::string("fig4") + panel_names[k],
                     make_spec(SweepVariable::BiasField, units::mt(355.0), units::mt(390.0),
                               Spacing::Linear, 0.1, units::mw(100.0), 0.0, jm, lm));
  }
  // fig 5: Kerr sweep at P = 100 mW, Delta = gamma_m
  for (int k = 0; k < 4; ++k) {
    auto [jm, lm] = panel_mults[k];
    cat.emplace_back(std::string("fig5") + panel_names[k],
                     make_spec(SweepVariable::KerrCoeff, units::uhz(-1.0), units::uhz(2.0),
                               Spacing::Linear, 1.0, units::mw(100.0), 0.0, jm, lm));
  }
  // fig 6: fig2a with a weak magnon drive, P_m in uW
  constexpr double fig6_pm[4] = {1.0, 10.0, 50.0, 100.0};
  for (int k = 0; k < 4; ++k) {
    cat.emplace_back(std::string("fig6") + panel_names[k],
                     make_spec(SweepVariable::Power, units::mw(0.02), units::mw(20.0),
                               Spacing::Log, 4.0, units::mw(100.0), units::uw(fig6_pm[k]),
                               1.0, 1.0));
  }
  // figs 7-9: magnon drive in mW, critical condition kept
  constexpr double pm_mw[4] = {1.0, 10.0, 50.0, 100.0};
  for (int k = 0; k < 4; ++k) {
    cat.emplace_back(std::string("fig7") + panel_names[k],
                     make_spec(SweepVariable::Detuning, -4.0 * units::mhz(20.0),
                               4.0 * units::mhz(20.0), Spacing::Linear, 4.0,
                               units::mw(100.0), units::mw(pm_mw[k]), 1.0, 1.0));
  }
  for (int k = 0; k < 4; ++k) {
    cat.emplace_back(std::string("fig8") + panel_names[k],
                     make_spec(SweepVariable::BiasField, units::mt(355.0), units::mt(390.0),
                               Spacing::Linear, 0.1, units::mw(100.0), units::mw(pm_mw[k]),
                               1.0, 1.0));
  }
  for (int k = 0; k < 4; ++k) {
    cat.emplace_back(std::string("fig9") + panel_names[k],
                     make_spec(SweepVariable::KerrCoeff, units::uhz(-1.0), units::uhz(2.0),
                               Spacing::Linear, 1.0, units::mw(100.0), units::mw(pm_mw[k]),
                               1.0, 1.0));
  }
  return cat;
}

SweepSpec scenario(const std::string& name) {
  const auto cat = scenario_catalog();
  for (const auto& [n, spec] : cat)
    if (n == name) return spec;
  std::string names;
  for (const auto& [n, spec] : cat) {
    if (!names.empty()) names += ' ';
    names += n;
  }
  throw std::out_of_range("unknown scenario '" + name + "'; available: " + names);
}

} // namespace kerrmag
