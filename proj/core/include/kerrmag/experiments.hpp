#pragma once

#include "kerrmag/nonreciprocity.hpp"
#include "kerrmag/stability.hpp"

#include <string>
#include <utility>
#include <vector>

namespace kerrmag {

enum class SweepVariable { Power, Detuning, BiasField, KerrCoeff };
enum class Spacing { Linear, Log };

const char* to_string(SweepVariable v);
const char* to_string(Spacing s);

/// One figure-style sweep. The abscissa is in SI units per variable:
/// W (Power), rad/s (Detuning), T (BiasField), rad/s (KerrCoeff).
///
/// Caption rules applied per point:
///  - Power: P1 = P2 = abscissa, P_m fixed.
///  - Detuning: Delta_m = Delta1 = Delta2 = abscissa and
///    omega_d = omega_m - abscissa (magnon frequency fixed, drive moves;
///    Rabi amplitudes are rederived at the new omega_d).
///  - BiasField: Delta_m = gamma H - omega_d with omega_d fixed.
///  - KerrCoeff: K = abscissa.
///
/// J and lambda are not taken from `base`: they are derived at every
/// point as j_mult * J_c and lambda_mult * lambda_c from the critical
/// pair at that point's detuning and drive ratio (J is clamped to |J|;
/// at the kept critical pair a sign flip only exchanges the two
/// single-drive responses).
struct SweepSpec {
  SweepVariable variable = SweepVariable::Power;
  double lo = 0.0;
  double hi = 0.0;
  int points = 400;
  Spacing spacing = Spacing::Linear;
  double j_mult = 1.0;
  double lambda_mult = 1.0;
  double p_m = 0.0; // magnon drive power [W]
  BranchPolicy policy = BranchPolicy::ForwardSweep;
  SystemParams base;       // operating point; j_coupling/lambda_p ignored
  DriveConfig base_drives; // common cavity power and omega_d template
};

namespace sweep_flags {
inline constexpr unsigned none = 0;
inline constexpr unsigned unconverged = 1u << 0;
inline constexpr unsigned singular_point = 1u << 1;
inline constexpr unsigned no_stable_pdc = 1u << 2;
inline constexpr unsigned no_stable_mc = 1u << 3;
inline constexpr unsigned degenerate = 1u << 4;
inline constexpr unsigned no_physical_root = 1u << 5;
inline constexpr unsigned root_overflow = 1u << 6; // union of root sets exceeds 5 file columns
} // namespace sweep_flags

std::string flags_to_string(unsigned flags);

/// One grid point. `roots` is the merged, ascending union of the two
/// single-drive root sets (coincident at reciprocal points); the
/// per-drive sets keep full attribution. m1/m2 are the policy-selected
/// stable magnon numbers (NaN when a side has no stable branch).
struct SweepRecord {
  double abscissa = 0.0;
  std::vector<std::pair<double, Stability>> roots;
  std::vector<SteadyStateBranch> roots_pdc;
  std::vector<SteadyStateBranch> roots_mc;
  double m1 = 0.0;
  double m2 = 0.0;
  double nr_abs = 0.0;
  double nr_db = 0.0;
  unsigned flags = sweep_flags::none;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepRecord> records; // in grid order
};

std::vector<double> sweep_grid(const SweepSpec& spec);

/// Resolves one abscissa into concrete (params, drives) per the caption
/// rules above.
std::pair<SystemParams, DriveConfig> instantiate_point(const SweepSpec& spec, double abscissa);

/// Root set of the PDC-driven configuration at one abscissa (turning
/// point refinement callback).
std::vector<double> pdc_roots_at(const SweepSpec& spec, double abscissa,
                                 const RootTolerances& tol = {});

/// Runs the sweep. Root finding and classification are evaluated in
/// parallel across grid points when threads > 1; branch selection for
/// the ForwardSweep/BackwardSweep policies is a sequential continuation
/// pass, so the result is identical for any thread count.
SweepResult run_sweep(const SweepSpec& spec, int threads = 1, const RootTolerances& tol = {});

/// Built-in specs "fig2a".."fig9d" reproducing every figure panel, with
/// all caption parameters pre-filled. Abscissa ranges are not quoted in
/// the source material; the defaults center on the caption operating
/// points and are config-overridable.
std::vector<std::pair<std::string, SweepSpec>> scenario_catalog();

/// Lookup in scenario_catalog; throws std::out_of_range with the list
/// of valid names.
SweepSpec scenario(const std::string& name);

} // namespace kerrmag
