#include "kerrmag/dynamics.hpp"
#include "kerrmag/errors.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>

namespace kerrmag {

namespace {

using cplx = std::complex<double>;
constexpr cplx I{0.0, 1.0};
using state_type = std::array<double, 6>; // re/im of a1, a2, m

// RHS in dimensionless time tau = gamma_m * t, rates scaled by gamma_m.
struct ScaledRhs {
  cplx d1, d2; // kappa/2 + i delta, scaled
  double delta_m, g, j, lambda, kerr;
  double om1, om2, omm;

  void operator()(const state_type& y, state_type& dy, double /*tau*/) const {
    const cplx a1{y[0], y[1]}, a2{y[2], y[3]}, m{y[4], y[5]};
    const cplx da1 = -d1 * a1 - I * j * a2 + lambda * std::conj(a1) + om1;
    const cplx da2 = -d2 * a2 - I * j * a1 - I * g * m + om2;
    const cplx dm =
        -cplx(0.5, delta_m + 2.0 * kerr * std::norm(m)) * m - I * g * a2 + omm;
    dy = {da1.real(), da1.imag(), da2.real(), da2.imag(), dm.real(), dm.imag()};
  }
};

ScaledRhs make_rhs(const SystemParams& p, const DriveConfig& d) {
  const double s = p.gamma_m;
  ScaledRhs r;
  r.d1 = {0.5 * p.kappa1 / s, p.delta1 / s};
  r.d2 = {0.5 * p.kappa2 / s, p.delta2 / s};
  r.delta_m = p.delta_m / s;
  r.g = p.g / s;
  r.j = p.j_coupling / s;
  r.lambda = p.lambda_p / s;
  r.kerr = p.kerr_k / s;
  r.om1 = d.omega1_amp / s;
  r.om2 = d.omega2_amp / s;
  r.omm = d.omega_m_amp / s;
  return r;
}

double magnon_scale(const ScaledRhs& r) {
  const double om = std::max({std::abs(r.om1), std::abs(r.om2), std::abs(r.omm)});
  return om > 0.0 ? om * om : 1.0;
}

bool all_finite(const state_type& y) {
  return std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); });
}

} // namespace

bool ModeState::finite() const {
  return std::isfinite(a1.real()) && std::isfinite(a1.imag()) &&
         std::isfinite(a2.real()) && std::isfinite(a2.imag()) &&
         std::isfinite(m.real()) && std::isfinite(m.imag()) && std::isfinite(t);
}

ModeState derivative(const SystemParams& params, const DriveConfig& drives,
                     const ModeState& state) {
  if (!state.finite()) throw NumericError("derivative: non-finite state");
  const cplx d1{0.5 * params.kappa1, params.delta1};
  const cplx d2{0.5 * params.kappa2, params.delta2};
  const cplx dm{0.5 * params.gamma_m,
                params.delta_m + 2.0 * params.kerr_k * std::norm(state.m)};
  ModeState rate;
  rate.a1 = -d1 * state.a1 - I * params.j_coupling * state.a2 +
            params.lambda_p * std::conj(state.a1) + drives.omega1_amp;
  rate.a2 = -d2 * state.a2 - I * params.j_coupling * state.a1 -
            I * params.g * state.m + drives.omega2_amp;
  rate.m = -dm * state.m - I * params.g * state.a2 + drives.omega_m_amp;
  rate.t = state.t;
  return rate;
}

SettleResult settle(const SystemParams& params, const DriveConfig& drives,
                    const ModeState& initial, const SettleOptions& opts) {
  namespace ode = boost::numeric::odeint;

  const ScaledRhs rhs = make_rhs(params, drives);
  const double m_scale = magnon_scale(rhs);
  const double ceiling = opts.ceiling_factor * std::max(m_scale, 1.0);
  const double amp_scale = std::sqrt(std::max(m_scale, 1.0));
  const double amp_floor = 1e-6 * amp_scale;

  state_type y = {initial.a1.real(), initial.a1.imag(), initial.a2.real(),
                  initial.a2.imag(), initial.m.real(),  initial.m.imag()};

  auto result_from = [&](SettleStatus status, double tau, std::string note) {
    SettleResult res;
    res.state.a1 = {y[0], y[1]};
    res.state.a2 = {y[2], y[3]};
    res.state.m = {y[4], y[5]};
    res.state.t = initial.t + tau / params.gamma_m;
    res.status = status;
    res.note = std::move(note);
    return res;
  };

  if (!all_finite(y)) return result_from(SettleStatus::Diverged, 0.0, "non-finite initial state");

  // error control scaled to the expected amplitude magnitude
  auto stepper = ode::make_controlled(opts.rel_tol * amp_scale, opts.rel_tol,
                                      ode::runge_kutta_dopri5<state_type>());

  const double window = 10.0; // convergence window, units of 1/gamma_m
  const double tau_end = opts.horizon;
  double tau = 0.0;
  double dt = 1e-3;
  double next_check = std::min(window, tau_end);
  state_type snapshot = y;
  long steps = 0;
  const long max_steps = 200'000'000;

  while (tau < tau_end) {
    double dt_try = std::min(dt, next_check - tau);
    if (dt_try <= 0.0) dt_try = dt;
    double t_local = tau;
    const auto rc = stepper.try_step(rhs, y, t_local, dt_try);
    if (rc == ode::controlled_step_result::success) {
      tau = t_local;
      dt = dt_try;
    } else {
      dt = dt_try; // shrunk by the controller; retry
    }
    if (++steps > max_steps)
      return result_from(SettleStatus::Unconverged, tau, "step budget exhausted");
    if (!all_finite(y))
      return result_from(SettleStatus::Diverged, tau, "non-finite amplitude during integration");

    const double n1 = y[0] * y[0] + y[1] * y[1];
    const double n2 = y[2] * y[2] + y[3] * y[3];
    const double nm = y[4] * y[4] + y[5] * y[5];
    if (n1 > ceiling || n2 > ceiling || nm > ceiling)
      return result_from(SettleStatus::Diverged, tau, "amplitude ceiling exceeded");

    if (tau >= next_check - 1e-12) {
      double rel = 0.0;
      for (int k = 0; k < 6; k += 2) {
        const double dre = y[k] - snapshot[k];
        const double dim = y[k + 1] - snapshot[k + 1];
        const double mag = std::hypot(y[k], y[k + 1]);
        rel = std::max(rel, std::hypot(dre, dim) / (amp_floor + mag));
      }
      if (rel < opts.conv_tol) return result_from(SettleStatus::Converged, tau, {});
      snapshot = y;
      next_check = std::min(next_check + window, tau_end);
    }
  }
  return result_from(SettleStatus::Unconverged, tau, "horizon reached");
}

std::vector<TracePoint> hysteresis_sweep(
    const SystemParams& params,
    const std::function<DriveConfig(double)>& drives_at,
    std::span<const double> abscissa, SweepDirection direction,
    const SettleOptions& opts, const std::optional<ModeState>& seed) {
  if (abscissa.size() >= 2) {
    const bool ascending = abscissa[1] > abscissa[0];
    if ((direction == SweepDirection::Forward) != ascending)
      throw std::invalid_argument("hysteresis_sweep: abscissa not monotone in the sweep direction");
  }

  std::vector<TracePoint> trace;
  trace.reserve(abscissa.size());
  ModeState state = seed.value_or(ModeState{});
  for (double x : abscissa) {
    state.t = 0.0;
    const SettleResult res = settle(params, drives_at(x), state, opts);
    if (res.status == SettleStatus::Diverged) throw DivergedError(x);
    state = res.state;
    trace.push_back({x, std::norm(state.m), res.status, state});
  }
  return trace;
}

} // namespace kerrmag
