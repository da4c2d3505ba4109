#include "kerrmag/steady_state.hpp"
#include "kerrmag/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace kerrmag {

namespace {

using cplx = std::complex<double>;
constexpr cplx I{0.0, 1.0};

// Nondimensional frame: every rate divided by gamma_m, magnon number
// divided by m_scale = max(Omega_k)^2 / gamma_m^2. Realistic drives put
// the physical coefficients ~30 orders of magnitude apart; in this frame
// they are O(1)-ish and the companion matrix stays well conditioned.
struct Scaled {
  cplx d1, d2;          // kappa/2 + i delta
  double delta_m;
  double g, j, lambda;
  double kerr_x;        // 2 K m_scale / gamma_m: t(x) = delta_m + kerr_x * x
  double om1, om2, omm;
  double m_scale;
  double s;             // gamma_m, to restore physical units

  // A(x) = alpha_a + beta_a x, B(x) = alpha_b + beta_b x,
  // N(x) = conj(A)Omega + B conj(Omega) = n0 + n1 x
  cplx alpha_a, beta_a, alpha_b, beta_b;
  cplx omega_c;
  cplx n0, n1;
  // |B|^2 - |A|^2 = q0 + q1 x + q2 x^2 ; |N|^2 / m_scale = r0 + r1 x + r2 x^2
  double q0, q1, q2;
  double r0, r1, r2;

  cplx a_at(double x) const { return alpha_a + beta_a * x; }
  cplx b_at(double x) const { return alpha_b + beta_b * x; }
  cplx n_at(double x) const { return n0 + n1 * x; }
  double d_at(double x) const { return std::norm(b_at(x)) - std::norm(a_at(x)); }

  // defining expression x D(x)^2 - |N(x)|^2 / m_scale, unexpanded
  double f_at(double x) const { return x * d_at(x) * d_at(x) - std::norm(n_at(x)) / m_scale; }
  double fprime_at(double x) const {
    const double d = d_at(x);
    const double dp = 2.0 * (std::real(std::conj(b_at(x)) * beta_b) -
                             std::real(std::conj(a_at(x)) * beta_a));
    return d * d + 2.0 * x * d * dp - 2.0 * std::real(std::conj(n_at(x)) * n1) / m_scale;
  }
  double fscale_at(double x) const {
    const double d = d_at(x);
    return std::max({std::abs(x * d * d), std::norm(n_at(x)) / m_scale,
                     std::numeric_limits<double>::min()});
  }
};

Scaled make_scaled(const SystemParams& p, const DriveConfig& d) {
  Scaled sc;
  sc.s = p.gamma_m;
  const double s = sc.s;
  sc.d1 = {0.5 * p.kappa1 / s, p.delta1 / s};
  sc.d2 = {0.5 * p.kappa2 / s, p.delta2 / s};
  sc.delta_m = p.delta_m / s;
  sc.g = p.g / s;
  sc.j = p.j_coupling / s;
  sc.lambda = p.lambda_p / s;
  sc.om1 = d.omega1_amp / s;
  sc.om2 = d.omega2_amp / s;
  sc.omm = d.omega_m_amp / s;

  const double om_max = std::max({std::abs(sc.om1), std::abs(sc.om2), std::abs(sc.omm)});
  sc.m_scale = om_max > 0.0 ? om_max * om_max : 1.0;
  sc.kerr_x = 2.0 * (p.kerr_k / s) * sc.m_scale;

  const cplx dd = sc.d1 * sc.d2 + sc.j * sc.j;
  const cplx dm0{0.5, sc.delta_m};
  sc.alpha_a = dd * dm0 + sc.g * sc.g * sc.d1;
  sc.beta_a = I * sc.kerr_x * dd;
  sc.alpha_b = sc.lambda * (std::conj(sc.d2) * std::conj(dm0) + sc.g * sc.g);
  sc.beta_b = -I * sc.kerr_x * sc.lambda * std::conj(sc.d2);
  sc.omega_c = sc.g * sc.j * sc.om1 + I * sc.g * (sc.d1 + sc.lambda) * sc.om2 -
               (sc.d1 * sc.d2 - sc.lambda * std::conj(sc.d2) + sc.j * sc.j) * sc.omm;

  sc.n0 = std::conj(sc.alpha_a) * sc.omega_c + sc.alpha_b * std::conj(sc.omega_c);
  sc.n1 = std::conj(sc.beta_a) * sc.omega_c + sc.beta_b * std::conj(sc.omega_c);

  sc.q0 = std::norm(sc.alpha_b) - std::norm(sc.alpha_a);
  sc.q1 = 2.0 * (std::real(std::conj(sc.alpha_b) * sc.beta_b) -
                 std::real(std::conj(sc.alpha_a) * sc.beta_a));
  sc.q2 = std::norm(sc.beta_b) - std::norm(sc.beta_a);
  sc.r0 = std::norm(sc.n0) / sc.m_scale;
  sc.r1 = 2.0 * std::real(std::conj(sc.n0) * sc.n1) / sc.m_scale;
  sc.r2 = std::norm(sc.n1) / sc.m_scale;
  return sc;
}

std::array<double, 6> scaled_coefficients(const Scaled& sc) {
  // x (q0 + q1 x + q2 x^2)^2 - (r0 + r1 x + r2 x^2), descending degree
  return {sc.q2 * sc.q2,
          2.0 * sc.q1 * sc.q2,
          sc.q1 * sc.q1 + 2.0 * sc.q0 * sc.q2,
          2.0 * sc.q0 * sc.q1 - sc.r2,
          sc.q0 * sc.q0 - sc.r1,
          -sc.r0};
}

// Eigenvalues of the companion matrix of the polynomial with the given
// descending coefficients; the variable is rescaled first so the roots
// land in an O(1) disk (Fujiwara bound).
std::vector<cplx> companion_roots(const std::array<double, 6>& c_desc) {
  // trim (exactly) vanishing leading coefficients
  int lead = 0;
  while (lead < 5 && c_desc[lead] == 0.0) ++lead;
  const int n = 5 - lead; // degree
  if (n == 0) return {};
  const double* a = &c_desc[lead]; // a[0] leading ... a[n] constant

  if (n == 1) return {cplx(-a[1] / a[0], 0.0)};

  double sigma = 0.0;
  for (int k = 1; k <= n; ++k) {
    if (a[k] != 0.0)
      sigma = std::max(sigma, std::pow(std::abs(a[k] / a[0]), 1.0 / k));
  }
  if (sigma == 0.0) return std::vector<cplx>(n, cplx(0.0, 0.0)); // x^n = 0

  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  double sig_pow = 1.0;
  for (int k = 1; k <= n; ++k) {
    sig_pow /= sigma; // sigma^{-k}
    // monic coefficient of y^{n-k}: a[k]/a[0] * sigma^{-k}
    comp(n - k, n - 1) = -(a[k] / a[0]) * sig_pow;
  }

  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw NumericError("companion-matrix eigenvalue iteration failed");

  std::vector<cplx> roots;
  roots.reserve(n);
  for (int i = 0; i < n; ++i) roots.push_back(sigma * es.eigenvalues()[i]);
  return roots;
}

// Newton on the unexpanded defining expression; returns the best iterate.
double polish_root(const Scaled& sc, double x0, double res_tol) {
  double x = std::max(x0, 0.0);
  double best_x = x;
  double best_res = std::abs(sc.f_at(x)) / sc.fscale_at(x);
  for (int iter = 0; iter < 64 && best_res >= res_tol; ++iter) {
    const double f = sc.f_at(x);
    const double fp = sc.fprime_at(x);
    const double res = std::abs(f) / sc.fscale_at(x);
    if (res < best_res) {
      best_res = res;
      best_x = x;
    }
    if (fp == 0.0) break;
    double dx = -f / fp;
    const double cap = 0.5 * (1.0 + std::abs(x));
    if (std::abs(dx) > cap) dx = std::copysign(cap, dx);
    if (x + dx < 0.0) dx = -0.5 * x; // stay on the physical side
    x += dx;
    if (!std::isfinite(x)) break;
    const double res_new = std::abs(sc.f_at(x)) / sc.fscale_at(x);
    if (res_new < best_res) {
      best_res = res_new;
      best_x = x;
    }
  }
  return best_x;
}

} // namespace

const char* to_string(Stability s) {
  switch (s) {
    case Stability::Stable: return "stable";
    case Stability::Unstable: return "unstable";
    case Stability::Marginal: return "marginal";
  }
  return "?";
}

ABOmega eval_abomega(const SystemParams& params, const DriveConfig& drives, double m_num) {
  const Scaled sc = make_scaled(params, drives);
  const double x = m_num / sc.m_scale;
  const double s3 = sc.s * sc.s * sc.s;
  ABOmega out;
  out.a_val = sc.a_at(x) * s3;
  out.b_val = sc.b_at(x) * s3;
  out.omega_val = sc.omega_c * s3;
  out.t_eff = params.delta_m + 2.0 * params.kerr_k * m_num;
  return out;
}

double QuinticPoly::eval(double m_num) const {
  double acc = 0.0;
  for (double ck : c) acc = acc * m_num + ck;
  return acc;
}

double QuinticPoly::eval_defining(double m_num) const {
  const Scaled sc = make_scaled(params, drives);
  const double s3 = sc.s * sc.s * sc.s;
  const double s12 = (s3 * s3) * (s3 * s3);
  return s12 * m_scale * sc.f_at(m_num / m_scale);
}

QuinticPoly quintic_coefficients(const SystemParams& params, const DriveConfig& drives) {
  const Scaled sc = make_scaled(params, drives);
  QuinticPoly poly;
  poly.params = params;
  poly.drives = drives;
  poly.m_scale = sc.m_scale;
  poly.c_scaled = scaled_coefficients(sc);

  const double s3 = sc.s * sc.s * sc.s;
  const double s12 = (s3 * s3) * (s3 * s3);
  // c_k(physical) = gamma^12 * m_scale^(1-k) * c_k(scaled), k = degree
  double mpow = s12 * sc.m_scale; // k = 0
  for (int k = 0; k <= 5; ++k) {
    poly.c[5 - k] = mpow * poly.c_scaled[5 - k];
    mpow /= sc.m_scale;
  }
  return poly;
}

std::vector<double> solve_quintic(const QuinticPoly& poly, const RootTolerances& tol) {
  const auto& cs = poly.c_scaled;
  double cmax = 0.0;
  for (double ck : cs) cmax = std::max(cmax, std::abs(ck));
  if (cmax < 1e-280) throw DegenerateError();

  const Scaled sc = make_scaled(poly.params, poly.drives);

  const auto seeds = companion_roots(cs);
  if (seeds.empty()) {
    // constant polynomial: either identically ~0 (degenerate, handled
    // above) or it never crosses zero
    throw NoPhysicalRootError();
  }

  std::vector<double> roots;
  for (const cplx& z : seeds) {
    if (std::abs(z.imag()) > tol.realness * (1.0 + std::abs(z.real()))) continue;
    const double x = z.real();
    if (x < -tol.negativity_slack) continue; // discarded silently
    roots.push_back(polish_root(sc, std::max(x, 0.0), tol.residual));
  }

  std::sort(roots.begin(), roots.end());
  // dedupe at relative spacing tol.merge (unit floor in scaled units)
  std::vector<double> merged;
  for (double x : roots) {
    if (!merged.empty() && x - merged.back() <= tol.merge * std::max(1.0, x)) {
      // keep the candidate with the smaller defining-expression residual
      const double r_old = std::abs(sc.f_at(merged.back())) / sc.fscale_at(merged.back());
      const double r_new = std::abs(sc.f_at(x)) / sc.fscale_at(x);
      if (r_new < r_old) merged.back() = x;
    } else {
      merged.push_back(x);
    }
  }
  if (merged.empty()) throw NoPhysicalRootError();

  for (double& x : merged) x *= sc.m_scale;
  return merged;
}

SteadyStateBranch recover_branch(const SystemParams& params, const DriveConfig& drives,
                                 double m_num) {
  const Scaled sc = make_scaled(params, drives);
  const double x = m_num / sc.m_scale;

  const cplx A = sc.a_at(x);
  const cplx B = sc.b_at(x);
  const double abs_a = std::abs(A);
  const double abs_b = std::abs(B);
  if (std::abs(abs_b - abs_a) < 1e-10 * abs_a)
    throw SingularPointError(abs_a, abs_b);

  const double D = std::norm(B) - std::norm(A);
  const cplx ms = (std::conj(A) * sc.omega_c + B * std::conj(sc.omega_c)) / D;

  const double t = sc.delta_m + sc.kerr_x * x;
  const cplx dm{0.5, t};
  const cplx a2s = (sc.omm - dm * ms) / (I * sc.g);

  cplx a1s;
  const double j_floor = 1e-9 * std::max({1.0, std::abs(sc.d1), std::abs(sc.d2), sc.g});
  if (sc.j > j_floor) {
    // printed back-substitution through the second steady-state equation
    a1s = ((sc.d2 * sc.omm - I * sc.g * sc.om2) - (sc.d2 * dm + sc.g * sc.g) * ms) /
          (sc.g * sc.j);
  } else {
    // J ~ 0 decouples the PDC; solve the first equation's conjugate pair
    const cplx w = -sc.om1 + I * sc.j * a2s;
    const double det = std::norm(sc.d1) - sc.lambda * sc.lambda;
    if (std::abs(det) < 1e-14 * std::max(1.0, std::norm(sc.d1)))
      throw NumericError("PDC amplitude recovery singular (parametric threshold)");
    a1s = (-std::conj(sc.d1) * w - sc.lambda * std::conj(w)) / det;
  }

  // normalized residuals of the three steady-state equations
  auto normalized = [](const cplx& lhs, std::initializer_list<double> term_mags) {
    double big = 0.0;
    for (double m : term_mags) big = std::max(big, m);
    if (big == 0.0) return std::abs(lhs) == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return std::abs(lhs) / big;
  };
  const cplx eq1 = -sc.d1 * a1s - I * sc.j * a2s + sc.lambda * std::conj(a1s) + sc.om1;
  const cplx eq2 = -sc.d2 * a2s - I * sc.j * a1s - I * sc.g * ms + sc.om2;
  const cplx eq3 = -dm * ms - I * sc.g * a2s + sc.omm;
  const double r1 = normalized(eq1, {std::abs(sc.d1 * a1s), sc.j * std::abs(a2s),
                                     std::abs(sc.lambda) * std::abs(a1s), std::abs(sc.om1)});
  const double r2 = normalized(eq2, {std::abs(sc.d2 * a2s), sc.j * std::abs(a1s),
                                     sc.g * std::abs(ms), std::abs(sc.om2)});
  const double r3 = normalized(eq3, {std::abs(dm * ms), sc.g * std::abs(a2s),
                                     std::abs(sc.omm)});

  SteadyStateBranch branch;
  branch.m_num = m_num;
  branch.ms = ms;
  branch.a1s = a1s;
  branch.a2s = a2s;
  branch.residual = std::max({r1, r2, r3});
  branch.stability = Stability::Marginal;
  return branch;
}

} // namespace kerrmag
