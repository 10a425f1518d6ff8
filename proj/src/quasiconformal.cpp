#include "jlip/quasiconformal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "jlip/errors.hpp"

namespace jlip::quasiconformal {

namespace {

constexpr Complex kI{0.0, 1.0};

[[noreturn]] void throw_stencil(Complex z, double h, double limit) {
  std::ostringstream msg;
  msg << "stencil of radius " << h << " around (" << z.real() << ", "
      << z.imag() << ") leaves the map domain |z| <= " << limit;
  throw StencilError(msg.str());
}

void check_stencil(const PlanarMap& f, Complex z, double h) {
  const double limit = 1.0 - f.boundary_margin() / 2.0;
  if (std::abs(z) + h > limit) throw_stencil(z, h, limit);
}

// Shared scalar-field stencil; used for |f| and the subharmonicity transform.
template <typename Field>
double scalar_laplacian(const Field& g, Complex z, double h) {
  return (g(z + h) + g(z - h) + g(z + kI * h) + g(z - kI * h) - 4.0 * g(z)) /
         (h * h);
}

template <typename Field>
std::pair<double, double> scalar_gradient(const Field& g, Complex z, double h) {
  const double gx = (g(z + h) - g(z - h)) / (2.0 * h);
  const double gy = (g(z + kI * h) - g(z - kI * h)) / (2.0 * h);
  return {gx, gy};
}

}  // namespace

PlanarMap::PlanarMap(MapFn eval, double fd_step, double boundary_margin)
    : eval_(std::move(eval)), fd_step_(fd_step), boundary_margin_(boundary_margin) {
  if (!eval_) throw DomainError("planar map needs an evaluation callback");
  if (fd_step <= 0.0 || boundary_margin <= 0.0)
    throw DomainError("fd_step and boundary_margin must be positive");
  if (!(fd_step < boundary_margin / 10.0))
    throw DomainError("fd_step must be smaller than boundary_margin/10");
}

double PlanarMap::step_at(Complex z) const {
  return std::min(fd_step_, (1.0 - std::abs(z)) / 10.0);
}

void validate(const QCParams& q) {
  if (q.K < 1.0) throw DomainError("K must be >= 1");
  if (q.K_prime < 0.0) throw DomainError("K' must be >= 0");
  if (q.B < 0.0) throw DomainError("B must be >= 0");
  if (q.C < 0.0) throw DomainError("C must be >= 0");
}

std::pair<Complex, Complex> wirtinger(const PlanarMap& f, Complex z) {
  const double h = f.step_at(z);
  check_stencil(f, z, h);
  const Complex fx = (f(z + h) - f(z - h)) / (2.0 * h);
  const Complex fy = (f(z + kI * h) - f(z - kI * h)) / (2.0 * h);
  return {0.5 * (fx - kI * fy), 0.5 * (fx + kI * fy)};
}

Complex laplacian(const PlanarMap& f, Complex z) {
  const double h = f.step_at(z);
  check_stencil(f, z, h);
  return (f(z + h) + f(z - h) + f(z + kI * h) + f(z - kI * h) - 4.0 * f(z)) /
         (h * h);
}

DiffSample diff_sample(const PlanarMap& f, Complex z) {
  const double h = f.step_at(z);
  check_stencil(f, z, h);
  const Complex fe = f(z + h);
  const Complex fw = f(z - h);
  const Complex fn = f(z + kI * h);
  const Complex fs = f(z - kI * h);
  const Complex fx = (fe - fw) / (2.0 * h);
  const Complex fy = (fn - fs) / (2.0 * h);

  DiffSample d;
  d.z = z;
  d.f_z = 0.5 * (fx - kI * fy);
  d.f_zbar = 0.5 * (fx + kI * fy);
  d.laplacian = (fe + fw + fn + fs - 4.0 * f(z)) / (h * h);
  d.df_norm = std::abs(d.f_z) + std::abs(d.f_zbar);
  d.jacobian = std::norm(d.f_z) - std::norm(d.f_zbar);
  return d;
}

std::vector<Complex> grid_nodes(const GridSpec& grid) {
  if (grid.n < 2) throw DomainError("grid needs at least 2 nodes per axis");
  if (grid.margin <= 0.0 || grid.margin >= 1.0)
    throw DomainError("grid margin must lie in (0, 1)");
  std::vector<Complex> nodes;
  const double step = 2.0 / (grid.n - 1);
  for (int iy = 0; iy < grid.n; ++iy) {
    const double y = -1.0 + iy * step;
    for (int ix = 0; ix < grid.n; ++ix) {
      const double x = -1.0 + ix * step;
      const Complex z{x, y};
      if (std::abs(z) <= 1.0 - grid.margin) nodes.push_back(z);
    }
  }
  return nodes;
}

VerificationReport kk_prime_certificate(const PlanarMap& f, const QCParams& q,
                                        const GridSpec& grid, double tol) {
  validate(q);
  VerificationReport rep;
  rep.check = "(K,K') certificate";
  rep.tolerance = tol;
  rep.max_value = -std::numeric_limits<double>::infinity();

  for (const Complex z : grid_nodes(grid)) {
    const DiffSample d = diff_sample(f, z);
    ++rep.samples;
    if (d.jacobian <= 0.0) ++rep.flagged;
    const double margin =
        d.df_norm * d.df_norm - (q.K * d.jacobian + q.K_prime);
    if (margin > rep.max_value) {
      rep.max_value = margin;
      rep.witness = {z, z};
    }
    if (margin <= tol)
      ++rep.passes;
    else
      ++rep.violations;
  }
  rep.pass = rep.violations == 0;
  return rep;
}

VerificationReport poisson_certificate(const PlanarMap& f, const QCParams& q,
                                       const GridSpec& grid, double tol) {
  validate(q);
  VerificationReport rep;
  rep.check = "poisson certificate";
  rep.tolerance = tol;
  rep.max_value = -std::numeric_limits<double>::infinity();

  for (const Complex z : grid_nodes(grid)) {
    const DiffSample d = diff_sample(f, z);
    ++rep.samples;
    const double margin =
        std::abs(d.laplacian) - (q.B * d.df_norm * d.df_norm + q.C);
    if (margin > rep.max_value) {
      rep.max_value = margin;
      rep.witness = {z, z};
    }
    if (margin <= tol)
      ++rep.passes;
    else
      ++rep.violations;
  }
  rep.pass = rep.violations == 0;
  return rep;
}

double exponent_quadratic(const QCParams& q, double sup_df, double A) {
  const double sq = std::sqrt(q.K_prime);
  const double K2 = q.K * q.K;
  const double a2 = (sq - sup_df) * (sq - sup_df);
  const double a1 = 2.0 * q.B * sup_df * K2 * (sq - sup_df) - q.B * K2 * q.K_prime;
  const double a0 = q.B * q.B * sup_df * sup_df * K2 * K2;
  return a2 * A * A + a1 * A + a0;
}

double choose_exponent(const QCParams& q, double sup_df) {
  validate(q);
  if (sup_df <= 0.0) throw DomainError("sup |Df| must be positive");

  if (q.B == 0.0) return 1.0;  // quadratic reduces to (sqrt(K')-M)^2 A^2 >= 0

  const double sq = std::sqrt(q.K_prime);
  const double bk2 = q.B * q.K * q.K;
  if (sq == sup_df) return bk2 / 2.0;  // any A <= B K^2 works

  const double disc = q.K_prime + 4.0 * sup_df * sup_df - 4.0 * sup_df * sq;
  if (disc <= 0.0) return 1.0;  // quadratic nonnegative for every A

  const double bound = (q.B * q.K * q.K * q.K_prime -
                        2.0 * q.B * sup_df * q.K * q.K * (sq - sup_df) +
                        q.B * q.K * q.K * std::sqrt(q.K_prime * disc)) /
                       (2.0 * (sq - sup_df) * (sq - sup_df));
  // The bound is the larger root; scale off it so the substituted quadratic
  // clears roundoff, which also moves A off the excluded line A = B K^2
  // (K' = 0 makes the root exactly B K^2).
  double A = std::max(bound, 1e-6) * (1.0 + 1e-6);
  if (A == bk2) A *= 1.0 + 1e-6;
  return A;
}

VerificationReport subharmonicity_check(const PlanarMap& f, double exponent,
                                        const GridSpec& grid, double tol) {
  if (exponent <= 0.0) throw DomainError("exponent must be positive");
  VerificationReport rep;
  rep.check = "subharmonicity check";
  rep.tolerance = tol;
  rep.max_value = -std::numeric_limits<double>::infinity();

  const auto phi = [&f, exponent](Complex z) {
    return std::expm1(exponent * (std::abs(f(z)) - 1.0)) / exponent;
  };

  for (const Complex z : grid_nodes(grid)) {
    ++rep.samples;
    if (std::abs(f(z)) < 1e-3) {
      ++rep.skips;  // construction divides by |f|
      continue;
    }
    const double h = f.step_at(z);
    check_stencil(f, z, h);
    const double lap = scalar_laplacian(phi, z, h);
    const double deficit = -lap;  // positive when the field dips subharmonic
    if (deficit > rep.max_value) {
      rep.max_value = deficit;
      rep.witness = {z, z};
    }
    if (lap >= -tol)
      ++rep.passes;
    else
      ++rep.violations;
  }
  rep.pass = rep.violations == 0;
  return rep;
}

VerificationReport modulus_identities_check(const PlanarMap& f, const QCParams& q,
                                            std::span<const Complex> points,
                                            double tol) {
  validate(q);
  VerificationReport rep;
  rep.check = "modulus identities";
  rep.tolerance = tol;
  rep.max_value = 0.0;

  const auto modulus = [&f](Complex z) { return std::abs(f(z)); };
  const auto phase = [&f](Complex z) {
    const Complex v = f(z);
    return v / std::abs(v);
  };

  for (const Complex z : points) {
    ++rep.samples;
    const double fm = std::abs(f(z));
    if (fm < 1e-3) {
      ++rep.skips;
      continue;
    }
    const double h = f.step_at(z);
    check_stencil(f, z, h);

    // (a) lap|f| = |f| |Ds|^2 + Re(conj(s) lap f)
    const double lap_mod = scalar_laplacian(modulus, z, h);
    const Complex sx = (phase(z + h) - phase(z - h)) / (2.0 * h);
    const Complex sy = (phase(z + kI * h) - phase(z - kI * h)) / (2.0 * h);
    const Complex s_z = 0.5 * (sx - kI * sy);
    const Complex s_zbar = 0.5 * (sx + kI * sy);
    const double ds = std::abs(s_z) + std::abs(s_zbar);
    const DiffSample d = diff_sample(f, z);
    const double rhs_a =
        fm * ds * ds + (std::conj(phase(z)) * d.laplacian).real();
    const double scale_a = std::max(std::abs(lap_mod), std::abs(rhs_a));
    const double err_a =
        scale_a < 1e-12 ? 0.0 : std::abs(lap_mod - rhs_a) / scale_a;

    // (b) |D|f||^2 = 4 |f|_z |f|_zbar
    const auto [gx, gy] = scalar_gradient(modulus, z, h);
    const double lhs_b = gx * gx + gy * gy;
    const Complex g_z = 0.5 * Complex{gx, -gy};
    const Complex g_zbar = 0.5 * Complex{gx, gy};
    const double rhs_b = std::abs(4.0 * g_z * g_zbar);
    const double scale_b = std::max(lhs_b, rhs_b);
    const double err_b = scale_b < 1e-12 ? 0.0 : std::abs(lhs_b - rhs_b) / scale_b;

    // (c) |D rho| >= |Df|/K - sqrt(K')/K - tol
    const double d_rho = std::sqrt(lhs_b);
    const double floor_c =
        d.df_norm / q.K - std::sqrt(q.K_prime) / q.K;
    const double deficit_c =
        (floor_c - d_rho) / std::max(1.0, d.df_norm);  // >0 means violated

    const double worst = std::max({err_a, err_b, deficit_c});
    if (worst > rep.max_value) {
      rep.max_value = worst;
      rep.witness = {z, z};
    }
    if (err_a <= tol && err_b <= tol && deficit_c <= tol)
      ++rep.passes;
    else
      ++rep.violations;
  }
  rep.pass = rep.violations == 0;
  return rep;
}

AuditReport qc_audit(const PlanarMap& f, const QCParams& q,
                     const SampleSpec& samples, const GridSpec& grid,
                     std::vector<RatioSample>* trace, double certificate_tol) {
  AuditReport audit;
  audit.grid = grid;
  audit.kk = kk_prime_certificate(f, q, grid, certificate_tol);
  if (!audit.kk.pass) {
    std::ostringstream msg;
    msg << "(K,K') certificate failed at (" << audit.kk.witness.z.real() << ", "
        << audit.kk.witness.z.imag() << ") with margin " << audit.kk.max_value;
    throw CertificateError(msg.str());
  }
  audit.poisson = poisson_certificate(f, q, grid, certificate_tol);
  if (!audit.poisson.pass) {
    std::ostringstream msg;
    msg << "poisson certificate failed at (" << audit.poisson.witness.z.real()
        << ", " << audit.poisson.witness.z.imag() << ") with margin "
        << audit.poisson.max_value;
    throw CertificateError(msg.str());
  }

  double sup_df = 0.0;
  double stretch = 0.0;
  for (const Complex z : grid_nodes(grid)) {
    const DiffSample d = diff_sample(f, z);
    sup_df = std::max(sup_df, d.df_norm);
    const double fm = std::abs(f(z));
    if (fm >= 1.0) {
      std::ostringstream msg;
      msg << "map leaves the unit disk at grid node (" << z.real() << ", "
          << z.imag() << "): |f| = " << fm;
      throw RangeError(msg.str());
    }
    stretch = std::max(stretch, (1.0 - std::norm(z)) / (1.0 - fm * fm));
  }
  audit.sup_df = sup_df;
  audit.stretch_sup = stretch;
  audit.constant = 2.0 * stretch * std::max(sup_df, 1.0 / (2.0 * stretch));

  Rng rng(samples.seed);
  std::vector<std::pair<Complex, Complex>> pairs;
  pairs.reserve(samples.count);
  for (std::size_t i = 0; i < samples.count; ++i) {
    const Complex z = rng.disk_point(samples.margin);
    const Complex w = rng.disk_point(samples.margin);
    pairs.emplace_back(z, w);
  }
  audit.sweep = metrics::j_ratio_sweep(f.fn(), pairs, audit.constant, 1e-9,
                                       samples.seed, trace);
  audit.sweep.check = "audit j-ratio sweep";
  return audit;
}

VerificationReport composition_property_check(const PlanarMap& f,
                                              const QCParams& q, Complex lambda,
                                              const GridSpec& grid, double tol) {
  if (std::abs(lambda) > 1.0)
    throw DomainError("composition factor must satisfy |lambda| <= 1");
  const MapFn inner = f.fn();
  PlanarMap pulled([inner, lambda](Complex z) { return inner(lambda * z); },
                   f.fd_step(), f.boundary_margin());
  QCParams scaled = q;
  scaled.K_prime = q.K_prime * std::norm(lambda);
  VerificationReport rep = kk_prime_certificate(pulled, scaled, grid, tol);
  rep.check = "composition certificate";
  return rep;
}

}  // namespace jlip::quasiconformal
