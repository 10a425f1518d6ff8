#ifndef JLIP_QUASICONFORMAL_HPP
#define JLIP_QUASICONFORMAL_HPP

#include <complex>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "jlip/metrics.hpp"
#include "jlip/report.hpp"

namespace jlip::quasiconformal {

using Complex = std::complex<double>;
using metrics::MapFn;

// A black-box C^2 self-map of the disk with its finite-difference policy.
// The callback must be defined on |z| <= 1 - boundary_margin/2; the stencil
// step is fd_step, shrunk to (1-|z|)/10 near the boundary.
class PlanarMap {
 public:
  explicit PlanarMap(MapFn eval, double fd_step = 1e-4,
                     double boundary_margin = 1e-2);

  Complex operator()(Complex z) const { return eval_(z); }
  const MapFn& fn() const { return eval_; }
  double fd_step() const { return fd_step_; }
  double boundary_margin() const { return boundary_margin_; }

  // Effective stencil step at z.
  double step_at(Complex z) const;

 private:
  MapFn eval_;
  double fd_step_;
  double boundary_margin_;
};

// Wirtinger data of f at one point. df_norm = |f_z| + |f_zbar|,
// jacobian = |f_z|^2 - |f_zbar|^2.
struct DiffSample {
  Complex z{0.0, 0.0};
  Complex f_z{0.0, 0.0};
  Complex f_zbar{0.0, 0.0};
  Complex laplacian{0.0, 0.0};
  double df_norm = 0.0;
  double jacobian = 0.0;
};

// Constants of the differential inequalities |Df|^2 <= K J_f + K' and
// |lap f| <= B |Df|^2 + C.
struct QCParams {
  double K = 1.0;        // >= 1
  double K_prime = 0.0;  // >= 0
  double B = 0.0;        // >= 0
  double C = 0.0;        // >= 0
};

void validate(const QCParams& q);

// Central-difference Wirtinger derivatives (f_z, f_zbar), O(h^2).
std::pair<Complex, Complex> wirtinger(const PlanarMap& f, Complex z);

// Five-point stencil Laplacian.
Complex laplacian(const PlanarMap& f, Complex z);

DiffSample diff_sample(const PlanarMap& f, Complex z);

// Lattice nodes of the grid spec (row-major, bottom to top).
std::vector<Complex> grid_nodes(const GridSpec& grid);

// Checks df_norm^2 <= K*jacobian + K' + tol at every node. Nodes with
// jacobian <= 0 are flagged (sense-preservation requires J_f > 0 a.e.) but
// only inequality failures count as violations.
VerificationReport kk_prime_certificate(const PlanarMap& f, const QCParams& q,
                                        const GridSpec& grid, double tol = 1e-6);

// Checks |laplacian| <= B*df_norm^2 + C + tol at every node.
VerificationReport poisson_certificate(const PlanarMap& f, const QCParams& q,
                                       const GridSpec& grid, double tol = 1e-6);

// The subharmonicity feasibility quadratic in the exponent A:
//   (sqrt(K')-M)^2 A^2 + [2 B M K^2 (sqrt(K')-M) - B K^2 K'] A + B^2 M^2 K^4.
double exponent_quadratic(const QCParams& q, double sup_df, double A);

// Picks a positive A != B K^2 making the quadratic nonnegative, given the
// derivative bound sup_df = sup |Df|. Case split:
//   B = 0                         -> 1
//   sqrt(K') = M                  -> B K^2 / 2
//   K' + 4M^2 - 4M sqrt(K') <= 0  -> 1
//   otherwise                     -> closed-form larger root, floored at 1e-6
//                                    and scaled by (1+1e-6) to clear both the
//                                    root's roundoff and the A = B K^2 line.
double choose_exponent(const QCParams& q, double sup_df);

// Checks that phi(z) = (e^{A(|f(z)|-1)} - 1)/A has nonnegative stencil
// Laplacian (>= -tol) at every node; nodes with |f| < 1e-3 are skipped and
// counted (the construction divides by |f|).
VerificationReport subharmonicity_check(const PlanarMap& f, double exponent,
                                        const GridSpec& grid, double tol = 1e-4);

// Pointwise identities of the modulus rho = |f| with s = f/|f|:
//  (a) lap|f| = |f| |Ds|^2 + Re(conj(s) lap f)      (1e-3 relative)
//  (b) |D|f||^2 = 4 |f|_z |f|_zbar                  (1e-3 relative)
//  (c) |D rho| >= |Df|/K - sqrt(K')/K - tol
// at the given points; points with |f| < 1e-3 are skipped and counted.
VerificationReport modulus_identities_check(const PlanarMap& f, const QCParams& q,
                                            std::span<const Complex> points,
                                            double tol = 1e-3);

// Distance-ratio Lipschitz audit:
//  1. requires the (K,K') and Poisson certificates on the grid
//     (CertificateError otherwise),
//  2. estimates sup_df = sup |Df| and stretch_sup = sup (1-|z|^2)/(1-|f|^2)
//     over the grid (RangeError if |f(z)| >= 1 at a node),
//  3. sweeps j(f(z),f(w))/j(z,w) against
//     L = 2 * stretch_sup * max(sup_df, 1/(2*stretch_sup)).
// The suprema are grid estimates, not proven bounds; grid resolution is
// carried in the report.
struct AuditReport {
  double sup_df = 0.0;       // M
  double stretch_sup = 0.0;  // C
  double constant = 0.0;     // L
  GridSpec grid{};
  VerificationReport kk;
  VerificationReport poisson;
  VerificationReport sweep;
};

AuditReport qc_audit(const PlanarMap& f, const QCParams& q,
                     const SampleSpec& samples, const GridSpec& grid,
                     std::vector<RatioSample>* trace = nullptr,
                     double certificate_tol = 1e-6);

// Certifies f(lambda z) against (K, K' |lambda|^2) on the same grid,
// |lambda| <= 1.
VerificationReport composition_property_check(const PlanarMap& f,
                                              const QCParams& q, Complex lambda,
                                              const GridSpec& grid,
                                              double tol = 1e-6);

}  // namespace jlip::quasiconformal

#endif  // JLIP_QUASICONFORMAL_HPP
