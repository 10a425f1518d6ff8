#ifndef JLIP_ALPHAHARMONIC_HPP
#define JLIP_ALPHAHARMONIC_HPP

#include <complex>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "jlip/metrics.hpp"
#include "jlip/report.hpp"
#include "jlip/specfun.hpp"

namespace jlip::alphaharmonic {

using Complex = std::complex<double>;
using metrics::DiskPoint;
using metrics::MapFn;

// Finitely supported two-sided coefficient sequence {c_k}, k nonzero,
// |k| <= kMaxIndex; c_0 is structurally zero so every map fixes the origin.
class CoefficientSequence {
 public:
  static constexpr int kMaxIndex = 64;

  CoefficientSequence() = default;

  // Throws DomainError on k = 0, |k| > kMaxIndex or a duplicate index.
  void set(int k, Complex c);

  // Entries sorted by index.
  const std::vector<std::pair<int, Complex>>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<std::pair<int, Complex>> entries_;
};

// A solution of the weighted elliptic equation on the disk, represented by
// its expansion
//   f(z) = sum_{k>=1} c_k F(-a/2, k-a/2; k+1; |z|^2) z^k
//        + sum_{k>=1} c_{-k} F(-a/2, k-a/2; k+1; |z|^2) conj(z)^k,
// with a = alpha > -1. The hypergeometric factors are evaluated through
// cached specfun series, one per distinct |k|.
class AlphaHarmonicMap {
 public:
  AlphaHarmonicMap(double alpha, CoefficientSequence coeffs);

  double alpha() const { return alpha_; }
  const CoefficientSequence& coeffs() const { return coeffs_; }

  Complex operator()(Complex z) const;

  // Callable copy for APIs that take a plain map.
  MapFn fn() const;

 private:
  double alpha_ = 0.0;
  CoefficientSequence coeffs_;
  // shared so copies of the map reuse one coefficient cache
  std::shared_ptr<std::map<int, specfun::Gauss2F1Series>> series_;
};

// Series evaluation at a validated disk point.
Complex evaluate(const AlphaHarmonicMap& f, const DiskPoint& z);

// Finite-difference residual of the weighted elliptic operator applied to a
// black-box map:
//   -(a^2/4) W^{-a-1} f + (a/2) W^{-a-1} (z f_z + conj(z) f_zbar)
//   + W^{-a} f_{z zbar},   W = 1 - |z|^2,
// with f_z, f_zbar, f_{z zbar} from the central stencils of the
// quasiconformal module. Throws StepError unless 10h < 1 - |z|.
Complex operator_residual(const MapFn& f, double alpha, const DiskPoint& z,
                          double h);

struct ConditionResult {
  double value = 0.0;   // S = sum_k (|c_k|+|c_{-k}|) F(-a/2, k-a/2; k+1; 1)
  bool satisfied = false;  // S <= 1 + 1e-12
};

// The coefficient condition as printed in the source theory (signed inner
// sums, evaluated by the Gauss summation).
ConditionResult contraction_condition(const AlphaHarmonicMap& f);

// Strengthened variant with absolute values on the series coefficients:
//   sum_k (|c_k|+|c_{-k}|) sum_n |(-a/2)_n (k-a/2)_n| / ((k+1)_n n!).
// This is the sum that actually majorizes the increment chain; see
// bound_decomposition. Computed exactly: term signs stabilize after finitely
// many n, so the tail reduces to Gauss summations.
double majorant_condition(const AlphaHarmonicMap& f);

// Seeded Lipschitz sweep in the distance ratio metric: samples pairs (z,w),
// reports max j(f(z),f(w))/j(z,w) and whether it stays <= constant + 1e-9.
// Pairs with f leaving the closed unit disk are recorded (`flagged`) and
// skipped; coincident pairs are skipped and counted.
VerificationReport verify_lipschitz_j(const MapFn& f, double constant,
                                      const SampleSpec& spec,
                                      std::vector<RatioSample>* trace = nullptr);

// The two displayed majorants of the contraction proof, evaluated at a pair
// ordered so |f(z)| >= |f(w)|:
//   num_bound = |z-w|  * D(z),   checked against |f(z)-f(w)|,
//   den_bound = (1-|z|) * D(z),  checked against 1-|f(z)|,
// where D(z) = sum_k (|c_k|+|c_{-k}|) sum_n a_{n,k} sum_{s<2n+k} |z|^s with
// the signed series coefficients a_{n,k}. The geometric inner sums collapse
// exactly: (1-|z|) D(z) = sum_k w_k (F_k(1) - |z|^k F_k(|z|^2)).
// majorant_num/den are the same bounds with |a_{n,k}|, evaluated at
// rho = max(|z|,|w|): majorant_num holds unconditionally, majorant_den
// whenever majorant_condition <= 1. The signed bounds can fail for alpha > 0.
struct BoundDecomposition {
  double num_bound = 0.0;
  double den_bound = 0.0;
  bool holds = false;
  double majorant_num = 0.0;
  double majorant_den = 0.0;
  bool majorant_holds = false;
  double lhs_increment = 0.0;   // |f(z)-f(w)|
  double lhs_clearance = 0.0;   // 1-|f(z)|
};

BoundDecomposition bound_decomposition(const AlphaHarmonicMap& f,
                                       const DiskPoint& z, const DiskPoint& w);

// Radial j-ratio scan of the extremal family f(z) = |z|^{2(p-1)} z^m
// (conj(z)^m when `conjugated`). Ratios are evaluated on consecutive radii;
// the contract is ratio <= 1 + 1e-9 everywhere with the maximum attained at
// the largest pair.
struct SharpnessScan {
  std::vector<double> ratios;
  double max_ratio = 0.0;
  bool monotone = false;
  bool pass = false;
  VerificationReport report;
};

SharpnessScan sharpness_scan(int p, int m, bool conjugated,
                             const std::vector<double>& radii);

}  // namespace jlip::alphaharmonic

#endif  // JLIP_ALPHAHARMONIC_HPP
