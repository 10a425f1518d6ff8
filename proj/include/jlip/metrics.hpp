#ifndef JLIP_METRICS_HPP
#define JLIP_METRICS_HPP

#include <complex>
#include <functional>
#include <vector>

#include "jlip/report.hpp"

namespace jlip::metrics {

using Complex = std::complex<double>;
using MapFn = std::function<Complex(Complex)>;

// Euclidean distance to the boundary of a domain, strictly positive on the
// interior.
using DomainGauge = std::function<double(Complex)>;

// A point strictly inside the unit disk: |value| < 1 - margin.
class DiskPoint {
 public:
  static constexpr double kDefaultMargin = 1e-9;

  explicit DiskPoint(Complex value, double margin = kDefaultMargin);

  Complex value() const { return value_; }
  operator Complex() const { return value_; }

 private:
  Complex value_;
};

// delta_D(z) = 1 - |z| on the unit disk.
double delta_disk(Complex z);

DomainGauge disk_gauge();

// Gauge for the scaled disk of radius `scale` about the origin.
DomainGauge scaled_disk_gauge(double scale);

// Distance ratio metric j_G(z,w) = log(1 + |z-w| / min(delta(z), delta(w))).
// Throws DomainError if the gauge is nonpositive at either point.
double j_metric(Complex z, Complex w, const DomainGauge& gauge);

// Unit-disk fast path, gauge inlined.
double j_disk(Complex z, Complex w);

// Disk automorphism z -> e^{i theta} (z - a) / (1 - conj(a) z), |a| < 1.
MapFn mobius_disk(Complex a, double theta);

// Core pair sweep: ratio j(f(z), f(w)) / j(z, w) over explicit pairs.
// Coincident pairs are skipped and counted; `constant` sets the pass bound
// (max ratio <= constant + tolerance).
VerificationReport j_ratio_sweep(const MapFn& f,
                                 const std::vector<std::pair<Complex, Complex>>& pairs,
                                 double constant, double tolerance,
                                 std::uint64_t seed,
                                 std::vector<RatioSample>* trace = nullptr);

// Seeded sweep of a Mobius automorphism against the factor-2 bound:
// samples `spec.count` pairs and reports max j(f(z),f(w))/j(z,w), which must
// not exceed 2 + 1e-9.
VerificationReport mobius_factor_sweep(Complex a, double theta,
                                       const SampleSpec& spec,
                                       std::vector<RatioSample>* trace = nullptr);

}  // namespace jlip::metrics

#endif  // JLIP_METRICS_HPP
