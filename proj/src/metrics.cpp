#include "jlip/metrics.hpp"

#include <cmath>
#include <sstream>

#include "jlip/errors.hpp"

namespace jlip::metrics {

DiskPoint::DiskPoint(Complex value, double margin) : value_(value) {
  if (!(std::abs(value) < 1.0 - margin)) {
    std::ostringstream msg;
    msg << "point (" << value.real() << ", " << value.imag()
        << ") is not strictly inside the unit disk (margin " << margin << ")";
    throw DomainError(msg.str());
  }
}

double delta_disk(Complex z) { return 1.0 - std::abs(z); }

DomainGauge disk_gauge() {
  return [](Complex z) { return 1.0 - std::abs(z); };
}

DomainGauge scaled_disk_gauge(double scale) {
  return [scale](Complex z) { return scale - std::abs(z); };
}

double j_metric(Complex z, Complex w, const DomainGauge& gauge) {
  const double dz = gauge(z);
  const double dw = gauge(w);
  if (dz <= 0.0 || dw <= 0.0) {
    std::ostringstream msg;
    msg << "gauge returned a nonpositive boundary distance (" << std::min(dz, dw)
        << "); point outside the domain";
    throw DomainError(msg.str());
  }
  return std::log1p(std::abs(z - w) / std::min(dz, dw));
}

double j_disk(Complex z, Complex w) {
  const double m = std::min(1.0 - std::abs(z), 1.0 - std::abs(w));
  return std::log1p(std::abs(z - w) / m);
}

MapFn mobius_disk(Complex a, double theta) {
  if (!(std::abs(a) < 1.0)) throw DomainError("mobius center must satisfy |a| < 1");
  const Complex rot{std::cos(theta), std::sin(theta)};
  const Complex abar = std::conj(a);
  return [a, abar, rot](Complex z) { return rot * (z - a) / (1.0 - abar * z); };
}

VerificationReport j_ratio_sweep(const MapFn& f,
                                 const std::vector<std::pair<Complex, Complex>>& pairs,
                                 double constant, double tolerance,
                                 std::uint64_t seed,
                                 std::vector<RatioSample>* trace) {
  VerificationReport rep;
  rep.check = "j-ratio sweep";
  rep.samples = pairs.size();
  rep.tolerance = tolerance;
  rep.seed = seed;
  rep.max_value = 0.0;

  std::size_t index = 0;
  for (const auto& [z, w] : pairs) {
    if (z == w) {
      ++rep.skips;
      ++index;
      continue;  // 0/0 is not evidence
    }
    const Complex fz = f(z);
    const Complex fw = f(w);
    if (std::abs(fz) >= 1.0 || std::abs(fw) >= 1.0) {
      ++rep.flagged;  // image escaped the disk; j undefined there
      ++rep.skips;
      ++index;
      continue;
    }
    const double ratio = j_disk(fz, fw) / j_disk(z, w);
    if (trace) trace->push_back({index, z, w, ratio});
    if (ratio > rep.max_value) {
      rep.max_value = ratio;
      rep.witness = {z, w};
    }
    if (ratio <= constant + tolerance)
      ++rep.passes;
    else
      ++rep.violations;
    ++index;
  }
  rep.pass = rep.violations == 0;
  return rep;
}

VerificationReport mobius_factor_sweep(Complex a, double theta,
                                       const SampleSpec& spec,
                                       std::vector<RatioSample>* trace) {
  const MapFn f = mobius_disk(a, theta);
  Rng rng(spec.seed);
  std::vector<std::pair<Complex, Complex>> pairs;
  pairs.reserve(spec.count);
  for (std::size_t i = 0; i < spec.count; ++i) {
    const Complex z = rng.disk_point(spec.margin);
    const Complex w = rng.disk_point(spec.margin);
    pairs.emplace_back(z, w);
  }
  VerificationReport rep = j_ratio_sweep(f, pairs, 2.0, 1e-9, spec.seed, trace);
  rep.check = "mobius factor sweep";
  return rep;
}

}  // namespace jlip::metrics
