#ifndef JLIP_REPORT_HPP
#define JLIP_REPORT_HPP

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace jlip {

// Seeded sampling plan for pair sweeps. Identical specs reproduce identical
// reports bit for bit; samples are drawn uniformly (by area) on the sub-disk
// |z| <= 1 - margin.
struct SampleSpec {
  std::uint64_t seed = 1;
  std::size_t count = 10000;
  double margin = 1e-3;
};

// Square lattice intersected with the sub-disk |z| <= 1 - margin.
struct GridSpec {
  int n = 101;  // nodes per axis on [-1, 1]
  double margin = 1e-2;
};

struct Witness {
  std::complex<double> z{0.0, 0.0};
  std::complex<double> w{0.0, 0.0};
};

// Outcome of a sampling sweep or grid certificate.
//
// Accounting invariant: passes + violations + skips == samples.
// `max_value` is the extremal ratio (sweeps) or worst violation margin
// (certificates) and `witness` attains it. `flagged` counts op-specific
// observations that are not contract violations (nonpositive Jacobian nodes,
// image escapes).
struct VerificationReport {
  std::string check;
  std::size_t samples = 0;
  std::size_t passes = 0;
  std::size_t violations = 0;
  std::size_t skips = 0;
  std::size_t flagged = 0;
  double max_value = 0.0;
  Witness witness{};
  double tolerance = 0.0;
  std::uint64_t seed = 0;
  bool pass = true;
};

// One sampled pair of a sweep, for plot/trace output.
struct RatioSample {
  std::size_t index = 0;
  std::complex<double> z{0.0, 0.0};
  std::complex<double> w{0.0, 0.0};
  double ratio = 0.0;
};

// Fixed-format rendering used by determinism checks (byte-compare two runs).
std::string to_string(const VerificationReport& r);

// Deterministic uniform sampler. mt19937_64 output is pinned by the standard
// and the [0,1) mapping below avoids std::uniform_real_distribution, whose
// algorithm is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Area-uniform point of the sub-disk |z| <= 1 - margin.
  std::complex<double> disk_point(double margin) {
    const double r = (1.0 - margin) * std::sqrt(uniform01());
    const double t = 2.0 * 3.141592653589793238462643383279502884 * uniform01();
    return {r * std::cos(t), r * std::sin(t)};
  }

  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace jlip

#endif  // JLIP_REPORT_HPP
