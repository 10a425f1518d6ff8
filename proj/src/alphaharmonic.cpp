#include "jlip/alphaharmonic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "jlip/errors.hpp"
#include "jlip/quasiconformal.hpp"

namespace jlip::alphaharmonic {

namespace {

// Hypergeometric factor parameters of the k-th expansion term.
specfun::Gauss2F1Series make_series(double alpha, int k) {
  return specfun::Gauss2F1Series(-alpha / 2.0, k - alpha / 2.0, k + 1.0);
}

double factor_at_one(double alpha, int k) {
  return specfun::gauss_2f1_at_one(-alpha / 2.0, k - alpha / 2.0, k + 1.0);
}

// Aggregate |c_k| + |c_{-k}| per distinct positive index.
std::vector<std::pair<int, double>> weight_by_order(const CoefficientSequence& c) {
  std::vector<std::pair<int, double>> w;
  for (const auto& [k, ck] : c.entries()) {
    const int order = std::abs(k);
    auto it = std::find_if(w.begin(), w.end(),
                           [order](const auto& e) { return e.first == order; });
    if (it == w.end())
      w.emplace_back(order, std::abs(ck));
    else
      it->second += std::abs(ck);
  }
  std::sort(w.begin(), w.end());
  return w;
}

// Signed series coefficients a_n = (-a/2)_n (k-a/2)_n / ((k+1)_n n!) have
// eventually constant sign: every factor of both Pochhammer products is
// positive once n exceeds alpha/2. First index from which the sign is frozen.
long sign_stable_index(double alpha) {
  if (alpha <= 0.0) return 0;  // all coefficients already one-signed
  return static_cast<long>(std::ceil(alpha / 2.0)) + 1;
}

// sum_n |a_n|, exactly: explicit |a_n| below the sign-stable index, then
// |F(1) - partial signed sum| for the one-signed tail.
double abs_factor_sum(double alpha, int k) {
  const long n0 = sign_stable_index(alpha);
  const double a = -alpha / 2.0;
  const double b = k - alpha / 2.0;
  const double c = k + 1.0;
  double term = 1.0;
  double head_abs = 0.0;
  double head_signed = 0.0;
  for (long n = 0; n < n0; ++n) {
    head_abs += std::abs(term);
    head_signed += term;
    term *= (a + n) * (b + n) / ((c + n) * (n + 1.0));
  }
  const double total = factor_at_one(alpha, k);
  return head_abs + std::abs(total - head_signed);
}

// Head/tail split of D(z) = sum_n a_n (1-|z|^{2n+k})/(1-|z|) with absolute
// values on a_n; the one-signed tail collapses to Gauss summations.
double abs_double_sum(double alpha, int k, double r, double tol, long n_max) {
  const long n0 = sign_stable_index(alpha);
  const double a = -alpha / 2.0;
  const double b = k - alpha / 2.0;
  const double c = k + 1.0;
  const double t = r * r;
  const double rk = std::pow(r, k);

  double term = 1.0;
  double tp = 1.0;  // t^n
  double head = 0.0;
  double head_signed_one = 0.0;   // partial of F(1)
  double head_signed_t = 0.0;     // partial of F(t)
  for (long n = 0; n < n0; ++n) {
    head += std::abs(term) * (1.0 - rk * tp) / (1.0 - r);
    head_signed_one += term;
    head_signed_t += term * tp;
    term *= (a + n) * (b + n) / ((c + n) * (n + 1.0));
    tp *= t;
  }
  specfun::Gauss2F1Series series(a, b, c);
  const double tail_one = factor_at_one(alpha, k) - head_signed_one;
  const double tail_t = series.eval(t, tol, n_max) - head_signed_t;
  return head + std::abs(tail_one - rk * tail_t) / (1.0 - r);
}

}  // namespace

void CoefficientSequence::set(int k, Complex c) {
  if (k == 0)
    throw DomainError("coefficient index k = 0 is reserved (f(0) = 0)");
  if (std::abs(k) > kMaxIndex) {
    std::ostringstream msg;
    msg << "coefficient index " << k << " exceeds the support bound "
        << kMaxIndex;
    throw DomainError(msg.str());
  }
  const auto pos = std::lower_bound(
      entries_.begin(), entries_.end(), k,
      [](const auto& e, int key) { return e.first < key; });
  if (pos != entries_.end() && pos->first == k) {
    std::ostringstream msg;
    msg << "duplicate coefficient index " << k;
    throw DomainError(msg.str());
  }
  entries_.insert(pos, {k, c});
}

AlphaHarmonicMap::AlphaHarmonicMap(double alpha, CoefficientSequence coeffs)
    : alpha_(alpha),
      coeffs_(std::move(coeffs)),
      series_(std::make_shared<std::map<int, specfun::Gauss2F1Series>>()) {
  if (!(alpha > -1.0)) {
    std::ostringstream msg;
    msg << "alpha must exceed -1, got " << alpha;
    throw DomainError(msg.str());
  }
  for (const auto& [k, c] : coeffs_.entries()) {
    const int order = std::abs(k);
    series_->try_emplace(order, make_series(alpha_, order));
  }
}

Complex AlphaHarmonicMap::operator()(Complex z) const {
  const double t = std::norm(z);
  Complex sum{0.0, 0.0};
  const Complex zb = std::conj(z);
  for (const auto& [k, c] : coeffs_.entries()) {
    const int order = std::abs(k);
    const double factor = series_->at(order).eval(t);
    Complex pw{1.0, 0.0};
    const Complex base = k > 0 ? z : zb;
    for (int i = 0; i < order; ++i) pw *= base;
    sum += c * factor * pw;
  }
  return sum;
}

MapFn AlphaHarmonicMap::fn() const {
  return [self = *this](Complex z) { return self(z); };
}

Complex evaluate(const AlphaHarmonicMap& f, const DiskPoint& z) {
  return f(z.value());
}

Complex operator_residual(const MapFn& f, double alpha, const DiskPoint& z,
                          double h) {
  if (h <= 0.0) throw DomainError("step must be positive");
  const Complex zv = z.value();
  const double clearance = 1.0 - std::abs(zv);
  if (10.0 * h >= clearance) {
    std::ostringstream msg;
    msg << "step " << h << " too large: 10h exceeds the boundary distance "
        << clearance;
    throw StepError(msg.str());
  }

  // stencil machinery from the quasiconformal module, pinned to step h;
  // margin 18h keeps the stencil guard at |z| <= 1 - 10h, matching the pre
  quasiconformal::PlanarMap probe(f, h, 18.0 * h);
  const auto [f_z, f_zbar] = quasiconformal::wirtinger(probe, zv);
  const Complex f_zzbar = quasiconformal::laplacian(probe, zv) / 4.0;

  const double W = 1.0 - std::norm(zv);
  const double Wa1 = std::pow(W, -alpha - 1.0);
  const double Wa = std::pow(W, -alpha);
  return -(alpha * alpha / 4.0) * Wa1 * f(zv) +
         (alpha / 2.0) * Wa1 * (zv * f_z + std::conj(zv) * f_zbar) +
         Wa * f_zzbar;
}

ConditionResult contraction_condition(const AlphaHarmonicMap& f) {
  double s = 0.0;
  for (const auto& [k, w] : weight_by_order(f.coeffs()))
    s += w * factor_at_one(f.alpha(), k);
  return {s, s <= 1.0 + 1e-12};
}

double majorant_condition(const AlphaHarmonicMap& f) {
  double s = 0.0;
  for (const auto& [k, w] : weight_by_order(f.coeffs()))
    s += w * abs_factor_sum(f.alpha(), k);
  return s;
}

VerificationReport verify_lipschitz_j(const MapFn& f, double constant,
                                      const SampleSpec& spec,
                                      std::vector<RatioSample>* trace) {
  Rng rng(spec.seed);
  std::vector<std::pair<Complex, Complex>> pairs;
  pairs.reserve(spec.count);
  for (std::size_t i = 0; i < spec.count; ++i) {
    const Complex z = rng.disk_point(spec.margin);
    const Complex w = rng.disk_point(spec.margin);
    pairs.emplace_back(z, w);
  }
  VerificationReport rep =
      metrics::j_ratio_sweep(f, pairs, constant, 1e-9, spec.seed, trace);
  rep.check = "lipschitz j sweep";
  return rep;
}

BoundDecomposition bound_decomposition(const AlphaHarmonicMap& f,
                                       const DiskPoint& zp, const DiskPoint& wp) {
  const Complex z = zp.value();
  const Complex w = wp.value();
  const double r = std::abs(z);
  const double rho = std::max(r, std::abs(w));
  const double alpha = f.alpha();

  // D(r) with signed coefficients: the geometric factor collapses the double
  // sum to (F_k(1) - r^k F_k(r^2)) / (1 - r). The displayed bounds use the
  // point with the larger image modulus (the caller orders the pair); the
  // majorant variant is evaluated at rho = max(|z|, |w|), where the monomial
  // estimates hold regardless of the image ordering.
  double signed_sum = 0.0;
  double abs_sum = 0.0;
  for (const auto& [k, wt] : weight_by_order(f.coeffs())) {
    specfun::Gauss2F1Series series(-alpha / 2.0, k - alpha / 2.0, k + 1.0);
    const double f1 = factor_at_one(alpha, k);
    const double ft = series.eval(r * r);
    signed_sum += wt * (f1 - std::pow(r, k) * ft) / (1.0 - r);
    abs_sum += wt * abs_double_sum(alpha, k, rho, 1e-14, 1000000);
  }

  BoundDecomposition out;
  out.lhs_increment = std::abs(f(z) - f(w));
  out.lhs_clearance = 1.0 - std::abs(f(z));
  out.num_bound = std::abs(z - w) * signed_sum;
  out.den_bound = (1.0 - r) * signed_sum;
  out.holds = out.lhs_increment <= out.num_bound + 1e-10 &&
              out.lhs_clearance >= out.den_bound - 1e-10;
  out.majorant_num = std::abs(z - w) * abs_sum;
  out.majorant_den = (1.0 - rho) * abs_sum;
  out.majorant_holds = out.lhs_increment <= out.majorant_num + 1e-10 &&
                       out.lhs_clearance >= out.majorant_den - 1e-10;
  return out;
}

SharpnessScan sharpness_scan(int p, int m, bool conjugated,
                             const std::vector<double>& radii) {
  if (p < 1 || m < 1) throw DomainError("sharpness scan needs p, m >= 1");
  if (radii.size() < 2)
    throw DomainError("sharpness scan needs at least two radii");
  for (std::size_t i = 0; i + 1 < radii.size(); ++i)
    if (!(radii[i] < radii[i + 1]))
      throw DomainError("radii must be strictly increasing");
  if (radii.front() <= 0.0 || radii.back() >= 1.0)
    throw DomainError("radii must lie in (0, 1)");

  const auto f = [p, m, conjugated](Complex z) {
    const double mod = std::pow(std::abs(z), 2 * (p - 1));
    Complex pw{1.0, 0.0};
    const Complex base = conjugated ? std::conj(z) : z;
    for (int i = 0; i < m; ++i) pw *= base;
    return mod * pw;
  };

  SharpnessScan scan;
  scan.report.check = "sharpness scan";
  scan.report.tolerance = 1e-9;
  scan.report.max_value = 0.0;
  scan.monotone = true;
  for (std::size_t i = 0; i + 1 < radii.size(); ++i) {
    const Complex z{radii[i], 0.0};
    const Complex w{radii[i + 1], 0.0};
    const double ratio = metrics::j_disk(f(z), f(w)) / metrics::j_disk(z, w);
    if (!scan.ratios.empty() && ratio < scan.ratios.back())
      scan.monotone = false;
    scan.ratios.push_back(ratio);
    ++scan.report.samples;
    if (ratio <= 1.0 + 1e-9)
      ++scan.report.passes;
    else
      ++scan.report.violations;
    if (ratio >= scan.report.max_value) {
      scan.report.max_value = ratio;
      scan.report.witness = {z, w};
    }
  }
  scan.max_ratio = scan.report.max_value;
  const bool max_at_end =
      scan.ratios.back() >= scan.report.max_value - 1e-15;
  scan.pass = scan.report.violations == 0 && max_at_end;
  scan.report.pass = scan.pass;
  return scan;
}

}  // namespace jlip::alphaharmonic
