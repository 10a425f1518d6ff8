#ifndef JLIP_SPECFUN_HPP
#define JLIP_SPECFUN_HPP

#include <vector>

namespace jlip::specfun {

// Parameters of a Gauss hypergeometric evaluation F(a,b;c;x).
//
// c must not be zero or a negative integer (detected within 1e-12).
// x = 1 is admissible only when a+b < c or the series terminates.
struct HypParams {
  double a = 0.0;
  double b = 0.0;
  double c = 1.0;
  double x = 0.0;
  double tol = 1e-14;    // relative term tolerance
  long n_max = 100000;   // series cap (raised to 1e6 internally for x > 0.95)
};

// True when x is a nonpositive integer within `tol`.
bool is_nonpositive_integer(double x, double tol = 1e-12);

// Pochhammer symbol (a)_n = a(a+1)...(a+n-1), (a)_0 = 1.
// Throws OverflowError when the running product leaves the double range.
double pochhammer(double a, long n);

// log|Gamma(x)| plus the sign of Gamma(x). Lanczos (g=7, n=9) for x >= 0.5,
// reflection below; relative error well under 1e-12 on (0, 50].
// Throws DomainError at the poles x = 0, -1, -2, ...
struct SignedLogGamma {
  double log_abs;
  int sign;  // +1 or -1
};
SignedLogGamma log_gamma_signed(double x);

// log Gamma(x) for x > 0.
double log_gamma(double x);

// Power series of F(a,b;c;x) in x with cached term coefficients, so repeated
// evaluations at different x (the alpha-harmonic hot path) cost two
// multiply-adds per term.
class Gauss2F1Series {
 public:
  Gauss2F1Series(double a, double b, double c);

  // Sum at x in [0,1]; terminating series are summed exactly, otherwise the
  // stopping rule is |term| < tol*max(1,|partial|) with a warm-up floor of 10
  // terms. Throws NonConvergenceError when n_max is exhausted first and
  // DivergenceError for x = 1 with c-a-b <= 0 (non-terminating).
  double eval(double x, double tol = 1e-14, long n_max = 1000000) const;

  bool terminating() const { return terms_ >= 0; }
  long terminating_terms() const { return terms_; }  // -1 if infinite

 private:
  void extend(std::size_t n) const;

  double a_, b_, c_;
  long terms_;  // index of last nonzero coefficient, -1 if none
  mutable std::vector<double> coef_;
};

// F(a,b;c;x) = sum_n (a)_n (b)_n / ((c)_n n!) x^n.
double gauss_2f1(const HypParams& p);
double gauss_2f1(double a, double b, double c, double x);

// Gauss summation F(a,b;c;1) = Gamma(c)Gamma(c-a-b) / (Gamma(c-a)Gamma(c-b)),
// via log-gamma arithmetic; terminating series are summed exactly instead.
// Throws DivergenceError when c-a-b <= 0 and the series does not terminate.
double gauss_2f1_at_one(double a, double b, double c);

}  // namespace jlip::specfun

#endif  // JLIP_SPECFUN_HPP
