#include "jlip/report.hpp"

#include <iomanip>
#include <sstream>

namespace jlip {

std::string to_string(const VerificationReport& r) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "check=" << r.check << " samples=" << r.samples
      << " passes=" << r.passes << " violations=" << r.violations
      << " skips=" << r.skips << " flagged=" << r.flagged
      << " max=" << r.max_value << " witness=(" << r.witness.z.real() << ","
      << r.witness.z.imag() << ")/(" << r.witness.w.real() << ","
      << r.witness.w.imag() << ")"
      << " tol=" << r.tolerance << " seed=" << r.seed
      << " pass=" << (r.pass ? 1 : 0);
  return out.str();
}

}  // namespace jlip
