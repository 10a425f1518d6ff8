#ifndef JLIP_COEFFIO_HPP
#define JLIP_COEFFIO_HPP

#include <iosfwd>
#include <string>

#include "jlip/alphaharmonic.hpp"

namespace jlip::coeffio {

// Coefficient file: a JSON document
//   { "alpha": <number>, "coeffs": [ {"k": <int>, "re": <num>, "im": <num>}, ... ] }
// Duplicate k, k = 0, alpha <= -1 and malformed fields raise LoadError with a
// message naming the offending field.
alphaharmonic::AlphaHarmonicMap load_coefficient_map(std::istream& in);
alphaharmonic::AlphaHarmonicMap load_coefficient_file(const std::string& path);

std::string to_json(const alphaharmonic::AlphaHarmonicMap& map);

}  // namespace jlip::coeffio

#endif  // JLIP_COEFFIO_HPP
