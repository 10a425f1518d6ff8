#ifndef JLIP_REGISTRY_HPP
#define JLIP_REGISTRY_HPP

#include <string>

#include "jlip/metrics.hpp"

namespace jlip::registry {

// Built-in disk self-maps addressable by name:
//   identity
//   mobius:a_re,a_im,theta
//   antiholomorphic-mix:c        (z + c conj(z))
//   radial-cubic                 (|z|^2 z)
//   alphaharm:FILE               (coefficient file)
// Unknown names or malformed parameter lists raise LoadError.
struct BuiltinMap {
  std::string label;
  metrics::MapFn fn;
};

BuiltinMap make_builtin(const std::string& spec);

}  // namespace jlip::registry

#endif  // JLIP_REGISTRY_HPP
