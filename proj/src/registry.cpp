#include "jlip/registry.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "jlip/coeffio.hpp"
#include "jlip/errors.hpp"

namespace jlip::registry {

namespace {

using metrics::Complex;

std::vector<double> parse_numbers(const std::string& text, std::size_t expect,
                                  const std::string& name) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw LoadError("builtin map '" + name + "': bad numeric parameter '" +
                      item + "'");
    }
  }
  if (out.size() != expect) {
    std::ostringstream msg;
    msg << "builtin map '" << name << "': expected " << expect
        << " parameters, got " << out.size();
    throw LoadError(msg.str());
  }
  return out;
}

}  // namespace

BuiltinMap make_builtin(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string args =
      colon == std::string::npos ? std::string{} : spec.substr(colon + 1);

  if (name == "identity") {
    return {"identity", [](Complex z) { return z; }};
  }
  if (name == "mobius") {
    const auto p = parse_numbers(args, 3, name);
    const Complex a{p[0], p[1]};
    if (!(std::abs(a) < 1.0))
      throw LoadError("builtin map 'mobius': center must satisfy |a| < 1");
    return {spec, metrics::mobius_disk(a, p[2])};
  }
  if (name == "antiholomorphic-mix") {
    const auto p = parse_numbers(args, 1, name);
    const double c = p[0];
    return {spec, [c](Complex z) { return z + c * std::conj(z); }};
  }
  if (name == "radial-cubic") {
    return {"radial-cubic", [](Complex z) { return std::norm(z) * z; }};
  }
  if (name == "alphaharm") {
    if (args.empty())
      throw LoadError("builtin map 'alphaharm': needs a coefficient file path");
    auto map = coeffio::load_coefficient_file(args);
    return {spec, map.fn()};
  }
  throw LoadError("unknown builtin map '" + name + "'");
}

}  // namespace jlip::registry
