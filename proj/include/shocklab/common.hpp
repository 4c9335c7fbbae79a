#ifndef SHOCKLAB_COMMON_HPP
#define SHOCKLAB_COMMON_HPP

#include <stdexcept>
#include <string>

namespace shocklab {

// Invalid or inconsistent user-supplied parameters. Maps to CLI exit code 2.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Runtime numerical failure. The kind distinguishes blow-up from grid-coverage
// problems from fit/root/quadrature trouble in error messages and CLI output.
// Maps to CLI exit code 3.
class NumericalError : public std::runtime_error {
public:
  enum class Kind { root_find, quadrature, coverage, blow_up, fit_quality };

  NumericalError(Kind kind, const std::string& msg)
      : std::runtime_error(prefix(kind) + msg), kind_(kind) {}

  Kind kind() const { return kind_; }

private:
  static std::string prefix(Kind k) {
    switch (k) {
      case Kind::root_find:   return "root-finding failure: ";
      case Kind::quadrature:  return "quadrature failure: ";
      case Kind::coverage:    return "grid coverage failure: ";
      case Kind::blow_up:     return "solution blow-up: ";
      case Kind::fit_quality: return "fit-quality failure: ";
    }
    return "numerical failure: ";
  }

  Kind kind_;
};

}  // namespace shocklab

#endif
