#pragma once

#include <stdexcept>
#include <string>

namespace kerrmag {

// |A| = |B|: the steady-state magnon amplitude has no finite solution there.
class SingularPointError : public std::runtime_error {
public:
  SingularPointError(double abs_a, double abs_b)
      : std::runtime_error("singular steady state: |A| = |B| within tolerance"),
        abs_a(abs_a), abs_b(abs_b) {}
  double abs_a, abs_b;
};

// All polynomial coefficients below the floating-point noise floor.
class DegenerateError : public std::runtime_error {
public:
  DegenerateError() : std::runtime_error("degenerate magnon-number polynomial: all coefficients ~ 0") {}
};

// No real root M >= 0; with a drive on this flags a coefficient-assembly bug.
class NoPhysicalRootError : public std::runtime_error {
public:
  NoPhysicalRootError() : std::runtime_error("no physical (M >= 0) root found") {}
};

class NoStableBranchError : public std::runtime_error {
public:
  NoStableBranchError() : std::runtime_error("no stable steady-state branch") {}
};

// Amplitude blow-up during time integration, e.g. above the parametric threshold.
class DivergedError : public std::runtime_error {
public:
  explicit DivergedError(double abscissa)
      : std::runtime_error("time integration diverged at abscissa " + std::to_string(abscissa)),
        abscissa(abscissa) {}
  double abscissa;
};

class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
public:
  ConfigError(const std::string& msg, int line = 0, std::string key = {})
      : std::runtime_error(line > 0 ? "config line " + std::to_string(line) + ": " + msg
                                    : "config: " + msg),
        line(line), key(std::move(key)) {}
  int line;
  std::string key;
};

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace kerrmag
