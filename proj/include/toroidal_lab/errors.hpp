#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace tlab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

// Raised when an enclosure is too wide to decide a floor, a sign or a partial quotient.
struct PrecisionExhausted : Error {
  PrecisionExhausted(const std::string& what, int certified_terms = -1)
      : Error(what), certified(certified_terms) {}
  int certified;
};

struct OverflowError : Error {
  using Error::Error;
};

// A denominator that is exactly zero (Kazama margin with rational p, q).
struct ResonanceError : Error {
  ResonanceError(const std::string& what, std::vector<int> index)
      : Error(what), mode(std::move(index)) {}
  std::vector<int> mode;
};

// A mode whose divisor vanishes while its data does not.
struct ResonantObstruction : Error {
  ResonantObstruction(const std::string& stage_name, std::vector<int> index,
                      double data, double divisor);
  std::string stage;
  std::vector<int> mode;
  double data_abs;
  double divisor_abs;
};

struct AliasingError : Error {
  using Error::Error;
};

struct DegenerateFit : Error {
  using Error::Error;
};

struct QuadratureDivergence : Error {
  using Error::Error;
};

struct BaseMismatch : Error {
  using Error::Error;
};

}  // namespace tlab
