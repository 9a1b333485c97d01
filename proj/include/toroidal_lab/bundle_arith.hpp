#pragma once

// Unitary characters of the lattice, flat line bundle arithmetic and the
// triviality / H^0 tests behind the vanishing criterion.

#include "toroidal_lab/group_core.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tlab {

// Elliptic characters carry the phases of the generators 1 and tau of
// C/<1, tau>. Surface characters carry (theta1, theta2); the remaining
// generator of the surface lattice has phase 0.
enum class CharacterBase { elliptic, surface };

class Character {
 public:
  Character() = default;
  Character(Real phase1, Real phase2, CharacterBase base = CharacterBase::elliptic);
  const Real& phase1() const { return phase1_; }
  const Real& phase2() const { return phase2_; }
  CharacterBase base() const { return base_; }
  bool exact() const { return phase1_.is_exact() && phase2_.is_exact(); }

 private:
  Real phase1_;
  Real phase2_;
  CharacterBase base_ = CharacterBase::elliptic;
};

Character char_tensor(const Character& a, const Character& b);
Character twist_character(const Character& F, const Character& E, std::int64_t n);

enum class TrivialityFlag { exact, numerical };

struct Triviality {
  bool trivial = false;
  TrivialityFlag flag = TrivialityFlag::exact;
};

Triviality is_trivial_flat(const Character& c, double tol = 1e-12);
int h0_flat_elliptic(const Character& c);

// {n in Z : n*x + y in Z}, which for exact inputs is empty, a single integer,
// or an arithmetic progression (period 1 meaning all of Z).
struct IntegerSolutions {
  enum class Kind { empty, single, progression };
  Kind kind = Kind::empty;
  BigInt residue = 0;  // the single value, or the residue of the progression
  BigInt period = 1;

  bool contains(const BigInt& n) const;
  // Element of smallest absolute value (ties to the negative one).
  std::optional<BigInt> nearest_to_zero() const;
  // Smallest element >= lo, if any.
  std::optional<BigInt> first_at_least(const BigInt& lo) const;
};

// Exact kinds only; throws PrecisionExhausted for enclosures.
IntegerSolutions integer_solutions(const Real& x, const Real& y);
IntegerSolutions intersect(const IntegerSolutions& a, const IntegerSolutions& b);

struct AssumptionReport {
  bool pass = true;
  bool scanned = false;  // false: decided for all n
  std::optional<std::int64_t> witness;
  std::int64_t n_box = 0;
};

// Theorem hypothesis: theta1 + n p or theta2 + n q is non-integral for every n.
AssumptionReport thm_assumption_check(const GroupParams& params, const Real& theta1, const Real& theta2,
                                      std::int64_t n_box);

struct H0Entry {
  std::int64_t n = 0;
  int dim = 0;
  Character character;
  bool numerical = false;
};

struct H0Spectrum {
  std::vector<H0Entry> entries;
  int total() const;
};

H0Spectrum h0_spectrum(const Character& F, const Character& E, std::int64_t n_lo, std::int64_t n_hi);

struct NeighborhoodVerdict {
  bool holds = true;
  std::optional<std::int64_t> first_failure;
  // Exact inputs: whether E (x) N^{-n} is non-trivial for every n >= 0.
  std::optional<bool> all_n;
};

NeighborhoodVerdict neighborhood_vanishing_check(const Character& E_on_W, const Character& N_WZ,
                                                 std::int64_t n_max);

}  // namespace tlab
