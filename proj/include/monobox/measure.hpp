// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string>
#include <vector>

#include "monobox/rng.hpp"

namespace monobox {

/// Constant density on [left, right].
struct DensityPiece {
  double left = 0.0;
  double right = 1.0;
  double density = 1.0;
};

/// Point mass at `location`.
struct Atom {
  double location = 0.0;
  double mass = 0.0;
};

/// Probability measure on [0,1]: piecewise-constant density plus finitely many
/// atoms. Immutable once built; all queries are const and thread-safe.
///
/// Conditional queries follow the lower-quantile convention: the quantile of
/// order q on (a,b) is the smallest x with mu((a,x]) >= q * mu((a,b)).
class Measure {
 public:
  /// Validates and normalises the pieces (sorted, disjoint interiors) and
  /// atoms (sorted, distinct). Total mass must be 1 within 1e-12.
  Measure(std::vector<DensityPiece> pieces, std::vector<Atom> atoms);

  static Measure lebesgue();

  /// mu((a,b)). Atoms sitting exactly at a or b are excluded.
  double mass_open(double a, double b) const;

  /// mu({x}).
  double atom_mass(double x) const;

  /// Lower conditional median on (a,b); the geometric midpoint when the
  /// interval carries no mass.
  double conditional_median(double a, double b) const;

  /// Lower conditional quantile of order q in [0,1] on (a,b). Throws
  /// DegenerateInterval when mu((a,b)) = 0.
  double conditional_quantile(double a, double b, double q) const;

  /// One draw from mu( . | (a,b)). Throws DegenerateInterval on zero mass.
  double sample_conditional(double a, double b, CounterRng& rng) const;

  /// Density value at x (right-continuous at piece boundaries).
  double density_at(double x) const;

  std::span<const DensityPiece> pieces() const { return pieces_; }
  std::span<const Atom> atoms() const { return atoms_; }

  /// Sorted, deduplicated piece endpoints and atom locations in [0,1].
  std::vector<double> breakpoints() const;

  bool is_lebesgue() const { return lebesgue_; }
  bool has_atoms() const { return !atoms_.empty(); }

  std::string describe() const;

 private:
  double quantile_unchecked(double a, double b, double mass, double q) const;

  std::vector<DensityPiece> pieces_;
  std::vector<Atom> atoms_;
  bool lebesgue_ = false;
};

}  // namespace monobox
