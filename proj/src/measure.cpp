// SPDX-License-Identifier: Apache-2.0
#include "monobox/measure.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "monobox/error.hpp"

namespace monobox {

namespace {

constexpr double kMassTolerance = 1e-12;

void check_endpoints(double a, double b, const char* what) {
  if (!(a >= 0.0 && b <= 1.0 && a <= b)) {
    std::ostringstream msg;
    msg << what << ": interval (" << a << ", " << b << ") is not inside [0,1]";
    throw DomainError(msg.str());
  }
}

}  // namespace

Measure::Measure(std::vector<DensityPiece> pieces, std::vector<Atom> atoms)
    : pieces_(std::move(pieces)), atoms_(std::move(atoms)) {
  for (const auto& p : pieces_) {
    if (!(std::isfinite(p.left) && std::isfinite(p.right) && std::isfinite(p.density)))
      throw DomainError("measure: non-finite density piece");
    if (p.left < 0.0 || p.right > 1.0 || p.left > p.right)
      throw DomainError("measure: density piece outside [0,1]");
    if (p.density < 0.0) throw DomainError("measure: negative density");
  }
  for (const auto& a : atoms_) {
    if (!(std::isfinite(a.location) && std::isfinite(a.mass)))
      throw DomainError("measure: non-finite atom");
    if (a.location < 0.0 || a.location > 1.0) throw DomainError("measure: atom outside [0,1]");
    if (a.mass < 0.0) throw DomainError("measure: negative atom mass");
  }

  std::erase_if(pieces_, [](const DensityPiece& p) { return p.left == p.right; });
  std::erase_if(atoms_, [](const Atom& a) { return a.mass == 0.0; });
  std::ranges::sort(pieces_, {}, &DensityPiece::left);
  std::ranges::sort(atoms_, {}, &Atom::location);

  for (std::size_t i = 1; i < pieces_.size(); ++i) {
    if (pieces_[i].left < pieces_[i - 1].right)
      throw DomainError("measure: density pieces overlap");
  }
  for (std::size_t i = 1; i < atoms_.size(); ++i) {
    if (atoms_[i].location == atoms_[i - 1].location)
      throw DomainError("measure: duplicate atom location");
  }

  double total = 0.0;
  for (const auto& p : pieces_) total += p.density * (p.right - p.left);
  for (const auto& a : atoms_) total += a.mass;
  if (std::abs(total - 1.0) > kMassTolerance) {
    std::ostringstream msg;
    msg << "measure: total mass " << total << " differs from 1";
    throw DomainError(msg.str());
  }

  lebesgue_ = atoms_.empty() && pieces_.size() == 1 && pieces_[0].left == 0.0 &&
              pieces_[0].right == 1.0 && pieces_[0].density == 1.0;
}

Measure Measure::lebesgue() { return Measure({{0.0, 1.0, 1.0}}, {}); }

double Measure::mass_open(double a, double b) const {
  check_endpoints(a, b, "mass_open");
  if (a == b) return 0.0;
  if (lebesgue_) return b - a;
  double mass = 0.0;
  for (const auto& p : pieces_) {
    const double lo = std::max(a, p.left);
    const double hi = std::min(b, p.right);
    if (hi > lo) mass += p.density * (hi - lo);
  }
  for (const auto& at : atoms_) {
    if (at.location > a && at.location < b) mass += at.mass;
  }
  return mass;
}

double Measure::atom_mass(double x) const {
  auto it = std::ranges::lower_bound(atoms_, x, {}, &Atom::location);
  return (it != atoms_.end() && it->location == x) ? it->mass : 0.0;
}

double Measure::density_at(double x) const {
  for (const auto& p : pieces_) {
    if (x >= p.left && (x < p.right || (x == 1.0 && p.right == 1.0))) return p.density;
  }
  return 0.0;
}

double Measure::quantile_unchecked(double a, double b, double mass, double q) const {
  const double target = q * mass;
  if (target <= 0.0) return a;
  if (lebesgue_) return std::min(b, a + q * (b - a));

  std::vector<double> cuts{a, b};
  for (const auto& p : pieces_) {
    if (p.left > a && p.left < b) cuts.push_back(p.left);
    if (p.right > a && p.right < b) cuts.push_back(p.right);
  }
  for (const auto& at : atoms_) {
    if (at.location > a && at.location < b) cuts.push_back(at.location);
  }
  std::ranges::sort(cuts);
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  double acc = 0.0;
  double last_charged = a;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double u = cuts[i];
    const double v = cuts[i + 1];
    const double d = density_at(0.5 * (u + v));
    if (d > 0.0) {
      const double seg = d * (v - u);
      if (acc + seg >= target) return std::clamp(u + (target - acc) / d, u, v);
      acc += seg;
      last_charged = v;
    }
    if (v < b) {
      const double m = atom_mass(v);
      if (m > 0.0) {
        acc += m;
        last_charged = v;
        if (acc >= target) return v;
      }
    }
  }
  // Rounding left the accumulated mass a hair below the target.
  return last_charged;
}

double Measure::conditional_quantile(double a, double b, double q) const {
  check_endpoints(a, b, "conditional_quantile");
  if (!(a < b)) throw DomainError("conditional_quantile: empty interval");
  if (!(q >= 0.0 && q <= 1.0)) throw DomainError("conditional_quantile: level outside [0,1]");
  const double mass = mass_open(a, b);
  if (mass <= 0.0) throw DegenerateInterval("conditional_quantile: interval carries no mass");
  return quantile_unchecked(a, b, mass, q);
}

double Measure::conditional_median(double a, double b) const {
  check_endpoints(a, b, "conditional_median");
  if (!(a < b)) throw DomainError("conditional_median: empty interval");
  const double mass = mass_open(a, b);
  if (mass <= 0.0) return 0.5 * (a + b);
  return quantile_unchecked(a, b, mass, 0.5);
}

double Measure::sample_conditional(double a, double b, CounterRng& rng) const {
  check_endpoints(a, b, "sample_conditional");
  const double mass = mass_open(a, b);
  if (mass <= 0.0) throw DegenerateInterval("sample_conditional: interval carries no mass");
  return quantile_unchecked(a, b, mass, rng.uniform_open());
}

std::vector<double> Measure::breakpoints() const {
  std::vector<double> out{0.0, 1.0};
  for (const auto& p : pieces_) {
    out.push_back(p.left);
    out.push_back(p.right);
  }
  for (const auto& a : atoms_) out.push_back(a.location);
  std::ranges::sort(out);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string Measure::describe() const {
  if (lebesgue_) return "lebesgue";
  std::ostringstream os;
  os << "pieces=[";
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    os << (i ? "," : "") << "[" << pieces_[i].left << "," << pieces_[i].right << ","
       << pieces_[i].density << "]";
  }
  os << "] atoms=[";
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    os << (i ? "," : "") << "[" << atoms_[i].location << "," << atoms_[i].mass << "]";
  }
  os << "]";
  return os.str();
}

}  // namespace monobox
