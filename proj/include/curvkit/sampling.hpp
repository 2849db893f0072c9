#pragma once

#include "curvkit/evaluate.hpp"

#include <cstdint>
#include <random>
#include <set>

namespace curvkit {

/// Seeded source of random rationals, polynomials and sample points.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& rng() { return rng_; }
  int integer(int lo, int hi);
  /// Nonzero rational with |x| <= bound and denominator <= max_den.
  Rational rational(int bound, int max_den);
  /// Random polynomial of total degree <= degree with coefficients in
  /// [-bound, bound], never identically zero.
  NormalForm polynomial(const std::vector<AtomId>& vars, int degree = 4, int bound = 9);

  /// Random polynomial instantiation for each listed underived function.
  Binding instantiation(const std::set<AtomId>& functions);
  /// Random rational values (denominator <= 7) for coordinates and parameters.
  std::map<AtomId, Rational> point(const std::set<AtomId>& atoms);

 private:
  std::mt19937_64 rng_;
};

/// Concrete values of every atom at one instantiated point. Function atoms
/// take the value of the matching derivative of their instantiation, so the
/// values stay exact (rational, or exp of rationals for exp families).
/// Atoms are drawn lazily the first time an expression mentions them.
class SamplePoint {
 public:
  /// Functions are drawn from `instantiation_seed`, scalar values from `point_seed`.
  SamplePoint(std::uint64_t instantiation_seed, std::uint64_t point_seed)
      : functions_rng_(instantiation_seed), sampler_(point_seed) {}

  /// Fixes an instantiation instead of drawing a random polynomial.
  void instantiate(AtomId function, NormalForm value);
  void set(AtomId scalar, const Rational& value);

  /// Throws DivisionByZero when a denominator vanishes at this point.
  NormalForm operator()(const NormalForm& x) const;
  std::string describe(const SymbolTable& symbols) const;

 private:
  void cover(const NormalForm& x) const;
  const Rational& scalar(AtomId a) const;
  const NormalForm& function(AtomId base) const;

  mutable Sampler functions_rng_;
  mutable Sampler sampler_;
  mutable std::map<AtomId, Rational> point_;
  mutable std::map<AtomId, NormalForm> functions_;
  mutable std::map<AtomId, NormalForm> values_;
};

/// Draws sample points, resampling when a guard (typically the metric
/// determinant) vanishes there.
class SampleFactory {
 public:
  SampleFactory(std::uint64_t seed, std::vector<NormalForm> guards = {}) : seed_(seed), guards_(std::move(guards)) {}
  /// Point `point` of instantiation `instantiation`.
  SamplePoint make(int instantiation, int point);

 private:
  std::uint64_t seed_;
  std::vector<NormalForm> guards_;
};

}  // namespace curvkit
