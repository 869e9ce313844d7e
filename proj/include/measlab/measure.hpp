#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "measlab/borel_set.hpp"
#include "measlab/space.hpp"

namespace measlab {

struct Atom {
  Point point;
  double weight = 0.0;

  auto operator<=>(const Atom&) const = default;
};

/// Constant density `value` on `box` (mass = value * volume).
struct DensityPiece {
  Box box;
  double value = 0.0;

  auto operator<=>(const DensityPiece&) const = default;
};

/// Finite nonnegative measure: weighted atoms plus a piecewise-constant
/// density. Density pieces may overlap; the density is their sum. The canonical
/// form merges coincident atoms and coincident piece boxes and drops zeros.
class FiniteMeasure {
 public:
  FiniteMeasure() = default;
  FiniteMeasure(Space space, std::vector<Atom> atoms, std::vector<DensityPiece> density);

  static FiniteMeasure zero(const Space& space);
  static FiniteMeasure dirac(const Space& space, const Point& at, double weight = 1.0);
  /// Lebesgue measure on the whole box, multiplied by `scale`.
  static FiniteMeasure lebesgue(const Space& space, double scale = 1.0);
  /// Uniform density `value` on `box` (clipped to the space).
  static FiniteMeasure uniform(const Space& space, const Box& box, double value);
  /// Density on a regular grid of `shape` cells over the space; `values` is
  /// row-major with the last axis varying fastest.
  static FiniteMeasure grid(const Space& space, const std::vector<int>& shape,
                            const std::vector<double>& values);

  const Space& space() const { return space_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<DensityPiece>& density() const { return density_; }
  double total_mass() const { return total_; }
  bool has_density() const { return !density_.empty(); }

  /// m(A). Throws DomainMismatch when A is not contained in the space.
  double evaluate(const BorelSet& set) const;
  /// Atom part of m(A) only.
  double atom_mass(const BorelSet& set) const;

  FiniteMeasure scale(double c) const;
  FiniteMeasure add(const FiniteMeasure& other) const;
  /// E -> m(E ∩ A).
  FiniteMeasure restrict(const BorelSet& set) const;

  /// Points carrying positive atom weight.
  std::vector<Point> atom_points() const;

  bool operator==(const FiniteMeasure& other) const {
    return space_ == other.space_ && atoms_ == other.atoms_ && density_ == other.density_;
  }

 private:
  void canonicalize();

  Space space_;
  std::vector<Atom> atoms_;
  std::vector<DensityPiece> density_;
  double total_ = 0.0;
};

/// Throws DomainMismatch unless `set` lies inside `space`.
void require_within(const Space& space, const BorelSet& set);

/// Result of a domination test on a ring.
struct DominationResult {
  bool dominated = true;
  std::string witness;  // label of the first violating set
  double small_mass = 0.0;
  double big_mass = 0.0;
};

/// True iff small(A) <= big(A) + tol for every ring set, tol = 1e-12 scaled
/// by the larger total mass.
DominationResult dominates(const FiniteMeasure& big, const FiniteMeasure& small,
                           const std::vector<LabeledSet>& ring);

/// Indexed family n -> m_n, n = 1..n_max, evaluated lazily and memoized.
/// Safe for concurrent readers.
class MeasureSequence {
 public:
  using Generator = std::function<FiniteMeasure(int)>;

  MeasureSequence(Space space, Generator gen, int n_max, std::vector<std::string> tags = {});

  /// Constant sequence m_n = m.
  static MeasureSequence constant(const FiniteMeasure& m, int n_max);

  const FiniteMeasure& at(int n) const;
  int n_max() const { return n_max_; }
  const Space& space() const { return space_; }
  const std::vector<std::string>& tags() const { return tags_; }
  MeasureSequence with_n_max(int n_max) const;

 private:
  struct Cache {
    std::mutex mutex;
    std::vector<std::unique_ptr<FiniteMeasure>> items;
  };

  Space space_;
  Generator gen_;
  int n_max_;
  std::vector<std::string> tags_;
  std::shared_ptr<Cache> cache_;
};

}  // namespace measlab
