#pragma once

#include <string>
#include <vector>

#include "measlab/geometry.hpp"
#include "measlab/space.hpp"

namespace measlab {

/// Finite disjoint union of boxes. Boxes may be open, closed or mixed per side
/// and may be degenerate, so single points (atom supports) are members of the
/// same algebra. Together these generate the ring on which every set-indexed
/// statement is tested.
class BorelSet {
 public:
  BorelSet() = default;
  /// Empty set in dimension d.
  explicit BorelSet(std::size_t dimension) : dim_(dimension) {}

  /// Canonical (disjoint, sorted) union of arbitrary boxes.
  static BorelSet from_boxes(std::size_t dimension, const std::vector<Box>& boxes);
  static BorelSet of(const Box& box);
  static BorelSet points(std::size_t dimension, const std::vector<Point>& pts);
  /// Half-open box [lower, upper) intersected with the space.
  static BorelSet half_open(const Space& space, const Point& lower, const Point& upper);
  /// The whole space.
  static BorelSet whole(const Space& space);

  /// Applies explicit point overrides: (this ∪ include) \ exclude.
  BorelSet with_overrides(const std::vector<Point>& include,
                          const std::vector<Point>& exclude) const;

  BorelSet unite(const BorelSet& other) const;
  BorelSet intersect(const BorelSet& other) const;
  BorelSet subtract(const BorelSet& other) const;
  BorelSet complement(const Space& space) const;

  bool contains(const Point& p) const;
  bool empty() const { return boxes_.empty(); }
  bool subset_of(const BorelSet& other) const { return subtract(other).empty(); }
  /// Lebesgue volume.
  double volume() const;
  std::size_t dimension() const { return dim_; }
  const std::vector<Box>& boxes() const { return boxes_; }

  std::string to_string() const;

  bool operator==(const BorelSet& other) const {
    return dim_ == other.dim_ && boxes_ == other.boxes_;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<Box> boxes_;
};

/// A ring member with a printable name, used for witnesses.
struct LabeledSet {
  std::string label;
  BorelSet set;
};

/// Dyadic cells of the space at levels 1..resolution together with the space
/// itself, the complements of all cells, and the singletons of `atoms` with
/// their complements. Cells are half-open except on the upper faces of the
/// space, so each level tiles the closed box. A discrete space with at most
/// 12 points yields every nonempty subset instead.
std::vector<LabeledSet> dyadic_ring(const Space& space, int resolution,
                                    const std::vector<Point>& atoms = {});

/// Dyadic cells of exactly one level.
std::vector<LabeledSet> dyadic_cells(const Space& space, int level);

/// Closures of the dyadic cells at levels 1..resolution (compact boxes).
std::vector<LabeledSet> closed_dyadic_cells(const Space& space, int resolution);

}  // namespace measlab
