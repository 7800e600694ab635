#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cayex/permutation.hpp"

namespace cayex {

// |S_34| still fits; larger orders are rejected when they would overflow.
__extension__ typedef unsigned __int128 GroupOrder;
std::string to_string(GroupOrder v);
double to_double(GroupOrder v);

/// Base and strong generating set built by deterministic Schreier-Sims.
///
/// The base is always the complete sequence 0, 1, ..., n-1, so level k holds
/// the orbit of point k under the pointwise stabilizer of {0, ..., k-1}.
/// Levels with a trivial orbit cost nothing during sifting. A complete,
/// increasing base is what makes lexicographic coset minimization a greedy
/// descent (see QuotientContext).
class Bsgs {
 public:
  explicit Bsgs(std::size_t degree);
  static Bsgs build(const GeneratorList& g);

  std::size_t degree() const { return degree_; }
  GroupOrder order() const;
  bool is_trivial() const { return strong_.empty(); }

  // Adds g as a generator. Returns true iff the group grew.
  bool extend(const Permutation& g);

  bool contains(const Permutation& g) const;

  // Sifts g starting at `from_level`. Returns the residue and the level at
  // which sifting stopped (degree() on success, residue is then identity).
  std::pair<Permutation, std::size_t> strip(Permutation g, std::size_t from_level = 0) const;

  const std::vector<Permutation>& strong_generators() const { return strong_; }
  // The inputs that made the group grow, in insertion order. Generates the group.
  const std::vector<Permutation>& generators() const { return gens_; }

  const std::vector<Point>& orbit(std::size_t level) const { return levels_[level].orbit; }
  bool in_orbit(std::size_t level, Point p) const { return levels_[level].slot[p] >= 0; }
  // The coset representative u with level^u == p; p must lie in the orbit.
  const Permutation& transversal(std::size_t level, Point p) const;
  const Permutation& transversal_inverse(std::size_t level, Point p) const;

  // All elements, each exactly once, as transversal products (deterministic
  // order). Throws CapacityError when order() > cap.
  std::vector<Permutation> enumerate(std::size_t cap) const;

  GeneratorList as_generator_list() const { return {degree_, gens_}; }

 private:
  struct Level {
    std::vector<int> slot;  // point -> index into orbit/reps, or -1
    std::vector<Point> orbit;
    std::vector<Permutation> reps;
    std::vector<Permutation> inv_reps;
    std::vector<std::size_t> gens;                 // indices into strong_
    std::vector<std::vector<bool>> checked;        // [orbit idx][gen idx]
  };

  void add_strong(Permutation h, std::size_t top_level);
  void grow_orbit(std::size_t level);
  void close(std::size_t from_level);

  std::size_t degree_;
  std::vector<Level> levels_;
  std::vector<Permutation> strong_;
  std::vector<Permutation> gens_;
};

inline Bsgs schreier_sims(const GeneratorList& g) { return Bsgs::build(g); }
inline bool membership(const Bsgs& b, const Permutation& p) { return b.contains(p); }
inline std::vector<Permutation> enumerate_elements(const Bsgs& b, std::size_t cap) {
  return b.enumerate(cap);
}

// Jerrum's filter: an equivalent generating list of at most n - 1 elements.
GeneratorList jerrum_reduce(const GeneratorList& g);

// Breadth-first closure of the generators; an oracle independent of
// Schreier-Sims. Throws CapacityError past `cap` elements.
std::vector<Permutation> brute_force_closure(const GeneratorList& g, std::size_t cap);

}  // namespace cayex
