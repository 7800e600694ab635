#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cayex {

using Point = std::uint16_t;

/// A permutation of {0, ..., n-1}, stored as its image array.
///
/// Permutations act on the right: the image of point i under p*q is
/// q(p(i)), i.e. p is applied first. This matches Cayley graph edges
/// {x, x*s}. Text formats are 1-based.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::size_t degree);
  // Throws InputError unless `images` is a bijection of {0..n-1}.
  explicit Permutation(std::vector<Point> images);

  static Permutation identity(std::size_t degree) { return Permutation(degree); }

  std::size_t degree() const { return images_.size(); }
  Point operator()(Point i) const { return images_[i]; }
  std::span<const Point> images() const { return images_; }

  bool is_identity() const;
  // Smallest moved point, or degree() for the identity.
  std::size_t first_moved() const;
  Permutation inverse() const;
  Permutation pow(std::int64_t k) const;

  // Disjoint cycles of length >= 2, each starting at its smallest point,
  // ordered by that point.
  std::vector<std::vector<Point>> cycles() const;

  friend Permutation operator*(const Permutation& p, const Permutation& q);
  friend auto operator<=>(const Permutation&, const Permutation&) = default;
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Point> images_;
};

// compose(p, q) == p * q: apply p, then q. Throws InputError on degree mismatch.
Permutation compose(const Permutation& p, const Permutation& q);

// x^-1 y^-1 x y
Permutation commutator(const Permutation& x, const Permutation& y);

// y^-1 x y
Permutation conjugate(const Permutation& x, const Permutation& y);

// lcm of the cycle lengths.
std::uint64_t order_of(const Permutation& p);

std::string to_cycle_string(const Permutation& p);
std::string to_image_string(const Permutation& p);

// Accepts cycle notation "(1 2 3)(4 5)", "()" for the identity, or image
// notation "[2,3,1,5,4]". Throws InputError on malformed text.
Permutation parse_permutation(std::string_view text, std::size_t degree);

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

/// An ordered list of generators of common degree. An empty list denotes the
/// trivial group of that degree.
struct GeneratorList {
  std::size_t degree = 0;
  std::vector<Permutation> gens;

  void validate() const;
};

}  // namespace cayex
