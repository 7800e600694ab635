#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>

#include "cayex/error.hpp"

namespace cayex {

using Count = std::uint64_t;

inline Count checked_add(Count a, Count b) {
  Count r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("multiplicity overflow");
  return r;
}

inline Count checked_mul(Count a, Count b) {
  Count r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("multiplicity overflow");
  return r;
}

/// A finite multiset, kept sorted by element.
template <class E>
class Multiset {
 public:
  using Element = E;
  using Map = std::map<E, Count>;
  using const_iterator = typename Map::const_iterator;

  Multiset() = default;

  void add(const E& e, Count m = 1) {
    if (m == 0) return;
    auto [it, fresh] = items_.try_emplace(e, 0);
    it->second = checked_add(it->second, m);
    total_ = checked_add(total_, m);
  }

  void add_all(const Multiset& other, Count times = 1) {
    for (const auto& [e, m] : other) add(e, checked_mul(m, times));
  }

  Count count(const E& e) const {
    auto it = items_.find(e);
    return it == items_.end() ? 0 : it->second;
  }

  Count total() const { return total_; }
  std::size_t distinct() const { return items_.size(); }
  bool empty() const { return items_.empty(); }

  const_iterator begin() const { return items_.begin(); }
  const_iterator end() const { return items_.end(); }
  const E& smallest() const { return items_.begin()->first; }

  Multiset scaled(Count k) const {
    Multiset r;
    r.add_all(*this, k);
    return r;
  }

  Count gcd() const {
    Count g = 0;
    for (const auto& [e, m] : items_) g = std::gcd(g, m);
    return g;
  }

  // Divides every multiplicity by their gcd. The normalized operator is
  // unchanged.
  Multiset normalized() const {
    Count g = gcd();
    if (g <= 1) return *this;
    Multiset r;
    for (const auto& [e, m] : items_) r.add(e, m / g);
    return r;
  }

  friend bool operator==(const Multiset& a, const Multiset& b) { return a.items_ == b.items_; }

 private:
  Map items_;
  Count total_ = 0;
};

/// A multiset together with the spectral bound attached to it.
///
/// `bound` is what the construction guarantees: an exact measurement when
/// `measured` is set and `exact` is true, an analytic bound otherwise.
template <class E>
struct Certified {
  Multiset<E> set;
  double bound = 1.0;
  std::optional<double> measured;
  bool exact = false;
  std::string method;
};

}  // namespace cayex
