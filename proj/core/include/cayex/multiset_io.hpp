#pragma once

#include <string>
#include <string_view>

#include "cayex/abelian_shape.hpp"
#include "cayex/multiset.hpp"
#include "cayex/permutation.hpp"

namespace cayex {

struct PermMultisetFile {
  std::size_t degree = 0;
  Multiset<Permutation> set;
};

struct AbelianMultisetFile {
  AbelianShape shape;
  Multiset<AbelianVector> set;
};

// `degree <n>`, then `<multiplicity> <permutation>` per distinct element in
// multiset order. Permutations in cycle notation, 1-based.
std::string format_perm_multiset(std::size_t degree, const Multiset<Permutation>& s);
PermMultisetFile parse_perm_multiset(std::string_view text);

// `shape p1^e1:n1 ...`, then `<multiplicity> <c1>,<c2>,...`.
std::string format_abelian_multiset(const AbelianShape& shape, const Multiset<AbelianVector>& s);
AbelianMultisetFile parse_abelian_multiset(std::string_view text);

}  // namespace cayex
