#pragma once

#include <cstddef>
#include <vector>

#include "cayex/bsgs.hpp"
#include "cayex/permutation.hpp"

namespace cayex {

enum class ChainKind { DerivedSeries, NormalSeries };

/// G_0 >= G_1 >= ... >= G_r, outermost first, each normal in G_0.
struct SubgroupChain {
  std::vector<GeneratorList> groups;
  std::vector<GroupOrder> orders;
  ChainKind kind = ChainKind::NormalSeries;
  // For derived series: whether the last group is trivial.
  bool solvable = true;

  // Number of proper steps, r.
  std::size_t length() const { return groups.empty() ? 0 : groups.size() - 1; }
};

// Normal closure of <of> under conjugation by the generators of `in`.
GeneratorList normal_closure(const GeneratorList& of, const GeneratorList& in);

// [G, G] as the normal closure of the generator commutators.
GeneratorList commutator_subgroup(const GeneratorList& g);

// Derived series; stops at the trivial group or when the series stabilizes
// (then solvable == false and the last group is the perfect core).
SubgroupChain derived_series(const GeneratorList& g);

// ceil(5 * log_3 n), Dixon's bound on the derived length of a solvable
// subgroup of S_n.
std::size_t dixon_bound(std::size_t n);

// True iff every generator of `sub` lies in <super>.
bool is_subgroup(const GeneratorList& sub, const Bsgs& super);

}  // namespace cayex
