#pragma once

#include <memory>
#include <vector>

#include "cayex/bsgs.hpp"
#include "cayex/permutation.hpp"

namespace cayex {

/// Arithmetic in H/N for N normal in H, both given by BSGS.
///
/// The canonical representative of the right coset N*h is the element of
/// N*h with the lexicographically smallest image array. With the complete
/// increasing base of Bsgs it is found by a greedy descent through the
/// kernel's transversals: at level k pick the orbit point d minimizing
/// h(d), then replace h by u_d * h.
class QuotientContext {
 public:
  // Verifies N <= H and N normal in H; throws NotNormalError naming the
  // first offending conjugate.
  static QuotientContext make(const GeneratorList& h, const GeneratorList& n);

  // Trusts the caller that kernel is normal in parent.
  static QuotientContext from_verified(std::shared_ptr<const Bsgs> parent,
                                       std::shared_ptr<const Bsgs> kernel);

  // H / 1.
  static QuotientContext whole(std::shared_ptr<const Bsgs> parent);

  const Bsgs& parent() const { return *parent_; }
  const Bsgs& kernel() const { return *kernel_; }
  std::shared_ptr<const Bsgs> parent_ptr() const { return parent_; }
  std::shared_ptr<const Bsgs> kernel_ptr() const { return kernel_; }
  std::size_t degree() const { return parent_->degree(); }

  GroupOrder order() const { return parent_->order() / kernel_->order(); }

  Permutation canonicalize(const Permutation& h) const;
  bool same_coset(const Permutation& a, const Permutation& b) const;

  // Canonical representatives of all cosets in breadth-first order from the
  // identity coset over the parent's generators. Throws CapacityError.
  std::vector<Permutation> coset_representatives(std::size_t cap) const;

 private:
  QuotientContext(std::shared_ptr<const Bsgs> p, std::shared_ptr<const Bsgs> k)
      : parent_(std::move(p)), kernel_(std::move(k)) {}

  std::shared_ptr<const Bsgs> parent_;
  std::shared_ptr<const Bsgs> kernel_;
};

inline QuotientContext quotient_context(const GeneratorList& h, const GeneratorList& n) {
  return QuotientContext::make(h, n);
}

}  // namespace cayex
