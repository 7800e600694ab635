#include "cayex/quotient.hpp"

#include <deque>
#include <unordered_set>

#include "cayex/error.hpp"

namespace cayex {

QuotientContext QuotientContext::make(const GeneratorList& h, const GeneratorList& n) {
  h.validate();
  n.validate();
  if (h.degree != n.degree) throw InputError("degree mismatch between H and N");
  auto parent = std::make_shared<const Bsgs>(Bsgs::build(h));
  auto kernel = std::make_shared<const Bsgs>(Bsgs::build(n));
  for (const auto& y : n.gens) {
    if (!parent->contains(y)) {
      throw NotNormalError("N is not a subgroup of H: " + to_cycle_string(y) + " not in H");
    }
    for (const auto& x : h.gens) {
      Permutation c = conjugate(y, x);
      if (!kernel->contains(c)) {
        throw NotNormalError("N is not normal in H: conjugate " + to_cycle_string(c) + " of " +
                             to_cycle_string(y) + " by " + to_cycle_string(x) + " is not in N");
      }
    }
  }
  return QuotientContext(std::move(parent), std::move(kernel));
}

QuotientContext QuotientContext::from_verified(std::shared_ptr<const Bsgs> parent,
                                               std::shared_ptr<const Bsgs> kernel) {
  if (parent->degree() != kernel->degree()) throw InputError("degree mismatch between H and N");
  return QuotientContext(std::move(parent), std::move(kernel));
}

QuotientContext QuotientContext::whole(std::shared_ptr<const Bsgs> parent) {
  auto k = std::make_shared<const Bsgs>(parent->degree());
  return QuotientContext(std::move(parent), std::move(k));
}

Permutation QuotientContext::canonicalize(const Permutation& h) const {
  if (h.degree() != degree()) throw InputError("degree mismatch in canonicalize");
  if (kernel_->is_trivial()) return h;
  Permutation g = h;
  for (std::size_t k = 0; k < degree(); ++k) {
    const auto& orb = kernel_->orbit(k);
    if (orb.size() == 1) continue;
    Point best = orb.front();
    for (Point d : orb) {
      if (g(d) < g(best)) best = d;
    }
    if (best != k) g = kernel_->transversal(k, best) * g;
  }
  return g;
}

bool QuotientContext::same_coset(const Permutation& a, const Permutation& b) const {
  return kernel_->contains(a * b.inverse());
}

std::vector<Permutation> QuotientContext::coset_representatives(std::size_t cap) const {
  GroupOrder ord = order();
  if (ord > cap) {
    throw CapacityError("quotient order " + to_string(ord) + " exceeds cap " + std::to_string(cap));
  }
  std::unordered_set<Permutation, PermutationHash> seen;
  std::vector<Permutation> out;
  Permutation id = canonicalize(Permutation(degree()));
  seen.insert(id);
  out.push_back(id);
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& s : parent_->generators()) {
      Permutation y = canonicalize(out[i] * s);
      if (seen.insert(y).second) out.push_back(std::move(y));
    }
  }
  return out;
}

}  // namespace cayex
