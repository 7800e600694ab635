#pragma once

#include <concepts>
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "cayex/abelian_shape.hpp"
#include "cayex/multiset.hpp"
#include "cayex/permutation.hpp"
#include "cayex/quotient.hpp"
#include "cayex/spectra.hpp"

namespace cayex {

/// A group model is a section H/K of some ambient group. Elements are exact
/// elements of the ambient group; products and inverses are exact, and
/// `canonical` picks the representative of the coset mod K. Multisets built
/// by the combine operations stay inverse-closed as exact elements, so they
/// remain symmetric in every quotient by a smaller kernel.
template <class M>
concept GroupModel = requires(const M& m, const typename M::Element& a, const SpectralOptions& o) {
  { m.multiply(a, a) } -> std::same_as<typename M::Element>;
  { m.inverse(a) } -> std::same_as<typename M::Element>;
  { m.identity() } -> std::same_as<typename M::Element>;
  { m.canonical(a) } -> std::same_as<typename M::Element>;
  { m.is_involution(a) } -> std::same_as<bool>;
  { m.order() } -> std::same_as<GroupOrder>;
  { m.measure(Multiset<typename M::Element>{}, o) } -> std::same_as<SpectrumReport>;
};

class PermQuotientModel {
 public:
  using Element = Permutation;

  explicit PermQuotientModel(QuotientContext q);

  Permutation multiply(const Permutation& a, const Permutation& b) const { return a * b; }
  Permutation inverse(const Permutation& a) const { return a.inverse(); }
  Permutation identity() const { return Permutation(q_.degree()); }
  Permutation canonical(const Permutation& a) const { return q_.canonicalize(a); }
  bool is_involution(const Permutation& a) const { return (a * a).is_identity(); }
  GroupOrder order() const { return q_.order(); }
  const QuotientContext& context() const { return q_; }

  // Cayley operator of the image of s on the cosets (built on demand, at
  // most `cap` cosets).
  CayleyOperator cayley_operator(const Multiset<Permutation>& s, std::size_t cap = 1000000) const;
  SpectrumReport measure(const Multiset<Permutation>& s, const SpectralOptions& opt) const;

 private:
  struct CosetTable {
    std::vector<Permutation> reps;
    std::unordered_map<Permutation, std::uint32_t, PermutationHash> index;
  };
  const CosetTable& table(std::size_t cap) const;

  QuotientContext q_;
  mutable std::shared_ptr<CosetTable> table_;
};

/// The section A/B of prod_t Z_{q_t} with A = prod a_t Z_{q_t} and
/// B = prod b_t Z_{q_t}, a_t | b_t | q_t. The quotient is
/// prod_t Z_{b_t / a_t} via x -> x_t / a_t.
class AbelianQuotientModel {
 public:
  using Element = AbelianVector;

  AbelianQuotientModel(std::vector<std::uint32_t> moduli, std::vector<std::uint32_t> top,
                       std::vector<std::uint32_t> kernel);
  // The whole group prod Z_{q_t}.
  static AbelianQuotientModel whole(std::vector<std::uint32_t> moduli);

  AbelianVector multiply(const AbelianVector& a, const AbelianVector& b) const;
  AbelianVector inverse(const AbelianVector& a) const;
  AbelianVector identity() const { return AbelianVector(q_.size(), 0); }
  AbelianVector canonical(const AbelianVector& a) const;
  bool is_involution(const AbelianVector& a) const;
  GroupOrder order() const;

  const std::vector<std::uint32_t>& moduli() const { return q_; }
  const std::vector<std::uint32_t>& top() const { return a_; }
  const std::vector<std::uint32_t>& kernel() const { return b_; }
  std::vector<std::uint32_t> quotient_moduli() const;
  // Coordinates in prod Z_{b_t/a_t}; throws InputError if a is outside A.
  AbelianVector project(const AbelianVector& a) const;
  Multiset<AbelianVector> project(const Multiset<AbelianVector>& s) const;

  SpectrumReport measure(const Multiset<AbelianVector>& s, const SpectralOptions& opt) const;

 private:
  std::vector<std::uint32_t> q_, a_, b_;
};

struct AbelianVectorHash {
  std::size_t operator()(const AbelianVector& v) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto c : v) h = (h ^ c) * 1099511628211ULL;
    return static_cast<std::size_t>(h);
  }
};

template <class E>
struct ElementHash;
template <>
struct ElementHash<Permutation> : PermutationHash {};
template <>
struct ElementHash<AbelianVector> : AbelianVectorHash {};

static_assert(GroupModel<PermQuotientModel>);
static_assert(GroupModel<AbelianQuotientModel>);

// Throws NotSymmetricError unless every element's exact inverse occurs with
// the same multiplicity.
template <GroupModel M>
void require_exact_symmetric(const M& model, const Multiset<typename M::Element>& s) {
  for (const auto& [x, c] : s) {
    if (s.count(model.inverse(x)) != c) throw NotSymmetricError("multiset is not inverse-closed");
  }
}

template <GroupModel M>
bool is_exact_symmetric(const M& model, const Multiset<typename M::Element>& s) {
  for (const auto& [x, c] : s) {
    if (s.count(model.inverse(x)) != c) return false;
  }
  return true;
}

/// Replaces each element by a representative of its coset mod the model's
/// kernel, choosing representatives so that inverse pairs map to inverse
/// pairs. Input must be inverse-closed; the coset multiset is unchanged.
template <GroupModel M>
Multiset<typename M::Element> pair_canonicalize(const M& model, const Multiset<typename M::Element>& s) {
  using E = typename M::Element;
  Multiset<E> out;
  for (const auto& [x, c] : s) {
    E c1 = model.canonical(x);
    if (model.is_involution(x)) {
      out.add(model.is_involution(c1) ? c1 : x, c);
      continue;
    }
    E xi = model.inverse(x);
    E c2 = model.canonical(xi);
    E a;
    if (c1 < c2) {
      a = c1;
    } else if (c2 < c1) {
      a = model.inverse(c2);
    } else {
      a = x < xi ? c1 : model.inverse(c1);
    }
    out.add(a, c);
  }
  return out;
}

// Image of a symmetric multiset under an element map that is a
// homomorphism only modulo some kernel: each inverse pair {x, x^-1} is
// sent to an exact inverse pair {f(x), f(x)^-1}. Self-inverse elements whose
// image is not an exact involution are split evenly between f(x) and f(x)^-1,
// doubling every multiplicity first when some count is odd.
template <class E, class Target, class F>
Multiset<typename Target::Element> push_forward(const Multiset<E>& s, const Target& target, F&& f,
                                                std::function<E(const E&)> src_inverse) {
  using T = typename Target::Element;
  struct Item {
    T image;
    Count count;
    bool split;
  };
  std::vector<Item> items;
  bool odd_split = false;
  for (const auto& [x, c] : s) {
    E xi = src_inverse(x);
    if (xi < x) continue;
    T y = f(x);
    if (xi == x) {
      bool split = !target.is_involution(y);
      if (split && c % 2 == 1) odd_split = true;
      items.push_back({std::move(y), c, split});
    } else {
      items.push_back({y, c, false});
      items.push_back({target.inverse(y), c, false});
      if (s.count(xi) != c) throw NotSymmetricError("multiset is not inverse-closed");
    }
  }
  Count scale = odd_split ? 2 : 1;
  Multiset<T> out;
  for (auto& it : items) {
    Count c = checked_mul(it.count, scale);
    if (it.split) {
      out.add(target.inverse(it.image), c / 2);
      out.add(it.image, c / 2);
    } else {
      out.add(it.image, c);
    }
  }
  return out;
}

// Second eigenvalue of Cay(<b>, s) for an inverse-closed multiset s.
SpectrumReport second_eigenvalue(const Bsgs& b, const Multiset<Permutation>& s,
                                 const SpectralOptions& opt = {});
SpectrumReport second_eigenvalue(std::shared_ptr<const Bsgs> b, const Multiset<Permutation>& s,
                                 const SpectralOptions& opt = {});

}  // namespace cayex
