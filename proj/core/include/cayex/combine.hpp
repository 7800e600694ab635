#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "cayex/aux_expander.hpp"
#include "cayex/error.hpp"
#include "cayex/group_model.hpp"
#include "cayex/multiset.hpp"

namespace cayex {

struct LogEntry {
  std::string stage;
  Count size = 0;
  double bound = 1;
  double measured = -1;  // negative when not measured
  std::uint64_t aux_degree = 0;
  double aux_mu = 0;
};
using PipelineLog = std::vector<LogEntry>;

template <class E>
double effective_bound(const Certified<E>& c) {
  if (c.measured && c.exact) return std::min(c.bound, *c.measured);
  return c.bound;
}

template <class E>
Certified<E> trivial_certified(const E& identity) {
  Certified<E> c;
  c.set.add(identity);
  c.bound = 0;
  c.measured = 0.0;
  c.exact = true;
  c.method = "trivial";
  return c;
}

inline double rv_composition(double lambda, double mu) { return 1 - (1 - lambda * lambda) * (1 - mu); }

inline bool is_power_of_two(Count x) { return x != 0 && (x & (x - 1)) == 0; }

inline Count next_power_of_two(Count x) {
  if (x > (Count{1} << 62)) throw OverflowError("multiset too large to balance");
  return std::bit_ceil(x);
}

// Brings the total multiplicity to p by r = floor(p / T) whole copies plus
// p - rT identity self-loops. The bound (rT*lambda + pad) / p is exact for
// pad = 0.
template <class E>
Certified<E> replicate_to(const Certified<E>& x, Count p, const E& identity) {
  Count t = x.set.total();
  if (t == 0 || p < t) throw InputError("cannot replicate to a smaller total");
  Count r = p / t;
  Count pad = p - r * t;
  Certified<E> out = x;
  out.set = x.set.scaled(r);
  if (pad == 0) return out;
  out.set.add(identity, pad);
  double rt = static_cast<double>(r * t), pd = static_cast<double>(pad), pp = static_cast<double>(p);
  out.bound = std::min(1.0, (rt * effective_bound(x) + pd) / pp);
  out.measured.reset();
  out.exact = false;
  return out;
}

struct BalanceOptions {
  // Each multiset is replicated at least this many times before padding.
  Count min_replication = 1;
};

// Both outputs get the same power-of-two total.
template <GroupModel M>
std::pair<Certified<typename M::Element>, Certified<typename M::Element>> balance(
    const M& model, const Certified<typename M::Element>& a, const Certified<typename M::Element>& b,
    const BalanceOptions& opt = {}) {
  if (a.set.empty() || b.set.empty()) throw InputError("balance needs nonempty multisets");
  require_exact_symmetric(model, a.set);
  require_exact_symmetric(model, b.set);
  Count m = std::max(a.set.total(), b.set.total());
  Count p = next_power_of_two(checked_mul(m, std::max<Count>(1, opt.min_replication)));
  return {replicate_to(a, p, model.identity()), replicate_to(b, p, model.identity())};
}

struct CombineOptions {
  bool measure = true;
  SpectralOptions spectral;
  PipelineLog* log = nullptr;
};

template <class E>
void require_certified(const Certified<E>& c, const char* what) {
  if (c.set.empty() || !(effective_bound(c) < 1)) {
    throw CertificationError(std::string(what) + " is not certified below 1");
  }
}

template <GroupModel M>
bool try_measure(const M& model, Certified<typename M::Element>& c, const SpectralOptions& opt) {
  try {
    SpectrumReport r = model.measure(c.set, opt);
    if (!r.certifying) return false;
    c.measured = r.lambda2;
    c.exact = true;
    c.method = to_string(r.method);
    return true;
  } catch (const CapacityError&) {
    return false;
  }
}

inline double combine_bound(double la, double lb, Count ta, Count tb) {
  double l = std::max(la, lb);
  double m = static_cast<double>(std::max(ta, tb));
  return std::min(1.0, (1 + l) * m / (static_cast<double>(ta) + static_cast<double>(tb)));
}

// A is certified for N/M, B for G/N (through its image); returns A u B on
// G/M with bound (1 + lambda) max(|A|,|B|) / (|A| + |B|).
template <GroupModel M>
Certified<typename M::Element> combine(const M& top, GroupOrder lower_order, GroupOrder upper_order,
                                       const Certified<typename M::Element>& a,
                                       const Certified<typename M::Element>& b,
                                       const CombineOptions& opt = {}) {
  using E = typename M::Element;
  if (upper_order == 1) {
    require_certified(a, "normal-subgroup multiset");
    Certified<E> out = a;
    out.set = pair_canonicalize(top, a.set);
    return out;
  }
  if (lower_order == 1) {
    require_certified(b, "quotient multiset");
    Certified<E> out = b;
    out.set = pair_canonicalize(top, b.set);
    return out;
  }
  require_certified(a, "normal-subgroup multiset");
  require_certified(b, "quotient multiset");
  require_exact_symmetric(top, a.set);
  require_exact_symmetric(top, b.set);
  Certified<E> out;
  Multiset<E> u = a.set;
  u.add_all(b.set);
  out.set = pair_canonicalize(top, u);
  out.bound = combine_bound(effective_bound(a), effective_bound(b), a.set.total(), b.set.total());
  out.method = "combine";
  if (opt.measure) try_measure(top, out, opt.spectral);
  if (opt.log) {
    opt.log->push_back({"combine", out.set.total(), out.bound, out.measured ? *out.measured : -1.0, 0, 0});
  }
  return out;
}

/// Derandomized squaring of u along the aux graph. Indices 0..|U|-1 are
/// laid out in contiguous blocks, one per distinct element in sorted order.
/// For every label (generator delta) and index i the output gets u_i u_j
/// and u_i^-1 u_j^-1 with j = i ^ delta. Block-pair counts are computed by
/// splitting each block into dyadic intervals, which XOR maps onto
/// intervals.
template <GroupModel M>
Multiset<typename M::Element> derandomized_square_raw(const M& model, const Multiset<typename M::Element>& u,
                                                      const AuxExpander& h) {
  using E = typename M::Element;
  if (u.total() != h.vertex_count()) {
    throw InputError("aux vertex count " + std::to_string(h.vertex_count()) + " differs from multiset size " +
                     std::to_string(u.total()));
  }
  require_exact_symmetric(model, u);
  std::vector<const E*> elems;
  std::vector<E> inverses;
  std::vector<Count> starts;
  Count pos = 0;
  for (const auto& [x, c] : u) {
    elems.push_back(&x);
    inverses.push_back(model.inverse(x));
    starts.push_back(pos);
    pos += c;
  }
  starts.push_back(pos);
  std::size_t nb = elems.size();
  // Pair counts for one source block at a time, so memory stays O(nb).
  std::vector<Count> acc(nb, 0);
  std::vector<std::size_t> touched;
  std::unordered_map<E, Count, ElementHash<E>> prod;
  auto emit = [&prod](E x, Count c) {
    Count& slot = prod[std::move(x)];
    slot = checked_add(slot, c);
  };
  for (std::size_t g = 0; g < nb; ++g) {
    for (std::uint64_t label = 0; label < h.degree(); ++label) {
      std::uint64_t delta = h.gen(label);
      Count lo = starts[g], hi = starts[g + 1];
      while (lo < hi) {
        unsigned k = lo == 0 ? 63 : static_cast<unsigned>(std::countr_zero(lo));
        while (k > 0 && lo + (Count{1} << k) > hi) --k;
        Count len = Count{1} << k;
        Count img = (lo ^ delta) & ~(len - 1);
        Count a = img, b = img + len;
        std::size_t hb = static_cast<std::size_t>(std::upper_bound(starts.begin(), starts.end(), a) - starts.begin()) - 1;
        while (a < b) {
          Count e = std::min(b, starts[hb + 1]);
          if (acc[hb] == 0) touched.push_back(hb);
          acc[hb] += e - a;
          a = e;
          ++hb;
        }
        lo += len;
      }
    }
    for (std::size_t k : touched) {
      emit(model.multiply(*elems[g], *elems[k]), acc[k]);
      emit(model.multiply(inverses[g], inverses[k]), acc[k]);
      acc[k] = 0;
    }
    touched.clear();
  }
  Multiset<E> out;
  for (auto& [x, c] : prod) out.add(x, c);
  return out;
}

// Reference implementation enumerating every index; for tests.
template <GroupModel M>
Multiset<typename M::Element> derandomized_square_enumerated(const M& model, const Multiset<typename M::Element>& u,
                                                             const AuxExpander& h) {
  using E = typename M::Element;
  std::vector<E> idx;
  for (const auto& [x, c] : u)
    for (Count i = 0; i < c; ++i) idx.push_back(x);
  if (idx.size() != h.vertex_count()) throw InputError("aux vertex count mismatch");
  Multiset<E> out;
  for (std::uint64_t i = 0; i < idx.size(); ++i) {
    for (std::uint64_t l = 0; l < h.degree(); ++l) {
      std::uint64_t j = h.neighbor(i, l);
      out.add(model.multiply(idx[i], idx[j]));
      out.add(model.multiply(model.inverse(idx[i]), model.inverse(idx[j])));
    }
  }
  return out;
}

template <GroupModel M>
Certified<typename M::Element> derandomized_square(const M& model, const Certified<typename M::Element>& u,
                                                   const AuxExpander& h, bool measure = false,
                                                   const SpectralOptions& spectral = {}) {
  Certified<typename M::Element> out;
  out.set = pair_canonicalize(model, derandomized_square_raw(model, u.set, h));
  double l = effective_bound(u);
  out.bound = std::min(1.0, l * l + h.mu());
  out.method = "derandomized-square";
  if (measure) try_measure(model, out, spectral);
  return out;
}

// Rounds of x -> x^2 + mu from lambda until x <= target.
inline std::size_t analytic_rounds(double lambda, double mu, double target, std::size_t cap = 1000) {
  std::size_t r = 0;
  while (lambda > target) {
    if (r >= cap) throw CertificationError("analytic recurrence does not reach the target");
    lambda = lambda * lambda + mu;
    ++r;
  }
  return r;
}

// Proportional rescaling of a symmetric multiset to a power-of-two total
// (target, or the next power of two if every element cannot fit), keeping
// inverse pairs matched and every element present. Rounding remainders go
// to the largest fractional parts; an odd leftover becomes one identity.
template <GroupModel M>
Multiset<typename M::Element> compact(const M& model, const Multiset<typename M::Element>& s, Count target) {
  using E = typename M::Element;
  target = next_power_of_two(target);
  Count t = s.total();
  if (t <= target) return s;
  struct Item {
    const E* x;
    E xi;
    Count k;
    long double rem;
    Count w;
  };
  std::vector<Item> items;
  long double scale = static_cast<long double>(target) / static_cast<long double>(t);
  Count sum = 0;
  for (const auto& [x, c] : s) {
    E xi = model.inverse(x);
    if (xi < x) continue;
    long double v = static_cast<long double>(c) * scale;
    Count k = static_cast<Count>(std::floor(v));
    long double rem = v - static_cast<long double>(k);
    if (k == 0) {
      k = 1;
      rem = 0;
    }
    Count w = xi == x ? 1 : 2;
    sum += k * w;
    items.push_back({&x, std::move(xi), k, rem, w});
  }
  if (sum > target) target = next_power_of_two(sum);
  Count deficit = target - sum;
  std::vector<std::size_t> order(items.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return items[a].rem > items[b].rem; });
  while (deficit > 0) {
    bool changed = false;
    for (std::size_t i : order) {
      if (items[i].w <= deficit) {
        ++items[i].k;
        deficit -= items[i].w;
        changed = true;
        if (deficit == 0) break;
      }
    }
    if (!changed) break;
  }
  Multiset<E> out;
  for (const auto& it : items) {
    out.add(*it.x, it.k);
    if (it.w == 2) out.add(it.xi, it.k);
  }
  if (deficit > 0) out.add(model.identity(), deficit);
  return out;
}

enum class BoundRule { Additive, RV };

struct ReduceOptions {
  double target = 0.25;
  // Aux mu per round; 0 picks it from the current bound.
  double mu = 0;
  double min_mu = 1.0 / 16;
  // Phase-2 schedule: mu = lambda^2 until one round reaches the target.
  bool square_mu = false;
  bool adaptive = true;
  BoundRule rule = BoundRule::RV;
  std::size_t max_rounds = 64;
  bool normalize = true;
  SpectralOptions spectral;
  PipelineLog* log = nullptr;
  std::string stage = "square";
  // Desk-scale size control: before a round, a multiset larger than
  // compact_above is rescaled to about compact_to and re-measured; the
  // measurement becomes its certificate. 0 disables.
  Count compact_above = 0;
  Count compact_to = Count{1} << 16;
  double compact_slack = 0.05;
};

// Aux mu for the next round: the largest mu that reaches the target in
// one round, unless that is below min_mu (then a cheaper partial round).
inline double choose_mu(double lambda, const ReduceOptions& opt) {
  if (opt.mu > 0) return opt.mu;
  double l2 = lambda * lambda;
  if (opt.square_mu) {
    double one_shot = 0;
    if (l2 < opt.target) {
      one_shot = opt.rule == BoundRule::RV ? 1 - (1 - opt.target) / (1 - l2) : opt.target - l2;
    }
    return std::min(0.25, std::max(l2, one_shot));
  }
  if (opt.rule == BoundRule::RV) {
    if (l2 < opt.target) {
      double one_shot = 1 - (1 - opt.target) / (1 - l2);
      if (one_shot >= opt.min_mu) return std::min(0.25, one_shot);
    }
    return 0.25;
  }
  if (l2 < opt.target && opt.target - l2 >= opt.min_mu) return std::min(0.25, opt.target - l2);
  return std::min(0.25, (lambda - l2) / 2);
}

inline double round_bound(double lambda, double mu, BoundRule rule) {
  return rule == BoundRule::RV ? rv_composition(lambda, mu) : lambda * lambda + mu;
}

// Derandomized squaring until the bound is <= target.
template <GroupModel M>
Certified<typename M::Element> reduce_to(const M& model, Certified<typename M::Element> cur,
                                         const ReduceOptions& opt, AuxFamily& family) {
  using E = typename M::Element;
  if (cur.set.empty()) throw InputError("empty multiset");
  require_exact_symmetric(model, cur.set);
  if (opt.adaptive && !(cur.measured && cur.exact)) try_measure(model, cur, opt.spectral);
  double tol = opt.spectral.tol;
  std::size_t rounds = 0;
  while (effective_bound(cur) > opt.target + tol) {
    double lambda = effective_bound(cur);
    if (lambda >= 1 - 1e-12) {
      throw CertificationError("cannot amplify a multiset with lambda = 1 (disconnected or bipartite)");
    }
    if (rounds >= opt.max_rounds) throw CertificationError("reduction exceeded the round limit");
    if (opt.compact_above != 0 && cur.set.total() > opt.compact_above) {
      Certified<E> small;
      small.set = compact(model, cur.set, opt.compact_to);
      if (try_measure(model, small, opt.spectral) && *small.measured < lambda + opt.compact_slack &&
          *small.measured < 1 - 1e-12) {
        small.bound = *small.measured;
        small.method = "compact";
        if (opt.log) opt.log->push_back({"compact", small.set.total(), small.bound, *small.measured, 0, 0});
        cur = std::move(small);
        lambda = effective_bound(cur);
        if (lambda <= opt.target + tol) break;
      }
    }
    Count t = cur.set.total();
    if (!is_power_of_two(t)) {
      cur = replicate_to(cur, next_power_of_two(t), model.identity());
      if (opt.adaptive) try_measure(model, cur, opt.spectral);
      lambda = effective_bound(cur);
      if (opt.log) {
        opt.log->push_back({"pad", cur.set.total(), cur.bound, cur.measured ? *cur.measured : -1.0, 0, 0});
      }
    }
    double mu = choose_mu(lambda, opt);
    const AuxExpander& h = family.get(cur.set.total(), mu);
    Certified<E> next;
    next.set = pair_canonicalize(model, derandomized_square_raw(model, cur.set, h));
    if (opt.normalize) next.set = next.set.normalized();
    next.bound = std::min(1.0, round_bound(lambda, h.mu(), opt.rule));
    next.method = "derandomized-square";
    if (opt.adaptive) try_measure(model, next, opt.spectral);
    if (opt.log) {
      opt.log->push_back({opt.stage, next.set.total(), next.bound, next.measured ? *next.measured : -1.0,
                          h.degree(), h.mu()});
    }
    cur = std::move(next);
    ++rounds;
  }
  return cur;
}

/// A normal series G_0 >= ... >= G_r with a model for each section G_k/G_m.
template <class C>
concept Chain = requires(const C& c, std::size_t k, std::size_t m) {
  { c.length() } -> std::convertible_to<std::size_t>;
  c.model(k, m);
};

struct FoldOptions {
  double target = 0.25;
  BalanceOptions balance;
  CombineOptions combine;
  ReduceOptions reduce;
  PipelineLog* log = nullptr;
};

// Folds per-step certified sets into one set for G_0, pairing
// G_{2j 2^i} > G_{(2j+1) 2^i} > G_{(2j+2) 2^i}. The chain is padded to a
// power-of-two length by repeating its last group.
template <Chain C, class E>
Certified<E> fold_series(const C& chain, std::vector<Certified<E>> sets, const FoldOptions& opt,
                         AuxFamily& family) {
  std::size_t r = chain.length();
  if (sets.size() != r) throw InputError("one quotient multiset per series step is required");
  auto clamp = [r](std::size_t i) { return std::min(i, r); };
  if (r == 0) return trivial_certified(chain.model(0, 0).identity());
  for (std::size_t i = 0; i < r; ++i) {
    require_exact_symmetric(chain.model(i, i + 1), sets[i].set);
  }
  std::size_t len = std::bit_ceil(r);
  while (sets.size() < len) sets.push_back(trivial_certified(chain.model(r, r).identity()));
  for (std::size_t stride = 1; stride < len; stride *= 2) {
    std::vector<Certified<E>> next;
    for (std::size_t j = 0; 2 * j * stride < len; ++j) {
      std::size_t k = clamp(2 * j * stride), l = clamp((2 * j + 1) * stride), m = clamp((2 * j + 2) * stride);
      const auto& top = chain.model(k, m);
      GroupOrder upper = chain.model(k, l).order(), lower = chain.model(l, m).order();
      Certified<E> b = std::move(sets[2 * j]);
      Certified<E> a = std::move(sets[2 * j + 1]);
      if (upper == 1 || lower == 1) {
        next.push_back(combine(top, lower, upper, a, b, opt.combine));
        continue;
      }
      auto [ab, bb] = balance(top, a, b, opt.balance);
      CombineOptions co = opt.combine;
      co.log = opt.log;
      Certified<E> u = combine(top, lower, upper, ab, bb, co);
      ReduceOptions ro = opt.reduce;
      ro.target = opt.target;
      ro.log = opt.log;
      next.push_back(reduce_to(top, std::move(u), ro, family));
    }
    sets = std::move(next);
  }
  return std::move(sets.front());
}

}  // namespace cayex
