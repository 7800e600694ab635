#include "cayex/series.hpp"

#include <cmath>
#include <deque>

#include "cayex/error.hpp"

namespace cayex {

GeneratorList normal_closure(const GeneratorList& of, const GeneratorList& in) {
  of.validate();
  in.validate();
  if (of.degree != in.degree) throw InputError("degree mismatch in normal closure");
  Bsgs b(of.degree);
  GeneratorList out{of.degree, {}};
  std::deque<Permutation> queue(of.gens.begin(), of.gens.end());
  while (!queue.empty()) {
    Permutation c = std::move(queue.front());
    queue.pop_front();
    if (!b.extend(c)) continue;
    for (const auto& x : in.gens) queue.push_back(conjugate(c, x));
    out.gens.push_back(std::move(c));
  }
  return jerrum_reduce(out);
}

GeneratorList commutator_subgroup(const GeneratorList& g) {
  GeneratorList comms{g.degree, {}};
  for (std::size_t i = 0; i < g.gens.size(); ++i) {
    for (std::size_t j = i + 1; j < g.gens.size(); ++j) {
      Permutation c = commutator(g.gens[i], g.gens[j]);
      if (!c.is_identity()) comms.gens.push_back(std::move(c));
    }
  }
  return normal_closure(comms, g);
}

SubgroupChain derived_series(const GeneratorList& g) {
  g.validate();
  SubgroupChain chain;
  chain.kind = ChainKind::DerivedSeries;
  GeneratorList cur = jerrum_reduce(g);
  GroupOrder ord = Bsgs::build(cur).order();
  chain.groups.push_back(cur);
  chain.orders.push_back(ord);
  while (ord > 1) {
    GeneratorList next = commutator_subgroup(cur);
    GroupOrder next_ord = Bsgs::build(next).order();
    if (next_ord == ord) {
      chain.solvable = false;
      break;
    }
    chain.groups.push_back(next);
    chain.orders.push_back(next_ord);
    cur = std::move(next);
    ord = next_ord;
  }
  return chain;
}

std::size_t dixon_bound(std::size_t n) {
  if (n <= 1) return 0;
  double v = 5.0 * std::log(static_cast<double>(n)) / std::log(3.0);
  return static_cast<std::size_t>(std::ceil(v - 1e-12));
}

bool is_subgroup(const GeneratorList& sub, const Bsgs& super) {
  for (const auto& s : sub.gens) {
    if (!super.contains(s)) return false;
  }
  return true;
}

}  // namespace cayex
