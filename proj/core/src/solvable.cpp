#include "cayex/solvable.hpp"

#include "cayex/chains.hpp"
#include "cayex/error.hpp"
#include "cayex/series.hpp"

namespace cayex {

Certified<Permutation> solvable_expander(const GeneratorList& g, AuxFamily& family, const SolvableOptions& opt) {
  SubgroupChain series = derived_series(g);
  if (!series.solvable) {
    throw NotSolvableError("group is not solvable (derived series stabilizes at order " +
                           to_string(series.orders.back()) + "); use the general pipeline");
  }
  if (series.length() == 0) return trivial_certified(Permutation(g.degree));

  AbelianPipelineOptions ao = opt.abelian;
  ao.target = opt.target;
  if (opt.log) ao.build.log = opt.log;
  std::vector<Certified<Permutation>> sets;
  for (std::size_t i = 0; i < series.length(); ++i) {
    sets.push_back(abelian_quotient_expander(series.groups[i], series.groups[i + 1], family, ao));
    if (opt.log) {
      const auto& s = sets.back();
      opt.log->push_back({"quotient", s.set.total(), s.bound, s.measured ? *s.measured : -1.0, 0, 0});
    }
  }
  PermChain chain = PermChain::from_series(series);
  FoldOptions fo = opt.fold;
  fo.target = opt.target;
  fo.log = opt.log;
  Certified<Permutation> out = fold_series(chain, std::move(sets), fo, family);
  if (effective_bound(out) > opt.target + fo.reduce.spectral.tol) {
    throw CertificationError("solvable pipeline missed its target");
  }
  return out;
}

}  // namespace cayex
