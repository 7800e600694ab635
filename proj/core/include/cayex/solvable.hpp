#pragma once

#include "cayex/abelian.hpp"
#include "cayex/combine.hpp"
#include "cayex/permutation.hpp"

namespace cayex {

struct SolvableOptions {
  double target = 0.25;
  AbelianPipelineOptions abelian;
  FoldOptions fold = default_abelian_options().fold;
  PipelineLog* log = nullptr;
};

// Derived series, an abelian quotient expander per step, then fold_series.
// Throws NotSolvableError when the series stabilizes above the trivial group.
Certified<Permutation> solvable_expander(const GeneratorList& g, AuxFamily& family,
                                         const SolvableOptions& opt = {});

}  // namespace cayex
