#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cayex/aux_expander.hpp"
#include "cayex/bsgs.hpp"
#include "cayex/combine.hpp"
#include "cayex/multiset.hpp"
#include "cayex/permutation.hpp"

namespace cayex {

// 1 - 1/(16.5 deg diam^2). Throws InputError when deg or diam is 0.
double babai_bound(std::uint64_t deg, std::uint64_t diam);

// Symmetric, deduplicated S' = {identity} union every transversal element of
// the full-base BSGS and its inverse. Each element of G is a product of at
// most n - 1 of them; the identity keeps the Cayley graph non-bipartite.
Multiset<Permutation> strong_generator_multiset(const Bsgs& b);

// Exact diameter of Cay(G, support of s) by BFS from the identity.
// Throws CapacityError above cap elements.
std::size_t cayley_diameter(const Bsgs& b, const Multiset<Permutation>& s, std::size_t cap = 1000000);

enum class AmplificationMode { Adaptive, Analytic };

struct AmplificationSchedule {
  std::size_t phase1_rounds = 0;
  // ceil(8 log2 n), the count the analytic argument states.
  std::size_t stated_phase1_rounds = 0;
  std::size_t phase2_rounds = 0;
  std::vector<double> per_round_mu;
  // Bound after each round; bounds.size() == per_round_mu.size().
  std::vector<double> bounds;
  std::vector<std::uint64_t> aux_degrees;
  AmplificationMode mode = AmplificationMode::Adaptive;
};

std::string to_string(AmplificationMode m);

// Phase 1: RV rounds with mu = 1/100 from babai_bound(deg, n) until the bound
// is <= 1/4. Phase 2: 3 + ceil(log2 log2 (1/eps)) rounds (0 when eps >= 1/4)
// with mu_i = lambda_i^2. The recorded bounds follow the RV recurrence.
AmplificationSchedule analytic_schedule(std::size_t n, std::uint64_t deg, double eps);

struct GeneralOptions {
  AmplificationMode mode = AmplificationMode::Adaptive;
  ReduceOptions reduce;
  PipelineLog* log = nullptr;
};

GeneralOptions default_general_options();

struct GeneralResult {
  Certified<Permutation> set;
  AmplificationSchedule schedule;
  // Size of S' and the diameter bound used for the starting certificate.
  std::uint64_t base_degree = 0;
  std::size_t diameter_bound = 0;
};

// S' certified by the Babai bound with diameter <= n, then squaring to 1/4
// (phase 1) and to lambda with mu_i = lambda_i^2 (phase 2). Adaptive mode
// measures every round where the group is small enough to do so; analytic
// mode never measures and uses the schedule's mu values.
GeneralResult general_expander(const GeneratorList& g, double lambda, AuxFamily& family,
                               const GeneralOptions& opt = default_general_options());

}  // namespace cayex
