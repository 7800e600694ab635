#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "cayex/abelian.hpp"
#include "cayex/abelian_shape.hpp"
#include "cayex/aux_expander.hpp"
#include "cayex/multiset.hpp"
#include "cayex/spectra.hpp"

namespace cayex {

// Trial division. Throws InputError for d < 2.
std::vector<std::pair<std::uint64_t, std::uint32_t>> factorize(std::uint64_t d);

inline constexpr std::uint64_t kMaxBiasModulus = 1000000;

struct BiasSpace {
  std::uint32_t d = 2;
  std::uint32_t n = 1;
  Multiset<AbelianVector> points;  // coordinates in [0, d)
  double certified_eps = 1;
  std::string method;
};

struct BiasOptions {
  AbelianPipelineOptions pipeline;
  ReduceOptions amplify;
  // A larger output is rescaled to this total and kept only if its exact
  // bias still meets eps.
  Count max_points = Count{1} << 20;
  PipelineLog* log = nullptr;
};

BiasOptions default_bias_options();

// The abelian pipeline on prod_i Z_{p_i^{e_i}}^n for d = prod p_i^{e_i}, then
// phase-2 squaring when eps < 1/4, mapped to Z_d^n by the CRT.
BiasSpace zdn_bias_space(std::uint32_t d, std::uint32_t n, double eps, AuxFamily& family,
                         const BiasOptions& opt = default_bias_options());

// max over nontrivial characters of Z_d^n of |E_{x in S} chi(x)|; exhaustive
// up to opt.exhaustive_cap characters, otherwise sampled when allowed.
SpectrumReport bias_report(const BiasSpace& space, const SpectralOptions& opt = {});
double verify_bias(const BiasSpace& space, const SpectralOptions& opt = {});

// One point per line, coordinates comma separated.
void write_points(std::ostream& os, const BiasSpace& space);

}  // namespace cayex
