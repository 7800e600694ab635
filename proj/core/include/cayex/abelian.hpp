#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "cayex/abelian_shape.hpp"
#include "cayex/chains.hpp"
#include "cayex/combine.hpp"
#include "cayex/group_model.hpp"
#include "cayex/permutation.hpp"
#include "cayex/quotient.hpp"

namespace cayex {

struct PrimesAndExponent {
  std::vector<std::uint32_t> primes;
  std::uint32_t e = 0;
};

// All primes <= n and e = ceil(log2 n). Throws InputError for n < 2.
PrimesAndExponent primes_and_exponent(std::uint64_t n);

struct CyclicOptions {
  // Candidates scored per greedy step; all of [0, t/2] when t/2 < pool.
  std::size_t pool = 64;
  std::uint64_t exhaustive_cap = 2000000;
  Count max_size = Count{1} << 20;
  std::uint64_t seed = 0xc1c1u;
};

// Symmetric multiset over Z_t (one coordinate, modulus t) with max
// |E chi(s)| <= lambda over nontrivial characters, certified by a full DFT.
// Greedy: each step adds the pair {a, -a} that minimizes the largest
// partial character sum.
Certified<AbelianVector> cyclic_expander(std::uint64_t t, double lambda, const CyclicOptions& opt = {});

struct AbelianBuildOptions {
  CyclicOptions cyclic;
  FoldOptions fold;
  SpectralOptions spectral;
  PipelineLog* log = nullptr;
};

// Default fold settings for the abelian constructions: RV rule with
// compaction at 2^20.
AbelianBuildOptions default_abelian_options();

// Coordinates of prod_j Z_{p_j}^{r_j} in blocks, prime by prime.
std::vector<std::uint32_t> block_moduli(const std::vector<std::uint32_t>& primes, std::uint32_t copies);
std::vector<std::uint32_t> block_moduli(const std::vector<std::uint32_t>& primes,
                                        const std::vector<std::uint32_t>& ranks);

// Folds M_0 > M_1 > ... > M_L = 0 in prod_j Z_{p_j}^{r_j}, where M_i has
// the first i coordinates of every block zero. The quotient M_i / M_{i+1}
// is Z_t with t the product of the primes with r_j > i, served by
// cyclic_expander through the CRT.
Certified<AbelianVector> product_base_expander(const std::vector<std::uint32_t>& primes,
                                               const std::vector<std::uint32_t>& ranks, double lambda,
                                               AuxFamily& family,
                                               const AbelianBuildOptions& opt = default_abelian_options());
// Every r_j = m.
Certified<AbelianVector> product_base_expander(const std::vector<std::uint32_t>& primes, std::uint32_t m,
                                               double lambda, AuxFamily& family,
                                               const AbelianBuildOptions& opt = default_abelian_options());

// K_0 > K_1 > ... > K_e in prod_j Z_{p_j^e}^n with K_i = prod_j p_j^i Z_{p_j^e}^n,
// so K_i / K_{i+1} = prod_j Z_{p_j}^n.
AbelianChain k_series(const std::vector<std::uint32_t>& primes, std::uint32_t e, std::uint32_t n);

// Least m_i with p_i^{m_i} > c n, for each prime.
std::vector<std::uint32_t> field_degrees(std::uint32_t n, const std::vector<std::uint32_t>& primes, std::uint32_t c);

// R over prod_i Z_{p_i}^n (blocks of n) from a certified base set over
// prod_i Z_{p_i}^{r_i}: for each of the first c n tuples x of
// prod_i F_{p_i^{m_i}} and each y in the base, v_i = (<x_i^l, psi_i(y)>)_l,
// where psi_i keeps the first m_i coordinates of block i.
// The bound is 1/c + eps(base); measured exactly when small.
Certified<AbelianVector> final_R(std::uint32_t n, const std::vector<std::uint32_t>& primes, std::uint32_t c,
                                 const Certified<AbelianVector>& base, const std::vector<std::uint32_t>& ranks,
                                 const SpectralOptions& spectral = {});
Certified<AbelianVector> final_R(std::uint32_t n, const std::vector<std::uint32_t>& primes, std::uint32_t c,
                                 const Certified<AbelianVector>& base, std::uint32_t m,
                                 const SpectralOptions& spectral = {});

/// phi: prod_j Z_{p_j^e}^l -> H/N, a -> N prod_j prod_i y_ij^{a_ij}, where
/// x_1..x_l are the reduced generators of H, r_i = ord(x_i) and
/// y_ij = x_i^{r_i / p_j^{e_ij}}. Coordinate (j, i) has index j*l + i.
struct AbelianizationHom {
  PrimesAndExponent pe;
  GeneratorList generators;
  std::vector<std::uint64_t> orders;
  std::vector<std::vector<std::uint32_t>> exps;  // [i][j] = e_ij
  std::vector<std::vector<Permutation>> y;       // [i][j]
  // preimages[i] maps to x_i exactly.
  std::vector<AbelianVector> preimages;
  std::shared_ptr<const QuotientContext> target;

  std::size_t rank() const { return generators.gens.size(); }
  std::vector<std::uint32_t> domain_moduli() const;
  // Empty when H/N is trivial.
  AbelianShape domain_shape() const;
  Permutation apply(const AbelianVector& a) const;
};

// Throws NotNormalError, or NotAbelianError naming a non-commuting pair.
AbelianizationHom build_abelianization(const GeneratorList& h, const GeneratorList& n);

// Image of a certified set under an onto homomorphism. The source bound
// carries over; the image is re-measured when the target is small, and a
// measurement above the bound means the map is not an onto homomorphism.
template <GroupModel Src, GroupModel Dst, class F>
Certified<typename Dst::Element> hom_image(const Src& src, const Certified<typename Src::Element>& s,
                                           const Dst& dst, F&& f, const SpectralOptions& opt = {}) {
  using E = typename Src::Element;
  Certified<typename Dst::Element> out;
  out.set = pair_canonicalize(
      dst, push_forward(s.set, dst, std::forward<F>(f), std::function<E(const E&)>(
                                                            [&src](const E& x) { return src.inverse(x); })));
  out.bound = effective_bound(s);
  out.method = "image";
  if (try_measure(dst, out, opt) && *out.measured > out.bound + opt.tol) {
    throw CertificationError("image is less expanding than its source: map is not an onto homomorphism");
  }
  return out;
}

struct AbelianPipelineOptions {
  std::uint32_t c = 8;
  double eps = 0.125;
  double target = 0.25;
  AbelianBuildOptions build = default_abelian_options();
};

// Certified multiset on H/N for abelian H/N, as exact elements of H.
// Per-level sets come from final_R pushed through phi into
// H_i = N <y_ij^{p_j^i}>, then the chain H = H_0 > ... > H_L = N is folded.
Certified<Permutation> abelian_quotient_expander(const GeneratorList& h, const GeneratorList& n,
                                                 AuxFamily& family, const AbelianPipelineOptions& opt = {});

// Certified multiset on the abelian group itself. Folds the series
// K_i = prod_j p_j^{min(i, e_j)} Z_{p_j^{e_j}}^{n_j}; each level gets final_R
// over the active primes with n = max n_j, truncated to each n_j and scaled
// by p_j^i.
Certified<AbelianVector> abelian_group_expander(const AbelianShape& shape, AuxFamily& family,
                                                const AbelianPipelineOptions& opt = {});

}  // namespace cayex
