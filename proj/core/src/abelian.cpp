#include "cayex/abelian.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <tuple>

#include "cayex/bsgs.hpp"
#include "cayex/error.hpp"
#include "cayex/finite_field.hpp"
#include "cayex/spectra.hpp"

namespace cayex {

namespace {

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m) {
  std::int64_t g = static_cast<std::int64_t>(m), x = 0, x1 = 1, r = static_cast<std::int64_t>(a % m);
  while (r != 0) {
    std::int64_t q = g / r;
    std::tie(g, r) = std::make_pair(r, g - q * r);
    std::tie(x, x1) = std::make_pair(x1, x - q * x1);
  }
  if (g != 1) throw InputError("not invertible");
  std::int64_t mm = static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(((x % mm) + mm) % mm);
}

}  // namespace

PrimesAndExponent primes_and_exponent(std::uint64_t n) {
  if (n < 2) throw InputError("primes_and_exponent needs n >= 2");
  PrimesAndExponent r;
  r.primes = primes_up_to(static_cast<std::uint32_t>(n));
  while ((std::uint64_t{1} << r.e) < n) ++r.e;
  return r;
}

Certified<AbelianVector> cyclic_expander(std::uint64_t t, double lambda, const CyclicOptions& opt) {
  if (t == 0) throw InputError("cyclic group order must be positive");
  if (t > opt.exhaustive_cap || t > 0xffffffffu) {
    throw CapacityError("Z_" + std::to_string(t) + " is beyond exhaustive DFT certification");
  }
  Certified<AbelianVector> out;
  if (t == 1) return trivial_certified(AbelianVector{0});

  std::vector<double> cos_table(t);
  for (std::uint64_t r = 0; r < t; ++r) cos_table[r] = std::cos(2 * std::numbers::pi * double(r) / double(t));
  std::vector<double> sums(t, 0.0);  // sums[k] = sum over the set of chi_k; index 0 unused
  Count size = 0;
  std::uint64_t half = t / 2;
  std::size_t pool = std::min<std::uint64_t>(opt.pool, std::max<std::uint64_t>(4, (std::uint64_t{1} << 27) / t));
  std::mt19937_64 rng(opt.seed ^ t);
  std::vector<std::uint64_t> cands;

  double current = 1;
  while (current > lambda) {
    cands.clear();
    if (half + 1 <= pool) {
      for (std::uint64_t a = 0; a <= half; ++a) cands.push_back(a);
    } else {
      for (std::size_t i = 0; i < pool; ++i) cands.push_back(rng() % (half + 1));
    }
    double best = 2;
    std::uint64_t best_a = 0;
    for (auto a : cands) {
      double w = (a == 0 || 2 * a == t) ? 1 : 2;
      double denom = double(size) + w;
      double cutoff = best * denom;
      double worst = 0;
      std::uint64_t r = 0;
      for (std::uint64_t k = 1; k < t && worst < cutoff; ++k) {
        r += a;
        if (r >= t) r -= t;
        worst = std::max(worst, std::abs(sums[k] + w * cos_table[r]));
      }
      if (worst < cutoff) {
        best = worst / denom;
        best_a = a;
      }
    }
    double w = (best_a == 0 || 2 * best_a == t) ? 1 : 2;
    std::uint64_t r = 0;
    for (std::uint64_t k = 1; k < t; ++k) {
      r += best_a;
      if (r >= t) r -= t;
      sums[k] += w * cos_table[r];
    }
    out.set.add(AbelianVector{static_cast<std::uint32_t>(best_a)});
    if (w == 2) out.set.add(AbelianVector{static_cast<std::uint32_t>(t - best_a)});
    size = out.set.total();
    current = best;
    if (size > opt.max_size) throw CertificationError("cyclic expander exceeded its size limit");
  }
  SpectralOptions so;
  so.exhaustive_cap = opt.exhaustive_cap;
  SpectrumReport rep = abelian_bias({static_cast<std::uint32_t>(t)}, out.set, so);
  if (!rep.certifying || rep.lambda2 > lambda + rep.tolerance) {
    throw CertificationError("cyclic expander failed its DFT certification");
  }
  out.bound = rep.lambda2;
  out.measured = rep.lambda2;
  out.exact = true;
  out.method = "greedy-dft";
  return out;
}

AbelianBuildOptions default_abelian_options() {
  AbelianBuildOptions o;
  o.fold.reduce.compact_above = Count{1} << 20;
  return o;
}

std::vector<std::uint32_t> block_moduli(const std::vector<std::uint32_t>& primes, std::uint32_t copies) {
  return block_moduli(primes, std::vector<std::uint32_t>(primes.size(), copies));
}

std::vector<std::uint32_t> block_moduli(const std::vector<std::uint32_t>& primes,
                                        const std::vector<std::uint32_t>& ranks) {
  if (ranks.size() != primes.size()) throw InputError("one rank per prime is required");
  std::vector<std::uint32_t> q;
  for (std::size_t j = 0; j < primes.size(); ++j) q.insert(q.end(), ranks[j], primes[j]);
  return q;
}

Certified<AbelianVector> product_base_expander(const std::vector<std::uint32_t>& primes,
                                               const std::vector<std::uint32_t>& ranks, double lambda,
                                               AuxFamily& family, const AbelianBuildOptions& opt) {
  if (primes.empty()) throw InputError("product base expander needs at least one prime");
  if (ranks.size() != primes.size()) throw InputError("one rank per prime is required");
  for (std::size_t j = 0; j < primes.size(); ++j) {
    if (!is_prime(primes[j]) || (j > 0 && primes[j] <= primes[j - 1])) {
      throw InputError("primes must increase strictly");
    }
    if (ranks[j] == 0) throw InputError("product base expander needs ranks >= 1");
  }
  std::size_t k = primes.size();
  std::uint32_t depth = *std::max_element(ranks.begin(), ranks.end());
  std::vector<std::uint32_t> q = block_moduli(primes, ranks);
  std::vector<std::size_t> offset(k, 0);
  for (std::size_t j = 1; j < k; ++j) offset[j] = offset[j - 1] + ranks[j - 1];

  std::vector<std::vector<std::uint32_t>> levels;
  for (std::uint32_t i = 0; i <= depth; ++i) {
    std::vector<std::uint32_t> lv(q.size(), 1);
    for (std::size_t j = 0; j < k; ++j)
      for (std::uint32_t c = 0; c < std::min(i, ranks[j]); ++c) lv[offset[j] + c] = primes[j];
    levels.push_back(std::move(lv));
  }
  AbelianChain chain(q, std::move(levels));

  std::map<std::uint64_t, Certified<AbelianVector>> cyclic_cache;
  std::vector<Certified<AbelianVector>> sets;
  for (std::uint32_t i = 0; i < depth; ++i) {
    std::uint64_t t = 1;
    for (std::size_t j = 0; j < k; ++j)
      if (ranks[j] > i && __builtin_mul_overflow(t, primes[j], &t)) throw CapacityError("prime product overflows");
    auto it = cyclic_cache.find(t);
    if (it == cyclic_cache.end()) {
      it = cyclic_cache.emplace(t, cyclic_expander(t, lambda, opt.cyclic)).first;
      const auto& cyc = it->second;
      if (opt.log) opt.log->push_back({"cyclic", cyc.set.total(), cyc.bound, *cyc.measured, 0, 0});
    }
    Certified<AbelianVector> s = it->second;
    s.set = {};
    for (const auto& [a, c] : it->second.set) {
      AbelianVector v(q.size(), 0);
      for (std::size_t j = 0; j < k; ++j)
        if (ranks[j] > i) v[offset[j] + i] = a[0] % primes[j];
      s.set.add(v, c);
    }
    sets.push_back(std::move(s));
  }
  FoldOptions fo = opt.fold;
  fo.target = lambda;
  fo.log = opt.log;
  fo.reduce.spectral = opt.spectral;
  fo.combine.spectral = opt.spectral;
  Certified<AbelianVector> out = fold_series(chain, std::move(sets), fo, family);
  if (effective_bound(out) > lambda + opt.spectral.tol) {
    throw CertificationError("product base expander missed its target");
  }
  return out;
}

Certified<AbelianVector> product_base_expander(const std::vector<std::uint32_t>& primes, std::uint32_t m,
                                               double lambda, AuxFamily& family, const AbelianBuildOptions& opt) {
  return product_base_expander(primes, std::vector<std::uint32_t>(primes.size(), m), lambda, family, opt);
}

AbelianChain k_series(const std::vector<std::uint32_t>& primes, std::uint32_t e, std::uint32_t n) {
  std::vector<std::uint32_t> q;
  for (auto p : primes) q.insert(q.end(), n, static_cast<std::uint32_t>(ipow(p, e)));
  std::vector<std::vector<std::uint32_t>> levels;
  for (std::uint32_t i = 0; i <= e; ++i) {
    std::vector<std::uint32_t> lv;
    for (auto p : primes) lv.insert(lv.end(), n, static_cast<std::uint32_t>(ipow(p, i)));
    levels.push_back(std::move(lv));
  }
  return AbelianChain(std::move(q), std::move(levels));
}

std::vector<std::uint32_t> field_degrees(std::uint32_t n, const std::vector<std::uint32_t>& primes, std::uint32_t c) {
  std::vector<std::uint32_t> m;
  for (auto p : primes) m.push_back(least_degree_exceeding(p, std::uint64_t{c} * n));
  return m;
}

Certified<AbelianVector> final_R(std::uint32_t n, const std::vector<std::uint32_t>& primes, std::uint32_t c,
                                 const Certified<AbelianVector>& base, std::uint32_t m,
                                 const SpectralOptions& spectral) {
  return final_R(n, primes, c, base, std::vector<std::uint32_t>(primes.size(), m), spectral);
}

Certified<AbelianVector> final_R(std::uint32_t n, const std::vector<std::uint32_t>& primes, std::uint32_t c,
                                 const Certified<AbelianVector>& base, const std::vector<std::uint32_t>& ranks,
                                 const SpectralOptions& spectral) {
  if (n == 0 || c == 0) throw InputError("final_R needs n, c >= 1");
  std::size_t k = primes.size();
  if (ranks.size() != k) throw InputError("one rank per prime is required");
  std::vector<std::uint32_t> degs = field_degrees(n, primes, c);
  std::vector<std::size_t> offset(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    if (ranks[i] < degs[i]) {
      throw InputError("base rank " + std::to_string(ranks[i]) + " is below the field degree " +
                       std::to_string(degs[i]) + "; psi is not onto");
    }
    if (i > 0) offset[i] = offset[i - 1] + ranks[i - 1];
  }
  std::size_t rank_total = k == 0 ? 0 : offset[k - 1] + ranks[k - 1];
  double eps = effective_bound(base);
  if (1.0 / c + eps > 0.25 + 1e-9) throw InputError("1/c + eps exceeds 1/4");

  std::uint64_t tuples = std::uint64_t{c} * n;
  // pw[i][j][l] = coefficients of x_i(j)^l
  std::vector<std::vector<std::vector<std::vector<std::uint32_t>>>> pw(k);
  for (std::size_t i = 0; i < k; ++i) {
    auto f = std::make_shared<const FieldSpec>(construct_field(primes[i], degs[i]));
    pw[i].resize(tuples);
    for (std::uint64_t j = 0; j < tuples; ++j) {
      FieldElement x = FieldElement::from_index(f, j), cur = FieldElement::one(f);
      for (std::uint32_t l = 0; l < n; ++l) {
        pw[i][j].push_back(cur.coeffs());
        cur = cur * x;
      }
    }
  }

  Certified<AbelianVector> out;
  AbelianVector v(k * n);
  for (const auto& [y, cnt] : base.set) {
    if (y.size() != rank_total) throw InputError("base element has the wrong rank");
    for (std::uint64_t j = 0; j < tuples; ++j) {
      for (std::size_t i = 0; i < k; ++i) {
        const std::uint32_t* yi = y.data() + offset[i];
        std::uint64_t p = primes[i];
        for (std::uint32_t l = 0; l < n; ++l) {
          const auto& xl = pw[i][j][l];
          std::uint64_t s = 0;
          for (std::uint32_t t = 0; t < degs[i]; ++t) s += std::uint64_t{xl[t]} * yi[t];
          v[i * n + l] = static_cast<std::uint32_t>(s % p);
        }
      }
      out.set.add(v, cnt);
    }
  }
  out.bound = 1.0 / c + eps;
  out.method = "final-R";
  AbelianQuotientModel whole = AbelianQuotientModel::whole(block_moduli(primes, n));
  try_measure(whole, out, spectral);
  return out;
}

std::vector<std::uint32_t> AbelianizationHom::domain_moduli() const {
  std::vector<std::uint32_t> q;
  for (auto p : pe.primes) q.insert(q.end(), rank(), static_cast<std::uint32_t>(ipow(p, pe.e)));
  return q;
}

AbelianShape AbelianizationHom::domain_shape() const {
  if (rank() == 0) return AbelianShape{};
  std::vector<AbelianFactor> f;
  for (auto p : pe.primes) f.push_back({p, pe.e, static_cast<std::uint32_t>(rank())});
  return AbelianShape(std::move(f));
}

Permutation AbelianizationHom::apply(const AbelianVector& a) const {
  std::size_t l = rank();
  if (a.size() != l * pe.primes.size()) throw InputError("vector does not match the domain");
  Permutation r(generators.degree);
  for (std::size_t j = 0; j < pe.primes.size(); ++j)
    for (std::size_t i = 0; i < l; ++i)
      if (a[j * l + i] != 0) r = r * y[i][j].pow(a[j * l + i]);
  return r;
}

AbelianizationHom build_abelianization(const GeneratorList& h, const GeneratorList& n) {
  AbelianizationHom hom;
  auto q = std::make_shared<const QuotientContext>(QuotientContext::make(h, n));
  hom.target = q;
  hom.generators.degree = h.degree;
  if (q->order() == 1) return hom;

  GeneratorList red = jerrum_reduce(h);
  for (const auto& x : red.gens)
    if (!q->kernel().contains(x)) hom.generators.gens.push_back(x);
  const auto& xs = hom.generators.gens;
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      if (!q->kernel().contains(commutator(xs[i], xs[j]))) {
        throw NotAbelianError("H/N is not abelian: " + to_cycle_string(xs[i]) + " and " + to_cycle_string(xs[j]) +
                              " do not commute modulo N");
      }

  hom.pe = primes_and_exponent(h.degree);
  std::size_t l = xs.size(), k = hom.pe.primes.size();
  for (std::size_t i = 0; i < l; ++i) {
    std::uint64_t r = order_of(xs[i]);
    hom.orders.push_back(r);
    std::vector<std::uint32_t> e(k, 0);
    std::vector<Permutation> ys;
    AbelianVector pre(k * l, 0);
    std::uint64_t rest = r;
    for (std::size_t j = 0; j < k; ++j) {
      std::uint64_t p = hom.pe.primes[j], pp = 1;
      while (rest % p == 0) {
        rest /= p;
        pp *= p;
        ++e[j];
      }
      if (e[j] > hom.pe.e) throw CertificationError("element order exceeds the exponent bound");
      std::uint64_t cofactor = r / pp;
      ys.push_back(xs[i].pow(static_cast<std::int64_t>(cofactor)));
      if (pp > 1) pre[j * l + i] = static_cast<std::uint32_t>(mod_inverse(cofactor % pp, pp));
    }
    if (rest != 1) throw CertificationError("element order has a prime factor above the degree");
    hom.exps.push_back(std::move(e));
    hom.y.push_back(std::move(ys));
    hom.preimages.push_back(std::move(pre));
  }
  for (std::size_t i = 0; i < l; ++i) {
    if (!(hom.apply(hom.preimages[i]) == xs[i])) throw CertificationError("abelianization is not onto");
  }
  return hom;
}

Certified<Permutation> abelian_quotient_expander(const GeneratorList& h, const GeneratorList& n, AuxFamily& family,
                                                 const AbelianPipelineOptions& opt) {
  AbelianizationHom hom = build_abelianization(h, n);
  const QuotientContext& q = *hom.target;
  if (q.order() == 1) return trivial_certified(Permutation(h.degree));
  std::size_t l = hom.rank(), k = hom.pe.primes.size();
  const Bsgs& kernel = q.kernel();

  // Depth of prime j: least f with every y_ij^{p^f} in N.
  std::vector<std::uint32_t> depth(k, 0);
  for (std::size_t j = 0; j < k; ++j) {
    std::int64_t p = hom.pe.primes[j];
    for (std::size_t i = 0; i < l; ++i) {
      std::uint32_t f = 0;
      Permutation z = hom.y[i][j];
      while (!kernel.contains(z)) {
        z = z.pow(p);
        ++f;
      }
      depth[j] = std::max(depth[j], f);
    }
  }
  std::uint32_t levels = *std::max_element(depth.begin(), depth.end());

  std::vector<std::shared_ptr<const Bsgs>> groups{q.parent_ptr()};
  for (std::uint32_t lv = 1; lv < levels; ++lv) {
    Bsgs b = kernel;
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < l; ++i)
        b.extend(hom.y[i][j].pow(static_cast<std::int64_t>(ipow(hom.pe.primes[j], lv))));
    groups.push_back(std::make_shared<const Bsgs>(std::move(b)));
  }
  groups.push_back(q.kernel_ptr());
  PermChain chain(groups);

  const auto& spectral = opt.build.spectral;
  std::map<std::vector<std::uint32_t>, Certified<AbelianVector>> r_cache;
  std::vector<Certified<Permutation>> sets;
  for (std::uint32_t lv = 0; lv < levels; ++lv) {
    std::vector<std::uint32_t> primes;
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < k; ++j)
      if (depth[j] > lv) {
        primes.push_back(hom.pe.primes[j]);
        idx.push_back(j);
      }
    auto it = r_cache.find(primes);
    if (it == r_cache.end()) {
      auto degs = field_degrees(static_cast<std::uint32_t>(l), primes, opt.c);
      Certified<AbelianVector> base = product_base_expander(primes, degs, opt.eps, family, opt.build);
      if (opt.build.log) {
        opt.build.log->push_back({"base", base.set.total(), base.bound, base.measured ? *base.measured : -1.0, 0, 0});
      }
      Certified<AbelianVector> r = final_R(static_cast<std::uint32_t>(l), primes, opt.c, base, degs, spectral);
      if (opt.build.log) {
        opt.build.log->push_back({"final-R", r.set.total(), r.bound, r.measured ? *r.measured : -1.0, 0, 0});
      }
      it = r_cache.emplace(primes, std::move(r)).first;
    }
    AbelianQuotientModel src = AbelianQuotientModel::whole(block_moduli(primes, static_cast<std::uint32_t>(l)));
    std::vector<std::int64_t> scale;
    for (auto p : primes) scale.push_back(static_cast<std::int64_t>(ipow(p, lv)));
    auto phi = [&](const AbelianVector& a) {
      Permutation r(h.degree);
      for (std::size_t jj = 0; jj < primes.size(); ++jj)
        for (std::size_t i = 0; i < l; ++i)
          if (a[jj * l + i] != 0) r = r * hom.y[i][idx[jj]].pow(scale[jj] * a[jj * l + i]);
      return r;
    };
    Certified<Permutation> img = hom_image(src, it->second, chain.model(lv, lv + 1), phi, spectral);
    if (opt.build.log) {
      opt.build.log->push_back({"abelian-level", img.set.total(), img.bound, img.measured ? *img.measured : -1.0, 0, 0});
    }
    sets.push_back(std::move(img));
  }

  FoldOptions fo = opt.build.fold;
  fo.target = opt.target;
  fo.log = opt.build.log;
  fo.reduce.spectral = spectral;
  fo.combine.spectral = spectral;
  Certified<Permutation> out = fold_series(chain, std::move(sets), fo, family);
  if (effective_bound(out) > opt.target + spectral.tol) {
    throw CertificationError("abelian quotient expander missed its target");
  }
  return out;
}

Certified<AbelianVector> abelian_group_expander(const AbelianShape& shape, AuxFamily& family,
                                                const AbelianPipelineOptions& opt) {
  const auto& fs = shape.factors();
  if (fs.empty()) return trivial_certified(AbelianVector{});
  std::uint32_t levels = 0;
  for (const auto& f : fs) levels = std::max(levels, f.e);
  std::vector<std::vector<std::uint32_t>> lv_div;
  for (std::uint32_t i = 0; i <= levels; ++i) {
    std::vector<std::uint32_t> d;
    for (const auto& f : fs) d.insert(d.end(), f.copies, static_cast<std::uint32_t>(ipow(f.p, std::min(i, f.e))));
    lv_div.push_back(std::move(d));
  }
  AbelianChain chain(shape.moduli(), std::move(lv_div));
  std::vector<std::size_t> start(fs.size(), 0);
  for (std::size_t j = 1; j < fs.size(); ++j) start[j] = start[j - 1] + fs[j - 1].copies;

  const auto& spectral = opt.build.spectral;
  std::map<std::pair<std::vector<std::uint32_t>, std::uint32_t>, Certified<AbelianVector>> r_cache;
  std::vector<Certified<AbelianVector>> sets;
  for (std::uint32_t lv = 0; lv < levels; ++lv) {
    std::vector<std::uint32_t> primes;
    std::vector<std::size_t> idx;
    std::uint32_t width = 0;
    for (std::size_t j = 0; j < fs.size(); ++j)
      if (fs[j].e > lv) {
        primes.push_back(fs[j].p);
        idx.push_back(j);
        width = std::max(width, fs[j].copies);
      }
    auto key = std::make_pair(primes, width);
    auto it = r_cache.find(key);
    if (it == r_cache.end()) {
      auto degs = field_degrees(width, primes, opt.c);
      Certified<AbelianVector> base = product_base_expander(primes, degs, opt.eps, family, opt.build);
      if (opt.build.log) {
        opt.build.log->push_back({"base", base.set.total(), base.bound, base.measured ? *base.measured : -1.0, 0, 0});
      }
      Certified<AbelianVector> r = final_R(width, primes, opt.c, base, degs, spectral);
      if (opt.build.log) {
        opt.build.log->push_back({"final-R", r.set.total(), r.bound, r.measured ? *r.measured : -1.0, 0, 0});
      }
      it = r_cache.emplace(key, std::move(r)).first;
    }
    AbelianQuotientModel src = AbelianQuotientModel::whole(block_moduli(primes, width));
    auto embed = [&](const AbelianVector& a) {
      AbelianVector r(shape.rank(), 0);
      for (std::size_t jj = 0; jj < idx.size(); ++jj) {
        const auto& f = fs[idx[jj]];
        std::uint64_t scale = ipow(f.p, lv), mod = ipow(f.p, f.e);
        for (std::uint32_t t = 0; t < f.copies; ++t) {
          r[start[idx[jj]] + t] = static_cast<std::uint32_t>(scale * a[jj * width + t] % mod);
        }
      }
      return r;
    };
    Certified<AbelianVector> img = hom_image(src, it->second, chain.model(lv, lv + 1), embed, spectral);
    if (opt.build.log) {
      opt.build.log->push_back({"abelian-level", img.set.total(), img.bound, img.measured ? *img.measured : -1.0, 0, 0});
    }
    sets.push_back(std::move(img));
  }

  FoldOptions fo = opt.build.fold;
  fo.target = opt.target;
  fo.log = opt.build.log;
  fo.reduce.spectral = spectral;
  fo.combine.spectral = spectral;
  Certified<AbelianVector> out = fold_series(chain, std::move(sets), fo, family);
  if (effective_bound(out) > opt.target + spectral.tol) {
    throw CertificationError("abelian group expander missed its target");
  }
  return out;
}

}  // namespace cayex
