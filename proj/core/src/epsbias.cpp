#include "cayex/epsbias.hpp"

#include <ostream>

#include "cayex/error.hpp"
#include "cayex/group_model.hpp"

namespace cayex {

std::vector<std::pair<std::uint64_t, std::uint32_t>> factorize(std::uint64_t d) {
  if (d < 2) throw InputError("factorize needs d >= 2");
  std::vector<std::pair<std::uint64_t, std::uint32_t>> out;
  for (std::uint64_t p = 2; p * p <= d; ++p) {
    std::uint32_t e = 0;
    while (d % p == 0) {
      d /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  }
  if (d > 1) out.emplace_back(d, 1);
  return out;
}

BiasOptions default_bias_options() {
  BiasOptions o;
  o.amplify.compact_above = Count{1} << 20;
  return o;
}

BiasSpace zdn_bias_space(std::uint32_t d, std::uint32_t n, double eps, AuxFamily& family, const BiasOptions& opt) {
  if (d < 2 || d > kMaxBiasModulus) {
    throw InputError("d must lie in [2, " + std::to_string(kMaxBiasModulus) + "]");
  }
  if (n == 0) throw InputError("n must be at least 1");
  if (!(eps > 0 && eps < 1)) throw InputError("eps must lie in (0, 1)");

  auto fac = factorize(d);
  std::vector<AbelianFactor> fs;
  for (auto [p, e] : fac) fs.push_back({static_cast<std::uint32_t>(p), e, n});
  AbelianShape shape(fs);

  AbelianPipelineOptions po = opt.pipeline;
  po.target = std::max(eps, 0.25);
  if (opt.log) po.build.log = opt.log;
  Certified<AbelianVector> s = abelian_group_expander(shape, family, po);
  std::string method = "abelian-pipeline";
  if (eps < 0.25) {
    ReduceOptions ro = opt.amplify;
    ro.target = eps;
    ro.rule = BoundRule::RV;
    ro.square_mu = true;
    ro.mu = 0;
    ro.stage = "phase2";
    ro.log = opt.log;
    s = reduce_to(AbelianQuotientModel::whole(shape.moduli()), std::move(s), ro, family);
    method += "+phase2";
  }
  AbelianQuotientModel whole = AbelianQuotientModel::whole(shape.moduli());
  s.set = s.set.normalized();
  if (opt.max_points != 0 && s.set.total() > opt.max_points) {
    Certified<AbelianVector> small;
    small.set = compact(whole, s.set, opt.max_points);
    SpectralOptions so = opt.pipeline.build.spectral;
    so.allow_sampled = false;
    if (try_measure(whole, small, so) && *small.measured <= eps + so.tol) {
      small.bound = *small.measured;
      s = std::move(small);
      method += "+compact";
      if (opt.log) opt.log->push_back({"compact", s.set.total(), s.bound, *s.measured, 0, 0});
    }
  }

  // Coordinate t of Z_d^n from the residues at (j, t).
  std::vector<std::uint64_t> mod, coef;
  for (auto [p, e] : fac) mod.push_back(ipow(p, e));
  for (std::uint64_t m : mod) {
    std::uint64_t rest = d / m, inv = 0;
    for (std::uint64_t x = 1; x <= m; ++x)
      if (rest % m * x % m == 1 % m) {
        inv = x % m;
        break;
      }
    coef.push_back(rest * inv % d);
  }
  BiasSpace out;
  out.d = d;
  out.n = n;
  for (const auto& [v, c] : s.set) {
    AbelianVector x(n, 0);
    for (std::uint32_t t = 0; t < n; ++t) {
      std::uint64_t acc = 0;
      for (std::size_t j = 0; j < mod.size(); ++j) acc = (acc + v[j * n + t] * coef[j]) % d;
      x[t] = static_cast<std::uint32_t>(acc);
    }
    out.points.add(x, c);
  }
  out.certified_eps = effective_bound(s);
  out.method = method + (s.measured && s.exact ? "" : " (analytic)");
  return out;
}

SpectrumReport bias_report(const BiasSpace& space, const SpectralOptions& opt) {
  return abelian_bias(std::vector<std::uint32_t>(space.n, space.d), space.points, opt);
}

double verify_bias(const BiasSpace& space, const SpectralOptions& opt) { return bias_report(space, opt).lambda2; }

void write_points(std::ostream& os, const BiasSpace& space) {
  for (const auto& [x, c] : space.points) {
    for (Count k = 0; k < c; ++k) {
      for (std::size_t t = 0; t < x.size(); ++t) os << (t ? "," : "") << x[t];
      os << '\n';
    }
  }
}

}  // namespace cayex
