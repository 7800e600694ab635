#include "cayex/spectra.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <random>

#include "cayex/error.hpp"
#include "json.hpp"

namespace cayex {

std::string to_string(Method m) {
  switch (m) {
    case Method::Auto: return "auto";
    case Method::Dense: return "dense";
    case Method::PowerIteration: return "power-iteration";
    case Method::CharacterSum: return "character-sum";
    case Method::Sampled: return "sampled";
  }
  return "auto";
}

Method method_from_string(const std::string& s) {
  for (Method m : {Method::Auto, Method::Dense, Method::PowerIteration, Method::CharacterSum,
                   Method::Sampled}) {
    if (to_string(m) == s) return m;
  }
  throw InputError("unknown method: " + s);
}

std::string SpectrumReport::to_json() const {
  nlohmann::ordered_json j;
  if (group_order <= std::numeric_limits<std::uint64_t>::max()) {
    j["group_order"] = static_cast<std::uint64_t>(group_order);
  } else {
    j["group_order"] = cayex::to_string(group_order);
  }
  j["degree_total"] = degree_total;
  j["lambda2"] = lambda2;
  j["method"] = cayex::to_string(method);
  j["tolerance"] = tolerance;
  if (certified_target) {
    j["certified_target"] = *certified_target;
  } else {
    j["certified_target"] = nullptr;
  }
  j["certifying"] = certifying;
  return j.dump();
}

bool certifies(const SpectrumReport& r, double target) {
  return r.certifying && r.lambda2 <= target + r.tolerance;
}

bool certify(SpectrumReport& r, double target) {
  if (!certifies(r, target)) return false;
  r.certified_target = target;
  return true;
}

void CayleyOperator::apply(const std::vector<double>& in, std::vector<double>& out) const {
  double total = 0;
  for (const auto& a : actions) total += a.weight;
  out.assign(vertices, 0.0);
  for (const auto& a : actions) {
    double w = a.weight / total;
    for (std::size_t x = 0; x < vertices; ++x) out[x] += w * in[a.image[x]];
  }
}

namespace {

Eigen::MatrixXd dense_matrix(const CayleyOperator& op) {
  double total = 0;
  for (const auto& a : op.actions) total += a.weight;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(op.vertices, op.vertices);
  for (const auto& a : op.actions) {
    double w = a.weight / total;
    for (std::size_t x = 0; x < op.vertices; ++x) m(x, a.image[x]) += w;
  }
  return m;
}

void deflate(std::vector<double>& v) {
  double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  for (double& x : v) x -= mean;
}

double norm(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// Largest eigenvalue of (I + sign*M)/2 on the complement of the constants.
double power_top(const CayleyOperator& op, double sign, const SpectralOptions& opt,
                 std::size_t& iterations) {
  std::size_t n = op.vertices;
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n), w(n);
  for (double& x : v) x = u(rng);
  deflate(v);
  double nv = norm(v);
  if (nv == 0) return 0;
  for (double& x : v) x /= nv;
  double prev = -1;
  for (std::size_t it = 0; it < opt.max_iterations; ++it) {
    op.apply(v, w);
    for (std::size_t x = 0; x < n; ++x) w[x] = 0.5 * (v[x] + sign * w[x]);
    deflate(w);
    double rho = 0;
    for (std::size_t x = 0; x < n; ++x) rho += v[x] * w[x];
    double nw = norm(w);
    ++iterations;
    if (nw == 0) return 0;
    for (std::size_t x = 0; x < n; ++x) v[x] = w[x] / nw;
    if (it >= 20 && std::abs(rho - prev) < opt.tol * 1e-2) return rho;
    prev = rho;
  }
  throw CapacityError("power iteration did not converge within " +
                      std::to_string(opt.max_iterations) + " iterations");
}

}  // namespace

std::vector<double> dense_spectrum(const CayleyOperator& op, const SpectralOptions& opt) {
  if (op.vertices > opt.dense_cap) {
    throw CapacityError("group order " + std::to_string(op.vertices) + " exceeds dense cap " +
                        std::to_string(opt.dense_cap));
  }
  Eigen::MatrixXd m = dense_matrix(op);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  Eigen::VectorXd ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

SpectrumReport second_eigenvalue(const CayleyOperator& op, const SpectralOptions& opt) {
  if (op.actions.empty()) throw InputError("empty multiset");
  SpectrumReport r;
  r.group_order = op.vertices;
  r.degree_total = op.degree_total;
  r.tolerance = opt.tol;
  Method m = opt.method;
  if (m == Method::Auto) m = op.vertices <= opt.auto_dense_cap ? Method::Dense : Method::PowerIteration;
  if (m == Method::CharacterSum || m == Method::Sampled) {
    throw InputError("character sums need an abelian group");
  }
  r.method = m;
  if (op.vertices == 1) {
    r.lambda2 = 0;
    return r;
  }
  if (m == Method::Dense) {
    auto ev = dense_spectrum(op, opt);
    // The constants carry the top eigenvalue 1.
    double lo = ev.front(), hi = ev[ev.size() - 2];
    r.lambda2 = std::min(1.0, std::max(std::abs(lo), std::abs(hi)));
    r.tolerance = std::max(opt.tol, 1e-12);
    return r;
  }
  if (op.vertices > opt.iterative_cap) {
    throw CapacityError("group order " + std::to_string(op.vertices) + " exceeds iterative cap " +
                        std::to_string(opt.iterative_cap));
  }
  std::size_t iters = 0;
  double b1 = power_top(op, +1.0, opt, iters);
  double b2 = power_top(op, -1.0, opt, iters);
  double mu_max = 2 * b1 - 1;
  double mu_min = 1 - 2 * b2;
  r.lambda2 = std::clamp(std::max(std::abs(mu_max), std::abs(mu_min)), 0.0, 1.0);
  r.iterations = iters;
  return r;
}

void require_symmetric(const Multiset<AbelianVector>& s, const std::vector<std::uint32_t>& moduli) {
  for (const auto& [x, m] : s) {
    if (x.size() != moduli.size()) throw InputError("element shape mismatch");
    AbelianVector y(x.size());
    for (std::size_t t = 0; t < x.size(); ++t) y[t] = x[t] == 0 ? 0 : moduli[t] - x[t];
    if (s.count(y) != m) throw NotSymmetricError("multiset is not closed under negation");
  }
}

namespace {

struct CharacterEvaluator {
  const std::vector<std::uint32_t>& moduli;
  std::vector<AbelianVector> elems;
  std::vector<double> weights;
  std::uint64_t lcm = 1;
  bool table_ok = false;
  std::vector<double> cos_t, sin_t;

  CharacterEvaluator(const std::vector<std::uint32_t>& q, const Multiset<AbelianVector>& s)
      : moduli(q) {
    double total = static_cast<double>(s.total());
    for (const auto& [x, m] : s) {
      if (x.size() != q.size()) throw InputError("element shape mismatch");
      for (std::size_t t = 0; t < q.size(); ++t) {
        if (x[t] >= q[t]) throw InputError("coordinate out of range");
      }
      elems.push_back(x);
      weights.push_back(static_cast<double>(m) / total);
    }
    for (auto m : q) {
      lcm = std::lcm(lcm, std::uint64_t{m});
      if (lcm > (1u << 22)) break;
    }
    table_ok = lcm <= (1u << 22);
    if (table_ok) {
      cos_t.resize(lcm);
      sin_t.resize(lcm);
      for (std::uint64_t k = 0; k < lcm; ++k) {
        double a = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(lcm);
        cos_t[k] = std::cos(a);
        sin_t[k] = std::sin(a);
      }
    }
  }

  double magnitude(const AbelianVector& chi) const {
    double re, im;
    sum(chi, re, im);
    return std::hypot(re, im);
  }

  // E chi(s) for the character with coordinates chi; direct evaluation.
  void sum(const AbelianVector& chi, double& re, double& im) const {
    re = 0;
    im = 0;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      double phase;
      if (table_ok) {
        std::uint64_t k = 0;
        for (std::size_t t = 0; t < moduli.size(); ++t) {
          std::uint64_t c = (std::uint64_t{chi[t]} * elems[i][t]) % moduli[t];
          k += c * (lcm / moduli[t]);
        }
        k %= lcm;
        re += weights[i] * cos_t[k];
        im += weights[i] * sin_t[k];
        continue;
      }
      long double f = 0;
      for (std::size_t t = 0; t < moduli.size(); ++t) {
        std::uint64_t c = (std::uint64_t{chi[t]} * elems[i][t]) % moduli[t];
        f += static_cast<long double>(c) / moduli[t];
      }
      f -= std::floor(f);
      phase = static_cast<double>(2 * std::numbers::pi_v<long double> * f);
      re += weights[i] * std::cos(phase);
      im += weights[i] * std::sin(phase);
    }
  }
};

// Multi-axis DFT of the weight array; returns the transformed array.
std::vector<std::complex<double>> dense_dft(const std::vector<std::uint32_t>& q,
                                            const Multiset<AbelianVector>& s, std::uint64_t order) {
  std::vector<std::complex<double>> a(order, 0.0);
  double total = static_cast<double>(s.total());
  for (const auto& [x, m] : s) a[encode(x, q)] += static_cast<double>(m) / total;
  std::uint64_t stride = 1;
  std::vector<std::complex<double>> line, out;
  for (std::size_t t = 0; t < q.size(); ++t) {
    std::uint32_t n = q[t];
    std::vector<std::complex<double>> roots(n);
    for (std::uint32_t k = 0; k < n; ++k) {
      double ang = 2 * std::numbers::pi * static_cast<double>(k) / n;
      roots[k] = {std::cos(ang), std::sin(ang)};
    }
    line.resize(n);
    out.resize(n);
    std::uint64_t block = stride * n;
    for (std::uint64_t base = 0; base < order; base += block) {
      for (std::uint64_t off = 0; off < stride; ++off) {
        std::uint64_t start = base + off;
        bool any = false;
        for (std::uint32_t j = 0; j < n; ++j) {
          line[j] = a[start + j * stride];
          any = any || line[j] != 0.0;
        }
        if (!any) continue;
        for (std::uint32_t k = 0; k < n; ++k) {
          std::complex<double> acc = 0;
          std::uint64_t idx = 0;
          for (std::uint32_t j = 0; j < n; ++j) {
            if (line[j] != 0.0) acc += line[j] * roots[idx];
            idx += k;
            if (idx >= n) idx -= n;
          }
          out[k] = acc;
        }
        for (std::uint32_t k = 0; k < n; ++k) a[start + k * stride] = out[k];
      }
    }
    stride = block;
  }
  return a;
}

// Odometer over all characters with incremental phase updates; used when the
// multiset has few distinct elements compared with the axis lengths.
std::vector<double> sparse_all(const CharacterEvaluator& ev, std::uint64_t order, bool want_all,
                               double& best) {
  const auto& q = ev.moduli;
  std::size_t k = ev.elems.size();
  std::vector<double> out;
  if (want_all) out.resize(order);
  best = 0;
  if (!ev.table_ok) {
    for (std::uint64_t idx = 1; idx < order; ++idx) {
      double re, im;
      ev.sum(decode(idx, q), re, im);
      best = std::max(best, std::hypot(re, im));
      if (want_all) out[idx] = re;
    }
    if (want_all) out[0] = 1;
    return out;
  }
  std::uint64_t L = ev.lcm;
  std::vector<std::vector<std::uint64_t>> inc(q.size(), std::vector<std::uint64_t>(k));
  for (std::size_t t = 0; t < q.size(); ++t)
    for (std::size_t i = 0; i < k; ++i) inc[t][i] = (std::uint64_t{ev.elems[i][t]} * (L / q[t])) % L;
  std::vector<std::uint64_t> phase(k, 0);
  AbelianVector chi(q.size(), 0);
  if (want_all) out[0] = 1;
  for (std::uint64_t idx = 1; idx < order; ++idx) {
    for (std::size_t t = 0; t < q.size(); ++t) {
      if (chi[t] + 1 < q[t]) {
        ++chi[t];
        for (std::size_t i = 0; i < k; ++i) {
          phase[i] += inc[t][i];
          if (phase[i] >= L) phase[i] -= L;
        }
        break;
      }
      chi[t] = 0;
      for (std::size_t i = 0; i < k; ++i) {
        std::uint64_t back = ((q[t] - 1) * inc[t][i]) % L;
        phase[i] = (phase[i] + L - back) % L;
      }
    }
    double re = 0, im = 0;
    for (std::size_t i = 0; i < k; ++i) {
      re += ev.weights[i] * ev.cos_t[phase[i]];
      im += ev.weights[i] * ev.sin_t[phase[i]];
    }
    double v = std::hypot(re, im);
    best = std::max(best, v);
    if (want_all) out[idx] = re;
  }
  return out;
}

bool prefer_dense(const std::vector<std::uint32_t>& q, std::size_t distinct) {
  double axis_cost = 0;
  for (auto m : q) axis_cost += m;
  return axis_cost < static_cast<double>(distinct);
}

}  // namespace

SpectrumReport abelian_bias(const std::vector<std::uint32_t>& moduli,
                            const Multiset<AbelianVector>& s, const SpectralOptions& opt) {
  if (s.empty()) throw InputError("empty multiset");
  SpectrumReport r;
  r.degree_total = s.total();
  r.tolerance = std::max(opt.tol, 1e-12);
  std::uint64_t order = product_or_zero(moduli);
  r.group_order = order == 0 ? GroupOrder{0} : GroupOrder{order};
  if (order == 0) {
    GroupOrder o = 1;
    for (auto q : moduli) o *= q;
    r.group_order = o;
  }
  CharacterEvaluator ev(moduli, s);
  if (order == 1) {
    r.method = Method::CharacterSum;
    r.lambda2 = 0;
    return r;
  }
  bool exhaustive = order != 0 && order <= opt.exhaustive_cap && opt.method != Method::Sampled;
  if (exhaustive) {
    r.method = Method::CharacterSum;
    if (prefer_dense(moduli, s.distinct())) {
      auto a = dense_dft(moduli, s, order);
      double best = 0;
      for (std::uint64_t i = 1; i < order; ++i) best = std::max(best, std::abs(a[i]));
      r.lambda2 = std::min(1.0, best);
    } else {
      double best = 0;
      sparse_all(ev, order, false, best);
      r.lambda2 = std::min(1.0, best);
    }
    return r;
  }
  if (!opt.allow_sampled && opt.method != Method::Sampled) {
    throw CapacityError("character count exceeds exhaustive cap " + std::to_string(opt.exhaustive_cap));
  }
  // Deterministic sample seeded by the instance.
  std::uint64_t seed = 1469598103934665603ULL;
  auto mix = [&](std::uint64_t v) {
    seed ^= v;
    seed *= 1099511628211ULL;
  };
  for (auto q : moduli) mix(q);
  for (const auto& [x, m] : s) {
    for (auto c : x) mix(c);
    mix(m);
  }
  std::mt19937_64 rng(seed);
  double best = 0;
  AbelianVector chi(moduli.size());
  for (std::size_t k = 0; k < opt.samples; ++k) {
    bool zero = true;
    for (std::size_t t = 0; t < moduli.size(); ++t) {
      chi[t] = static_cast<std::uint32_t>(rng() % moduli[t]);
      zero = zero && chi[t] == 0;
    }
    if (zero) continue;
    best = std::max(best, ev.magnitude(chi));
  }
  r.method = Method::Sampled;
  r.certifying = false;
  r.lambda2 = std::min(1.0, best);
  return r;
}

SpectrumReport abelian_bias(const AbelianShape& shape, const Multiset<AbelianVector>& s,
                            const SpectralOptions& opt) {
  return abelian_bias(shape.moduli(), s, opt);
}

std::vector<double> abelian_spectrum(const std::vector<std::uint32_t>& moduli,
                                     const Multiset<AbelianVector>& s) {
  std::uint64_t order = product_or_zero(moduli);
  if (order == 0 || order > 2000000) throw CapacityError("group too large for a full spectrum");
  if (prefer_dense(moduli, s.distinct())) {
    auto a = dense_dft(moduli, s, order);
    std::vector<double> out(order);
    for (std::uint64_t i = 0; i < order; ++i) out[i] = a[i].real();
    return out;
  }
  CharacterEvaluator ev(moduli, s);
  double best = 0;
  if (!ev.table_ok) {
    std::vector<double> out(order);
    double im;
    for (std::uint64_t i = 0; i < order; ++i) ev.sum(decode(i, moduli), out[i], im);
    return out;
  }
  return sparse_all(ev, order, true, best);
}

}  // namespace cayex
