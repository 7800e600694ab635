#include "cayex/general.hpp"

#include <cmath>
#include <deque>
#include <unordered_map>

#include "cayex/error.hpp"
#include "cayex/group_model.hpp"
#include "cayex/quotient.hpp"

namespace cayex {

double babai_bound(std::uint64_t deg, std::uint64_t diam) {
  if (deg == 0 || diam == 0) throw InputError("babai_bound needs deg, diam >= 1");
  double d = static_cast<double>(diam);
  return 1.0 - 1.0 / (16.5 * static_cast<double>(deg) * d * d);
}

Multiset<Permutation> strong_generator_multiset(const Bsgs& b) {
  Multiset<Permutation> s;
  Permutation id(b.degree());
  s.add(id);
  auto put = [&](const Permutation& x) {
    if (s.count(x) == 0) s.add(x);
  };
  for (std::size_t lv = 0; lv < b.degree(); ++lv) {
    for (Point p : b.orbit(lv)) {
      const Permutation& t = b.transversal(lv, p);
      put(t);
      put(t.inverse());
    }
  }
  return s;
}

std::size_t cayley_diameter(const Bsgs& b, const Multiset<Permutation>& s, std::size_t cap) {
  if (to_double(b.order()) > static_cast<double>(cap)) {
    throw CapacityError("group of order " + to_string(b.order()) + " exceeds the BFS cap " + std::to_string(cap));
  }
  std::unordered_map<Permutation, std::size_t, PermutationHash> dist;
  std::deque<Permutation> queue;
  Permutation id(b.degree());
  dist.emplace(id, 0);
  queue.push_back(id);
  std::size_t diam = 0;
  while (!queue.empty()) {
    Permutation x = std::move(queue.front());
    queue.pop_front();
    std::size_t dx = dist.at(x);
    for (const auto& [g, m] : s) {
      Permutation y = x * g;
      if (dist.emplace(y, dx + 1).second) {
        diam = std::max(diam, dx + 1);
        queue.push_back(std::move(y));
      }
    }
  }
  if (static_cast<GroupOrder>(dist.size()) != b.order()) {
    throw InputError("the multiset does not generate the group");
  }
  return diam;
}

std::string to_string(AmplificationMode m) { return m == AmplificationMode::Adaptive ? "adaptive" : "analytic"; }

AmplificationSchedule analytic_schedule(std::size_t n, std::uint64_t deg, double eps) {
  if (!(eps > 0 && eps < 1)) throw InputError("eps must lie in (0, 1)");
  AmplificationSchedule s;
  s.mode = AmplificationMode::Analytic;
  if (n < 2) return s;
  s.stated_phase1_rounds = static_cast<std::size_t>(std::ceil(8 * std::log2(static_cast<double>(n)) - 1e-12));
  double lambda = babai_bound(deg, n);
  while (lambda > 0.25) {
    lambda = rv_composition(lambda, 0.01);
    s.per_round_mu.push_back(0.01);
    s.bounds.push_back(lambda);
    ++s.phase1_rounds;
  }
  if (eps < 0.25) {
    s.phase2_rounds = 3 + static_cast<std::size_t>(std::ceil(std::log2(std::log2(1 / eps)) - 1e-12));
    lambda = std::min(lambda, 0.25);
    for (std::size_t i = 0; i < s.phase2_rounds; ++i) {
      double mu = lambda * lambda;
      lambda = rv_composition(lambda, mu);
      s.per_round_mu.push_back(mu);
      s.bounds.push_back(lambda);
    }
  }
  return s;
}

GeneralOptions default_general_options() {
  GeneralOptions o;
  o.reduce.compact_above = Count{1} << 20;
  return o;
}

namespace {

std::size_t record(const PipelineLog& log, const std::string& stage, AmplificationSchedule& s, PipelineLog* out) {
  std::size_t rounds = 0;
  for (const auto& e : log) {
    if (out) out->push_back(e);
    if (e.stage != stage) continue;
    ++rounds;
    s.per_round_mu.push_back(e.aux_mu);
    s.bounds.push_back(e.measured >= 0 ? std::min(e.bound, e.measured) : e.bound);
    s.aux_degrees.push_back(e.aux_degree);
  }
  return rounds;
}

}  // namespace

GeneralResult general_expander(const GeneratorList& g, double lambda, AuxFamily& family, const GeneralOptions& opt) {
  if (!(lambda > 0 && lambda < 1)) throw InputError("lambda must lie in (0, 1)");
  GeneralResult r;
  r.schedule.mode = opt.mode;
  auto b = std::make_shared<const Bsgs>(Bsgs::build(g));
  PermQuotientModel model(QuotientContext::whole(b));
  if (b->is_trivial()) {
    r.set = trivial_certified(Permutation(g.degree));
    r.base_degree = 1;
    return r;
  }
  const bool adaptive = opt.mode == AmplificationMode::Adaptive;
  r.set.set = strong_generator_multiset(*b);
  r.base_degree = r.set.set.total();
  r.diameter_bound = g.degree;
  r.set.bound = babai_bound(r.base_degree, r.diameter_bound);
  r.set.method = "strong-generators";
  if (adaptive) try_measure(model, r.set, opt.reduce.spectral);
  if (opt.log) {
    opt.log->push_back({"strong-generators", r.set.set.total(), r.set.bound,
                        r.set.measured ? *r.set.measured : -1.0, 0, 0});
  }

  AmplificationSchedule analytic = analytic_schedule(g.degree, r.base_degree, std::min(lambda, 0.5));
  ReduceOptions ro = opt.reduce;
  ro.adaptive = adaptive;
  ro.rule = BoundRule::RV;
  if (!adaptive) {
    ro.mu = 0.01;
    ro.compact_above = 0;
  }

  PipelineLog p1;
  ro.target = std::max(lambda, 0.25);
  ro.stage = "phase1";
  ro.log = &p1;
  ro.max_rounds = std::max<std::size_t>(analytic.phase1_rounds, 1);
  r.set = reduce_to(model, std::move(r.set), ro, family);
  r.schedule.phase1_rounds = record(p1, "phase1", r.schedule, opt.log);

  if (lambda < 0.25) {
    PipelineLog p2;
    ro.target = lambda;
    ro.stage = "phase2";
    ro.log = &p2;
    ro.mu = 0;
    ro.square_mu = true;
    ro.max_rounds = std::max<std::size_t>(analytic.phase2_rounds, 1);
    r.set = reduce_to(model, std::move(r.set), ro, family);
    r.schedule.phase2_rounds = record(p2, "phase2", r.schedule, opt.log);
  }
  if (!r.set.measured) r.set.method += " (analytic)";
  return r;
}

}  // namespace cayex
