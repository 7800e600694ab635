#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cayex/chains.hpp"
#include "cayex/combine.hpp"
#include "cayex/error.hpp"
#include "support/catalog.hpp"
#include "support/instances.hpp"

using namespace cayex;
using namespace cayex::testing;

namespace {

std::shared_ptr<const Bsgs> bsgs_of(const GeneratorList& g) { return std::make_shared<const Bsgs>(Bsgs::build(g)); }

PermQuotientModel whole_model(std::shared_ptr<const Bsgs> g) { return PermQuotientModel(QuotientContext::whole(g)); }

Certified<Permutation> measured(const PermQuotientModel& m, Multiset<Permutation> s) {
  Certified<Permutation> c;
  c.set = std::move(s);
  SpectrumReport r = m.measure(c.set, {});
  c.bound = r.lambda2;
  c.measured = r.lambda2;
  c.exact = true;
  return c;
}

Multiset<Permutation> generators_plus_random(const GeneratorList& gens, const std::vector<Permutation>& pool,
                                             std::size_t extra, std::mt19937_64& rng) {
  Multiset<Permutation> s = random_symmetric(pool, extra, rng);
  for (const auto& g : gens.gens) {
    s.add(g);
    s.add(g.inverse());
  }
  return s;
}

struct Instance {
  std::shared_ptr<const Bsgs> g, n;
  PermQuotientModel top, lower, upper;
  Certified<Permutation> a, b;
};

// Random expanding A for N and B for G/N.
Instance make_instance(const NormalPair& p, std::mt19937_64& rng) {
  auto g = bsgs_of(p.g);
  auto n = bsgs_of(p.n);
  PermQuotientModel top = whole_model(g), lower = whole_model(n);
  PermQuotientModel upper(QuotientContext::from_verified(g, n));
  auto npool = n->enumerate(5000), gpool = g->enumerate(5000);
  auto pick = [&](const PermQuotientModel& m, const GeneratorList& gens, const std::vector<Permutation>& pool) {
    for (int attempt = 0;; ++attempt) {
      Multiset<Permutation> s = generators_plus_random(gens, pool, 1 + rng() % 4, rng);
      if (attempt > 10) s.add(m.identity(), 2);
      Certified<Permutation> c = measured(m, s);
      if (c.bound < 1 - 1e-9) return c;
    }
  };
  Certified<Permutation> a = n->order() == 1 ? trivial_certified(lower.identity()) : pick(lower, p.n, npool);
  Certified<Permutation> b = pick(upper, p.g, gpool);
  return {g, n, top, lower, upper, a, b};
}

double lambda_of(const PermQuotientModel& m, const Multiset<Permutation>& s) {
  return m.measure(s, {}).lambda2;
}

}  // namespace

TEST(Balance, EqualSizesUnchanged) {
  auto g = bsgs_of(symmetric(4));
  auto m = whole_model(g);
  std::mt19937_64 rng(1);
  Multiset<Permutation> s = generators_plus_random(symmetric(4), g->enumerate(24), 1, rng);
  while (!is_power_of_two(s.total())) s.add(m.identity());
  Certified<Permutation> a = measured(m, s);
  ASSERT_TRUE(is_power_of_two(a.set.total()));
  auto [x, y] = balance(m, a, a);
  EXPECT_EQ(x.set, a.set);
  EXPECT_EQ(y.set, a.set);
  EXPECT_DOUBLE_EQ(effective_bound(x), effective_bound(a));
}

TEST(Balance, ThreeAndFiveGoToEight) {
  auto g = bsgs_of(cyclic(6));
  auto m = whole_model(g);
  Permutation x = g->generators()[0];
  Certified<Permutation> a, b;
  a.set.add(m.identity());
  a.set.add(x);
  a.set.add(x.inverse());
  b.set = a.set;
  b.set.add(x.pow(2));
  b.set.add(x.pow(4));
  a = measured(m, a.set);
  b = measured(m, b.set);
  auto [ab, bb] = balance(m, a, b);
  EXPECT_EQ(ab.set.total(), 8u);
  EXPECT_EQ(bb.set.total(), 8u);
  // 3 -> 2 copies + 2 loops, 5 -> 1 copy + 3 loops.
  EXPECT_EQ(ab.set.count(x), 2u);
  EXPECT_EQ(ab.set.count(m.identity()), 4u);
  EXPECT_EQ(bb.set.count(m.identity()), 4u);
  EXPECT_NEAR(ab.bound, (6 * a.bound + 2) / 8, 1e-15);
  EXPECT_NEAR(bb.bound, (5 * b.bound + 3) / 8, 1e-15);
  EXPECT_TRUE(is_exact_symmetric(m, ab.set));
  EXPECT_TRUE(is_exact_symmetric(m, bb.set));
  // The padded bound is a valid bound.
  EXPECT_LE(lambda_of(m, ab.set), ab.bound + 1e-9);
  EXPECT_LE(lambda_of(m, bb.set), bb.bound + 1e-9);
}

TEST(Balance, SingleInvolution) {
  auto g = bsgs_of(cyclic(2));
  auto m = whole_model(g);
  Certified<Permutation> a;
  a.set.add(g->generators()[0]);
  a.bound = 0.9;
  auto [x, y] = balance(m, a, a);
  EXPECT_EQ(x.set.total(), 1u);
  BalanceOptions opt;
  opt.min_replication = 2;
  auto [x2, y2] = balance(m, a, a, opt);
  EXPECT_EQ(x2.set.total(), 2u);
  EXPECT_EQ(x2.set.count(g->generators()[0]), 2u);
  EXPECT_DOUBLE_EQ(x2.bound, 0.9);
}

TEST(Balance, RejectsAsymmetric) {
  auto g = bsgs_of(cyclic(5));
  auto m = whole_model(g);
  Certified<Permutation> a;
  a.set.add(g->generators()[0]);
  EXPECT_THROW(balance(m, a, a), NotSymmetricError);
}

TEST(Combine, BoundExamples) {
  EXPECT_DOUBLE_EQ(combine_bound(0.25, 0.25, 8, 8), 5.0 / 8);
  EXPECT_DOUBLE_EQ(combine_bound(0.25, 0.25, 4, 2), 5.0 / 6);
  EXPECT_DOUBLE_EQ(combine_bound(0.1, 0.25, 4, 2), 5.0 / 6);
}

TEST(Combine, TrivialQuotientPassesThrough) {
  auto g = bsgs_of(symmetric(4));
  auto top = whole_model(g);
  std::mt19937_64 rng(3);
  Certified<Permutation> a = measured(top, generators_plus_random(symmetric(4), g->enumerate(24), 2, rng));
  Certified<Permutation> b = trivial_certified(top.identity());
  Certified<Permutation> out = combine(top, 24, 1, a, b);
  EXPECT_EQ(out.set, pair_canonicalize(top, a.set));
  EXPECT_DOUBLE_EQ(effective_bound(out), effective_bound(a));
}

TEST(Combine, RejectsUncertified) {
  auto g = bsgs_of(symmetric(4));
  auto n = bsgs_of(alternating(4));
  auto top = whole_model(g);
  Certified<Permutation> a, b;
  a.set.add(top.identity());
  a.bound = 1;
  b = a;
  b.bound = 0.5;
  EXPECT_THROW(combine(top, 12, 2, a, b), CertificationError);
}

TEST(Combine, RandomSuiteBoundHolds) {
  std::mt19937_64 rng(20240501);
  int checked = 0;
  for (const auto& p : normal_pairs()) {
    for (int rep = 0; rep < 8; ++rep) {
      Instance in = make_instance(p, rng);
      CombineOptions co;
      co.measure = false;
      auto out = combine(in.top, in.n->order(), in.g->order() / in.n->order(), in.a, in.b, co);
      double lam = std::max(in.a.bound, in.b.bound);
      double bound = combine_bound(lam, lam, in.a.set.total(), in.b.set.total());
      EXPECT_DOUBLE_EQ(out.bound, bound) << p.name;
      EXPECT_TRUE(is_exact_symmetric(in.top, out.set)) << p.name;
      EXPECT_EQ(out.set.total(), in.a.set.total() + in.b.set.total());
      EXPECT_LE(lambda_of(in.top, out.set), bound + 1e-9) << p.name;
      ++checked;
    }
  }
  EXPECT_GE(checked, 100);
}

// Functions constant on N-cosets (U) and summing to zero on each (W).
TEST(Combine, UWDecomposition) {
  std::mt19937_64 rng(77);
  for (const auto& p : normal_pairs()) {
    Instance in = make_instance(p, rng);
    if (in.g->order() > 500) continue;
    auto reps = in.top.context().coset_representatives(1000);
    const std::size_t n = reps.size();
    Eigen::MatrixXd pu = Eigen::MatrixXd::Zero(n, n);
    double nn = static_cast<double>(in.n->order());
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (in.upper.context().same_coset(reps[x], reps[y])) pu(x, y) = 1 / nn;
    Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd j = Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
    Eigen::MatrixXd pw = id - pu;
    ASSERT_LT((pu * pu - pu).norm(), 1e-9);

    Eigen::MatrixXd ma = dense_operator(in.top.cayley_operator(in.a.set));
    Eigen::MatrixXd mb = dense_operator(in.top.cayley_operator(in.b.set));
    for (const Eigen::MatrixXd* m : {&ma, &mb}) {
      EXPECT_LT((pw * (*m) * pu).norm(), 1e-9) << p.name;
      EXPECT_LT((pu * (*m) * pw).norm(), 1e-9) << p.name;
    }
    // A lies in N, so M_A fixes U pointwise.
    EXPECT_LT((ma * pu - pu).norm(), 1e-9) << p.name;
    double lam = std::max(in.a.bound, in.b.bound);
    EXPECT_LE(max_abs_eig(ma * pu), 1 + 1e-9);
    EXPECT_LE(max_abs_eig(mb * pw), 1 + 1e-9);
    EXPECT_LE(max_abs_eig(mb * (pu - j)), in.b.bound + 1e-9) << p.name;
    EXPECT_LE(max_abs_eig(ma * pw), in.a.bound + 1e-9) << p.name;

    // The same on random vectors.
    for (int t = 0; t < 5; ++t) {
      Eigen::VectorXd v = Eigen::VectorXd::Random(static_cast<Eigen::Index>(n));
      Eigen::VectorXd u = (pu - j) * v, w = pw * v;
      EXPECT_LE((mb * u).norm(), lam * u.norm() + 1e-9);
      EXPECT_LE((ma * w).norm(), lam * w.norm() + 1e-9);
      EXPECT_LE((ma * u).norm(), u.norm() + 1e-9);
      EXPECT_LE((mb * w).norm(), w.norm() + 1e-9);
    }
  }
}

TEST(DerandomizedSquare, FastMatchesEnumerated) {
  std::mt19937_64 rng(5);
  AuxOptions ao;
  ao.full_group_vertices = 2;
  for (const auto& e : catalog()) {
    if (e.order > 200 || e.order < 2) continue;
    auto g = bsgs_of(e.gens);
    auto m = whole_model(g);
    auto pool = g->enumerate(200);
    for (std::size_t pairs : {2u, 8u, 32u}) {
      Multiset<Permutation> u = random_symmetric(pool, pairs, rng, 1);
      for (double target : {0.6, 0.3}) {
        AuxExpander h = aux_family(u.total(), target, ao);
        auto fast = derandomized_square_raw(m, u, h);
        auto slow = derandomized_square_enumerated(m, u, h);
        EXPECT_EQ(fast, slow) << e.name;
        EXPECT_EQ(fast.total(), 2 * h.degree() * u.total());
        EXPECT_TRUE(is_exact_symmetric(m, fast));
      }
    }
  }
}

TEST(DerandomizedSquare, SpectralBoundOnRandomInstances) {
  std::mt19937_64 rng(11);
  int checked = 0;
  std::vector<CatalogEntry> groups;
  for (const auto& e : catalog())
    if (e.order >= 6 && e.order <= 720) groups.push_back(e);
  ASSERT_FALSE(groups.empty());
  while (checked < 50) {
    const auto& e = groups[rng() % groups.size()];
    auto g = bsgs_of(e.gens);
    auto m = whole_model(g);
    auto pool = g->enumerate(1000);
    Multiset<Permutation> u = random_symmetric(pool, std::size_t{1} << (1 + rng() % 6), rng, 1);
    double lam = lambda_of(m, u);
    if (lam > 1 - 1e-9) continue;
    AuxOptions ao;
    ao.full_group_vertices = 1 + rng() % 4;
    ao.seed = rng();
    AuxExpander h = aux_family(u.total(), 0.2 + 0.5 * static_cast<double>(rng() % 100) / 100, ao);
    Certified<Permutation> cu;
    cu.set = u;
    cu.bound = lam;
    cu.measured = lam;
    cu.exact = true;
    Certified<Permutation> out = derandomized_square(m, cu, h);
    EXPECT_EQ(out.set.total(), 2 * h.degree() * u.total());
    EXPECT_TRUE(is_exact_symmetric(m, out.set));
    double got = lambda_of(m, out.set);
    EXPECT_LE(got, lam * lam + h.mu() + 1e-9) << e.name;
    EXPECT_LE(got, rv_composition(lam, h.mu()) + 1e-9) << e.name;
    EXPECT_NEAR(out.bound, std::min(1.0, lam * lam + h.mu()), 1e-15);
    ++checked;
  }
}

TEST(DerandomizedSquare, BoundExamples) {
  auto g = bsgs_of(cyclic(5));
  auto m = whole_model(g);
  Certified<Permutation> u;
  Permutation x = g->generators()[0];
  u.set.add(x);
  u.set.add(x.inverse());
  u.bound = 0.75;
  AuxExpander::Chunk c;
  c.bits = 1;
  c.gens = {0, 1};
  c.mu = 0.01;
  EXPECT_NEAR(derandomized_square(m, u, AuxExpander({c})).bound, 0.5725, 1e-15);
  u.bound = 0;
  EXPECT_NEAR(derandomized_square(m, u, AuxExpander({c})).bound, 0.01, 1e-15);
}

TEST(DerandomizedSquare, Z7WithFourCycle) {
  auto g = bsgs_of(cyclic(7));
  auto m = whole_model(g);
  Permutation x = g->generators()[0];
  Multiset<Permutation> u;
  u.add(x);
  u.add(x.inverse());
  u.add(x.pow(2));
  u.add(x.pow(5));
  double lam = lambda_of(m, u);
  double oracle = 0;
  for (int k = 1; k < 7; ++k) {
    double t = (std::cos(2 * M_PI * k / 7) + std::cos(4 * M_PI * k / 7)) / 2;
    oracle = std::max(oracle, std::abs(t));
  }
  EXPECT_NEAR(lam, oracle, 1e-9);

  // The 4-cycle as Cay(Z_2^2, {01, 10}).
  AuxExpander::Chunk c4{2, {1, 2}, 0};
  c4.mu = measure_aux_chunk(2, c4.gens);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(4, 4);
  for (int v = 0; v < 4; ++v)
    for (auto s : c4.gens) a(v, v ^ static_cast<int>(s)) += 0.5;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  double mu_dense = std::max(std::abs(es.eigenvalues()(0)), std::abs(es.eigenvalues()(2)));
  EXPECT_NEAR(c4.mu, mu_dense, 1e-12);
  AuxExpander h({c4});
  auto out = derandomized_square_raw(m, u, h);
  EXPECT_EQ(out.total(), 16u);
  EXPECT_LE(lambda_of(m, out), lam * lam + h.mu() + 1e-9);

  // With the complete aux graph the bound is lambda^2.
  AuxExpander full({AuxExpander::Chunk{2, {0, 1, 2, 3}, 0}});
  auto sq = derandomized_square_raw(m, u, full);
  EXPECT_LE(lambda_of(m, sq), lam * lam + 1e-9);
}

TEST(DerandomizedSquare, SizeMismatch) {
  auto g = bsgs_of(cyclic(5));
  auto m = whole_model(g);
  Multiset<Permutation> u;
  u.add(g->generators()[0]);
  u.add(g->generators()[0].inverse());
  EXPECT_THROW(derandomized_square_raw(m, u, aux_family(4, 0.5)), InputError);
}

TEST(Reduce, AnalyticRounds) {
  EXPECT_EQ(analytic_rounds(0.75, 0.01, 0.25), 3u);
  EXPECT_EQ(analytic_rounds(0.9, 0.01, 0.25), 4u);
  EXPECT_EQ(analytic_rounds(0.2, 0.01, 0.25), 0u);
  EXPECT_THROW(analytic_rounds(0.9, 0.3, 0.25), CertificationError);
}

TEST(Reduce, AlreadyBelowTarget) {
  auto g = bsgs_of(cyclic(3));
  auto m = whole_model(g);
  Multiset<Permutation> s;
  for (const auto& x : g->enumerate(3)) s.add(x);
  Certified<Permutation> c = measured(m, s);
  AuxFamily fam;
  auto out = reduce_to(m, c, {}, fam);
  EXPECT_EQ(out.set, s);
}

TEST(Reduce, BipartiteRejected) {
  auto g = bsgs_of(cyclic(2));
  auto m = whole_model(g);
  Certified<Permutation> c;
  c.set.add(g->generators()[0], 2);
  c.bound = 1;
  AuxFamily fam;
  EXPECT_THROW(reduce_to(m, c, {}, fam), CertificationError);
}

TEST(Reduce, ReachesQuarterOnCatalog) {
  std::mt19937_64 rng(9);
  for (const auto& e : catalog()) {
    if (e.order < 3 || e.order > 400) continue;
    auto g = bsgs_of(e.gens);
    auto m = whole_model(g);
    Multiset<Permutation> s = generators_plus_random(e.gens, g->enumerate(400), 1, rng);
    s.add(m.identity(), 2);
    Certified<Permutation> c = measured(m, s);
    ASSERT_LT(c.bound, 1) << e.name;
    for (BoundRule rule : {BoundRule::Additive, BoundRule::RV}) {
      // The additive rule needs small aux mu near lambda = 1, hence large degrees.
      if (rule == BoundRule::Additive && e.order > 100) continue;
      AuxFamily fam;
      ReduceOptions ro;
      ro.rule = rule;
      PipelineLog log;
      ro.log = &log;
      // Faithful sizes on small groups; compaction above.
      if (e.order > 60) ro.compact_above = Count{1} << 20;
      auto out = reduce_to(m, c, ro, fam);
      EXPECT_LE(out.bound, 1.0);
      EXPECT_LE(effective_bound(out), 0.25 + 1e-9) << e.name;
      EXPECT_LE(lambda_of(m, out.set), 0.25 + 1e-9) << e.name;
      EXPECT_TRUE(is_exact_symmetric(m, out.set));
      // Certified bounds alone must also be valid.
      for (const auto& entry : log)
        if (entry.measured >= 0) EXPECT_LE(entry.measured, entry.bound + 1e-9) << e.name;
    }
  }
}

TEST(Reduce, FixedMuMeasuredRoundsWithinAnalytic) {
  auto g = bsgs_of(cyclic(8));
  auto m = whole_model(g);
  Permutation x = g->generators()[0];
  Multiset<Permutation> s;
  s.add(x);
  s.add(x.inverse());
  s.add(m.identity(), 2);
  Certified<Permutation> c = measured(m, s);
  ReduceOptions ro;
  ro.mu = 0.01;
  // Index sets stay at most 2^10, where the complete aux graph is used.
  ro.compact_above = 1024;
  ro.compact_to = 512;
  PipelineLog log;
  ro.log = &log;
  AuxFamily fam;
  auto out = reduce_to(m, c, ro, fam);
  EXPECT_LE(lambda_of(m, out.set), 0.25 + 1e-9);
  std::size_t rounds = 0;
  for (const auto& e : log) rounds += e.stage == "square";
  EXPECT_LE(rounds, analytic_rounds(c.bound, 0.01, 0.25));
}

TEST(Aux, Examples) {
  AuxExpander h2 = aux_family(2, 0.9);
  EXPECT_EQ(h2.vertex_count(), 2u);
  EXPECT_LE(h2.mu(), 0.9);
  AuxExpander h16 = aux_family(16, 0.5);
  EXPECT_EQ(h16.vertex_count(), 16u);
  EXPECT_LE(h16.mu(), 0.5);
  AuxExpander h1k = aux_family(1024, 0.01);
  EXPECT_EQ(h1k.vertex_count(), 1024u);
  EXPECT_LE(h1k.mu(), 0.01);
  EXPECT_THROW(aux_family(12, 0.5), InputError);
}

// Direct character sums over every chi.
double brute_mu(const AuxExpander& h) {
  double best = 0;
  for (std::uint64_t chi = 1; chi < h.vertex_count(); ++chi) {
    double s = 0;
    for (std::uint64_t l = 0; l < h.degree(); ++l) s += (std::popcount(chi & h.gen(l)) & 1) ? -1 : 1;
    best = std::max(best, std::abs(s) / static_cast<double>(h.degree()));
  }
  return best;
}

TEST(Aux, CertifiedMuMatchesCharacterSums) {
  for (auto [n, t] : std::vector<std::pair<std::uint64_t, double>>{{128, 0.5}, {256, 0.3}, {1024, 0.2}, {4096, 0.25}}) {
    AuxOptions ao;
    ao.full_group_vertices = 1;
    AuxExpander h = aux_family(n, t, ao);
    EXPECT_LE(h.mu(), t);
    EXPECT_TRUE(is_power_of_two(h.degree()));
    EXPECT_NEAR(h.mu(), brute_mu(h), 1e-12);
  }
}

TEST(Aux, TensorChunks) {
  AuxOptions ao;
  ao.full_group_vertices = 4;
  ao.max_chunk_bits = 4;
  AuxExpander h = aux_family(256, 0.6, ao);
  EXPECT_EQ(h.chunks().size(), 2u);
  EXPECT_LE(h.mu(), 0.6);
  EXPECT_NEAR(h.mu(), brute_mu(h), 1e-12);
}

TEST(Aux, ConsistentLabelling) {
  AuxOptions ao;
  ao.full_group_vertices = 1;
  AuxExpander h = aux_family(512, 0.3, ao);
  for (std::uint64_t v = 0; v < h.vertex_count(); v += 7) {
    for (std::uint64_t l = 0; l < h.degree(); ++l) {
      auto [w, back] = h.rotation(v, l);
      EXPECT_EQ(h.rotation(w, back), std::make_pair(v, l));
    }
  }
}

TEST(Aux, InfeasibleReportsBest) {
  AuxOptions ao;
  ao.full_group_vertices = 1;
  ao.max_degree = 4;
  try {
    aux_family(1024, 0.01, ao);
    FAIL();
  } catch (const CertificationError& e) {
    EXPECT_NE(std::string(e.what()).find("best mu"), std::string::npos);
  }
}

namespace {

std::vector<Certified<Permutation>> quotient_sets(const PermChain& chain) {
  std::vector<Certified<Permutation>> sets;
  for (std::size_t i = 0; i < chain.length(); ++i) sets.push_back(all_cosets(chain.model(i, i + 1)));
  return sets;
}

}  // namespace

TEST(Fold, LengthOneUnchanged) {
  PermChain chain = PermChain::from_series(derived_series(cyclic(6)));
  ASSERT_EQ(chain.length(), 1u);
  auto sets = quotient_sets(chain);
  AuxFamily fam;
  auto out = fold_series(chain, sets, {}, fam);
  EXPECT_EQ(out.set, sets[0].set);
}

TEST(Fold, DerivedSeriesFolds) {
  for (const auto& gens : {symmetric(3), symmetric(4), sylow2_s8(), s3_times_s4(), z3_wr_z2()}) {
    PermChain chain = PermChain::from_series(derived_series(gens));
    auto sets = quotient_sets(chain);
    AuxFamily fam;
    PipelineLog log;
    FoldOptions fo;
    fo.log = &log;
    fo.reduce.compact_above = Count{1} << 20;
    auto out = fold_series(chain, sets, fo, fam);
    auto m = whole_model(chain.group_ptr(0));
    EXPECT_TRUE(is_exact_symmetric(m, out.set));
    EXPECT_LE(effective_bound(out), 0.25 + 1e-9);
    EXPECT_LE(lambda_of(m, out.set), 0.25 + 1e-9);
  }
}

TEST(Fold, UncertifiedInputRejected) {
  PermChain chain = PermChain::from_series(derived_series(symmetric(3)));
  auto sets = quotient_sets(chain);
  sets[0].bound = 1;
  sets[0].measured.reset();
  AuxFamily fam;
  EXPECT_THROW(fold_series(chain, sets, {}, fam), CertificationError);
}

TEST(Compact, PowerOfTwoSymmetricFullSupport) {
  auto g = bsgs_of(symmetric(4));
  auto m = whole_model(g);
  std::mt19937_64 rng(21);
  auto pool = g->enumerate(24);
  for (int rep = 0; rep < 20; ++rep) {
    Multiset<Permutation> s = random_symmetric(pool, 10, rng, 1000);
    Multiset<Permutation> c = compact(m, s, 256);
    EXPECT_TRUE(is_power_of_two(c.total()));
    EXPECT_TRUE(is_exact_symmetric(m, c));
    for (const auto& [x, k] : s) EXPECT_GE(c.count(x), 1u);
    if (s.total() <= 256) EXPECT_EQ(c, s);
  }
}
