#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <set>

#include "cayex/abelian.hpp"
#include "cayex/error.hpp"
#include "cayex/finite_field.hpp"
#include "support/catalog.hpp"
#include "support/instances.hpp"

using namespace cayex;
using namespace cayex::testing;

namespace {

// max over nontrivial characters of |E chi(s)|, straight from the definition.
double brute_bias(const std::vector<std::uint32_t>& q, const Multiset<AbelianVector>& s) {
  std::uint64_t order = 1;
  for (auto m : q) order *= m;
  double best = 0;
  for (std::uint64_t idx = 1; idx < order; ++idx) {
    AbelianVector chi = decode(idx, q);
    std::complex<double> sum = 0;
    for (const auto& [x, c] : s) {
      double phase = 0;
      for (std::size_t t = 0; t < q.size(); ++t) phase += double(chi[t]) * double(x[t]) / double(q[t]);
      sum += double(c) * std::polar(1.0, 2 * std::numbers::pi * phase);
    }
    best = std::max(best, std::abs(sum) / double(s.total()));
  }
  return best;
}

bool symmetric_in(const std::vector<std::uint32_t>& q, const Multiset<AbelianVector>& s) {
  for (const auto& [x, c] : s) {
    AbelianVector y(x.size());
    for (std::size_t t = 0; t < x.size(); ++t) y[t] = (q[t] - x[t]) % q[t];
    if (s.count(y) != c) return false;
  }
  return true;
}

// Second largest |eigenvalue| of the quotient Cayley graph by a dense solve.
double dense_lambda2(const PermQuotientModel& m, const Multiset<Permutation>& s) {
  Eigen::MatrixXd a = dense_operator(m.cayley_operator(s));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es((a + a.transpose()) / 2, Eigen::EigenvaluesOnly);
  std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(ev.begin(), ev.end());
  ev.pop_back();  // the trivial eigenvalue 1
  double best = 0;
  for (double x : ev) best = std::max(best, std::abs(x));
  return best;
}

struct AbelianPair {
  std::string name;
  GeneratorList h, n;
};

std::vector<AbelianPair> abelian_pairs() {
  return {
      {"S4/A4", symmetric(4), alternating(4)},
      {"D8/Z4", dihedral(4), gl(4, {"(1 2 3 4)"})},
      {"D8/Z2", dihedral(4), gl(4, {"(1 3)(2 4)"})},
      {"D10/Z5", dihedral(5), gl(5, {"(1 2 3 4 5)"})},
      {"Z12/1", cyclic(12), {12, {}}},
      {"Z12/Z6", cyclic(12), {12, {cyc(ncycle(12), 12).pow(2)}}},
      {"Z2^3/1", z2_cubed(), {6, {}}},
      {"Syl2/derived", sylow2_s8(), commutator_subgroup(sylow2_s8())},
      {"Z3wrZ2/Z3^2", z3_wr_z2(), gl(6, {"(1 2 3)", "(4 5 6)"})},
      {"S4xZ2/A4", gl(6, {"(1 2 3 4)", "(1 2)", "(5 6)"}), gl(6, {"(1 2 3)", "(2 3 4)"})},
      {"S3xS4/A3xA4", s3_times_s4(), gl(7, {"(1 2 3)", "(4 5 6)", "(5 6 7)"})},
  };
}

}  // namespace

TEST(PrimesAndExponent, Examples) {
  auto a = primes_and_exponent(10);
  EXPECT_EQ(a.primes, (std::vector<std::uint32_t>{2, 3, 5, 7}));
  EXPECT_EQ(a.e, 4u);
  auto b = primes_and_exponent(2);
  EXPECT_EQ(b.primes, (std::vector<std::uint32_t>{2}));
  EXPECT_EQ(b.e, 1u);
  auto c = primes_and_exponent(8);
  EXPECT_EQ(c.primes, (std::vector<std::uint32_t>{2, 3, 5, 7}));
  EXPECT_EQ(c.e, 3u);
  EXPECT_THROW(primes_and_exponent(1), InputError);
}

TEST(PrimesAndExponent, MatchesTrialDivisionAndLog) {
  for (std::uint64_t n = 2; n <= 200; ++n) {
    auto r = primes_and_exponent(n);
    std::vector<std::uint32_t> expect;
    for (std::uint32_t p = 2; p <= n; ++p) {
      bool prime = true;
      for (std::uint32_t d = 2; d * d <= p; ++d) prime = prime && p % d != 0;
      if (prime) expect.push_back(p);
    }
    EXPECT_EQ(r.primes, expect);
    EXPECT_EQ(r.e, static_cast<std::uint32_t>(std::ceil(std::log2(double(n)) - 1e-12)));
  }
}

TEST(CyclicExpander, TrivialAndTwo) {
  auto one = cyclic_expander(1, 0.25);
  EXPECT_EQ(one.set.total(), 1u);
  EXPECT_EQ(one.bound, 0);
  auto two = cyclic_expander(2, 0.5);
  EXPECT_TRUE(symmetric_in({2}, two.set));
  double c0 = double(two.set.count({0})), c1 = double(two.set.count({1}));
  EXPECT_LE(std::abs(c0 - c1) / (c0 + c1), 0.5);
  EXPECT_NEAR(brute_bias({2}, two.set), *two.measured, 1e-9);
}

TEST(CyclicExpander, Z210) {
  auto s = cyclic_expander(210, 0.25);
  EXPECT_TRUE(symmetric_in({210}, s.set));
  double b = brute_bias({210}, s.set);
  EXPECT_LE(b, 0.25 + 1e-9);
  EXPECT_NEAR(b, *s.measured, 1e-9);
  double ratio = double(s.set.total()) / std::log2(210.0);
  RecordProperty("size", std::to_string(s.set.total()));
  RecordProperty("size_over_log2_t", std::to_string(ratio));
  EXPECT_LE(ratio, 64);
}

TEST(CyclicExpander, RandomOrdersCertified) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    std::uint64_t t = 3 + rng() % 600;
    double lambda = trial % 2 ? 0.25 : 0.125;
    auto s = cyclic_expander(t, lambda);
    EXPECT_TRUE(symmetric_in({static_cast<std::uint32_t>(t)}, s.set)) << t;
    EXPECT_LE(brute_bias({static_cast<std::uint32_t>(t)}, s.set), lambda + 1e-9) << t;
  }
}

TEST(CyclicExpander, Deterministic) {
  EXPECT_EQ(cyclic_expander(997, 0.2).set, cyclic_expander(997, 0.2).set);
}

TEST(CyclicExpander, RejectsHugeOrders) { EXPECT_THROW(cyclic_expander(3000000, 0.25), CapacityError); }

TEST(KSeries, OrderAccounting) {
  std::vector<std::uint32_t> primes{2, 3};
  std::uint32_t e = 3, n = 2;
  AbelianChain k = k_series(primes, e, n);
  ASSERT_EQ(k.length(), e);
  for (std::uint32_t i = 0; i <= e; ++i) {
    GroupOrder expect = 1;
    for (auto p : primes) expect *= GroupOrder(ipow(p, (e - i) * n));
    EXPECT_TRUE(k.model(i, e).order() == expect) << i;
    if (i < e) EXPECT_TRUE(k.model(i, i + 1).order() == GroupOrder(ipow(2, n) * ipow(3, n)));
    if (i < e) EXPECT_EQ(k.model(i, i + 1).quotient_moduli(), (std::vector<std::uint32_t>{2, 2, 3, 3}));
  }
}

TEST(ProductBase, SinglePrimeSingleLevel) {
  AuxFamily fam;
  auto s = product_base_expander({2}, 1, 0.125, fam);
  auto c = cyclic_expander(2, 0.125);
  EXPECT_EQ(s.set, c.set);
}

TEST(ProductBase, TwoPrimesCertifiedExhaustively) {
  AuxFamily fam;
  auto s = product_base_expander({2, 3}, 2, 0.125, fam);
  auto q = block_moduli({2, 3}, 2);
  EXPECT_TRUE(symmetric_in(q, s.set));
  EXPECT_LE(brute_bias(q, s.set), 0.125 + 1e-9);
}

TEST(ProductBase, ThreePrimesOrder27000) {
  AuxFamily fam;
  auto s = product_base_expander({2, 3, 5}, 3, 0.125, fam);
  auto q = block_moduli({2, 3, 5}, 3);
  ASSERT_EQ(product_or_zero(q), 27000u);
  ASSERT_TRUE(s.measured && s.exact);
  EXPECT_LE(*s.measured, 0.125 + 1e-9);
  EXPECT_NEAR(abelian_bias(q, s.set).lambda2, *s.measured, 1e-9);
  // Independent check on a slice of characters.
  std::mt19937_64 rng(3);
  double best = 0;
  for (int i = 0; i < 200; ++i) {
    AbelianVector chi = decode(1 + rng() % 26999, q);
    std::complex<double> sum = 0;
    for (const auto& [x, c] : s.set) {
      double phase = 0;
      for (std::size_t t = 0; t < q.size(); ++t) phase += double(chi[t]) * x[t] / q[t];
      sum += double(c) * std::polar(1.0, 2 * std::numbers::pi * phase);
    }
    best = std::max(best, std::abs(sum) / double(s.set.total()));
  }
  EXPECT_LE(best, *s.measured + 1e-9);
}

TEST(FinalR, FourTwoThreeExhaustive) {
  AuxFamily fam;
  std::vector<std::uint32_t> primes{2, 3};
  auto degs = field_degrees(4, primes, 8);
  EXPECT_EQ(degs, (std::vector<std::uint32_t>{6, 4}));
  auto base = product_base_expander(primes, degs, 0.125, fam);
  EXPECT_EQ(product_or_zero(block_moduli(primes, degs)), 64u * 81u);
  auto r = final_R(4, primes, 8, base, degs);
  EXPECT_EQ(r.set.total(), 32 * base.set.total());
  auto q = block_moduli(primes, 4);
  EXPECT_EQ(product_or_zero(q), 1296u);
  EXPECT_TRUE(symmetric_in(q, r.set));
  double eps = effective_bound(base);
  double b = brute_bias(q, r.set);
  EXPECT_LE(b, 1.0 / 8 + eps + 1e-9);
  EXPECT_NEAR(b, *r.measured, 1e-9);
  // The trivial character sums to 1.
  double total = 0;
  for (const auto& [x, c] : r.set) total += double(c);
  EXPECT_EQ(total, double(r.set.total()));
}

TEST(FinalR, UniformRankTruncates) {
  // With every block of rank max m_i, psi drops the surplus coordinates.
  AuxFamily fam;
  std::vector<std::uint32_t> primes{2, 3};
  auto degs = field_degrees(1, primes, 8);
  ASSERT_EQ(degs, (std::vector<std::uint32_t>{4, 2}));
  auto base = product_base_expander(primes, 4, 0.125, fam);
  auto r = final_R(1, primes, 8, base, 4);
  EXPECT_EQ(r.set.total(), 8 * base.set.total());
  EXPECT_LE(brute_bias(block_moduli(primes, 1), r.set), 1.0 / 8 + effective_bound(base) + 1e-9);
}

TEST(FinalR, BiasBoundOnSmallInstances) {
  AuxFamily fam;
  for (auto [n, primes] : std::vector<std::pair<std::uint32_t, std::vector<std::uint32_t>>>{
           {1, {2}}, {2, {2}}, {3, {3}}, {2, {2, 3}}, {1, {2, 3, 5}}, {5, {2}}}) {
    auto degs = field_degrees(n, primes, 8);
    auto base = product_base_expander(primes, degs, 0.125, fam);
    auto r = final_R(n, primes, 8, base, degs);
    EXPECT_EQ(r.set.total(), 8u * n * base.set.total());
    EXPECT_LE(brute_bias(block_moduli(primes, n), r.set), 1.0 / 8 + effective_bound(base) + 1e-9) << n;
  }
}

TEST(FinalR, SizeIdentityLargeInstance) {
  std::vector<std::uint32_t> primes{2, 3, 5, 7, 11, 13};
  auto degs = field_degrees(16, primes, 8);
  EXPECT_EQ(degs, (std::vector<std::uint32_t>{8, 5, 4, 3, 3, 2}));
  std::uint32_t m = 8;
  // Only the structure is checked here, so the base need not expand.
  std::mt19937_64 rng(11);
  auto q = block_moduli(primes, m);
  Certified<AbelianVector> base;
  for (int i = 0; i < 20; ++i) {
    AbelianVector y(q.size()), z(q.size());
    for (std::size_t t = 0; t < q.size(); ++t) {
      y[t] = rng() % q[t];
      z[t] = (q[t] - y[t]) % q[t];
    }
    base.set.add(y);
    base.set.add(z);
  }
  base.bound = 0.125;
  auto r = final_R(16, primes, 8, base, m);
  EXPECT_EQ(r.set.total(), 8u * 16u * base.set.total());
  EXPECT_TRUE(symmetric_in(block_moduli(primes, 16), r.set));
  EXPECT_FALSE(r.measured.has_value());
  EXPECT_DOUBLE_EQ(r.bound, 0.25);
}

TEST(FinalR, Errors) {
  Certified<AbelianVector> base;
  base.set.add(AbelianVector(4, 0));
  base.bound = 0.125;
  EXPECT_THROW(final_R(4, {2}, 8, base, 4), InputError);  // needs m >= 6
  base.set = {};
  base.set.add(AbelianVector(6, 0));
  base.bound = 0.2;
  EXPECT_THROW(final_R(4, {2}, 8, base, 6), InputError);  // 1/8 + 0.2 > 1/4
}

TEST(FinalR, NonzeroPolynomialRootCount) {
  std::mt19937_64 rng(5);
  for (auto [n, p] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{4, 2}, {4, 3}, {6, 5}, {16, 2}, {9, 7}}) {
    std::uint32_t m = least_degree_exceeding(p, 8 * n);
    auto f = std::make_shared<const FieldSpec>(construct_field(p, m));
    std::vector<FieldElement> xs;
    for (std::uint32_t j = 0; j < 8 * n; ++j) xs.push_back(FieldElement::from_index(f, j));
    for (int trial = 0; trial < 1000; ++trial) {
      std::vector<std::uint32_t> beta(n);
      bool nonzero = false;
      for (auto& b : beta) {
        b = rng() % p;
        nonzero = nonzero || b != 0;
      }
      if (!nonzero) beta[rng() % n] = 1;
      std::uint32_t roots = 0;
      for (const auto& x : xs) {
        FieldElement v = FieldElement::zero(f), pw = FieldElement::one(f);
        for (std::uint32_t l = 0; l < n; ++l) {
          v = v + pw.scaled(beta[l]);
          pw = pw * x;
        }
        roots += v.is_zero();
      }
      EXPECT_LE(roots, n - 1);
    }
  }
}

TEST(Abelianization, Z6) {
  auto hom = build_abelianization(cyclic(6), {6, {}});
  ASSERT_EQ(hom.rank(), 1u);
  EXPECT_EQ(hom.orders[0], 6u);
  EXPECT_EQ(order_of(hom.y[0][0]), 2u);
  EXPECT_EQ(order_of(hom.y[0][1]), 3u);
  EXPECT_EQ(order_of(hom.y[0][2]), 1u);
  // phi is onto: the 8 * 27 * 125 domain hits all 6 elements.
  auto q = hom.domain_moduli();
  std::set<Permutation> image;
  for (std::uint32_t a = 0; a < q[0]; ++a)
    for (std::uint32_t b = 0; b < q[1]; ++b) image.insert(hom.apply({a, b, 0}));
  EXPECT_EQ(image.size(), 6u);
}

TEST(Abelianization, S4OverA4HitsOddCoset) {
  auto hom = build_abelianization(symmetric(4), alternating(4));
  ASSERT_GE(hom.rank(), 1u);
  bool odd = false, even = false;
  std::mt19937_64 rng(2);
  auto q = hom.domain_moduli();
  for (int t = 0; t < 200; ++t) {
    AbelianVector a(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) a[i] = rng() % q[i];
    Permutation x = hom.apply(a);
    bool in_a4 = hom.target->kernel().contains(x);
    (in_a4 ? even : odd) = true;
  }
  EXPECT_TRUE(odd && even);
  for (std::size_t i = 0; i < hom.rank(); ++i) EXPECT_EQ(hom.apply(hom.preimages[i]), hom.generators.gens[i]);
}

TEST(Abelianization, TrivialQuotient) {
  auto hom = build_abelianization(alternating(4), alternating(4));
  EXPECT_EQ(hom.rank(), 0u);
  EXPECT_TRUE(hom.apply({}).is_identity());
  EXPECT_EQ(hom.domain_shape().rank(), 0u);
}

TEST(Abelianization, NonAbelianNamesPair) {
  try {
    build_abelianization(symmetric(4), klein_four());
    FAIL() << "expected NotAbelianError";
  } catch (const NotAbelianError& e) {
    EXPECT_NE(std::string(e.what()).find("do not commute"), std::string::npos);
  }
  EXPECT_THROW(build_abelianization(symmetric(4), gl(4, {"(1 2)"})), NotNormalError);
}

TEST(Abelianization, HomomorphismAndOntoOnCatalog) {
  std::mt19937_64 rng(9);
  for (const auto& p : abelian_pairs()) {
    auto hom = build_abelianization(p.h, p.n);
    auto q = hom.domain_moduli();
    for (std::size_t i = 0; i < hom.rank(); ++i) {
      for (std::size_t j = 0; j < hom.pe.primes.size(); ++j) {
        EXPECT_EQ(order_of(hom.y[i][j]), ipow(hom.pe.primes[j], hom.exps[i][j])) << p.name;
        EXPECT_LE(hom.exps[i][j], hom.pe.e);
      }
      EXPECT_EQ(hom.apply(hom.preimages[i]), hom.generators.gens[i]) << p.name;
    }
    // Generators of the reduced list together with N give all of H.
    Bsgs all = hom.target->kernel();
    for (const auto& x : hom.generators.gens) all.extend(x);
    EXPECT_TRUE(all.order() == hom.target->parent().order()) << p.name;
    for (int t = 0; t < 1000 && hom.rank() > 0; ++t) {
      AbelianVector a(q.size()), b(q.size()), s(q.size());
      for (std::size_t i = 0; i < q.size(); ++i) {
        a[i] = rng() % q[i];
        b[i] = rng() % q[i];
        s[i] = (a[i] + b[i]) % q[i];
      }
      ASSERT_TRUE(hom.target->same_coset(hom.apply(a) * hom.apply(b), hom.apply(s))) << p.name;
    }
  }
}

TEST(HomImage, IdentityUnchanged) {
  auto src = AbelianQuotientModel::whole({12});
  auto s = cyclic_expander(12, 0.25);
  auto img = hom_image(src, s, src, [](const AbelianVector& a) { return a; });
  EXPECT_EQ(img.set, s.set);
  EXPECT_NEAR(*img.measured, *s.measured, 1e-12);
}

TEST(HomImage, Z4ToZ2) {
  auto src = AbelianQuotientModel::whole({4});
  auto dst = AbelianQuotientModel::whole({2});
  for (double lambda : {0.5, 0.25, 0.1}) {
    auto s = cyclic_expander(4, lambda);
    auto img = hom_image(src, s, dst, [](const AbelianVector& a) { return AbelianVector{a[0] % 2}; });
    EXPECT_EQ(img.set.total(), s.set.total());
    EXPECT_LE(brute_bias({2}, img.set), brute_bias({4}, s.set) + 1e-9);
  }
}

TEST(HomImage, NotOntoDetected) {
  auto src = AbelianQuotientModel::whole({4});
  auto dst = AbelianQuotientModel::whole({2, 2});
  auto s = cyclic_expander(4, 0.25);
  EXPECT_THROW(hom_image(src, s, dst, [](const AbelianVector& a) { return AbelianVector{a[0] % 2, 0}; }),
               CertificationError);
}

TEST(HomImage, AbelianizationImageOfFinalR) {
  AuxFamily fam;
  for (const auto& p : abelian_pairs()) {
    auto hom = build_abelianization(p.h, p.n);
    if (hom.rank() == 0 || hom.rank() > 4) continue;
    std::vector<std::uint32_t> primes;
    for (std::size_t j = 0; j < hom.pe.primes.size(); ++j)
      if (hom.target->order() % hom.pe.primes[j] == 0) primes.push_back(hom.pe.primes[j]);
    std::uint32_t l = static_cast<std::uint32_t>(hom.rank());
    auto degs = field_degrees(l, primes, 8);
    auto base = product_base_expander(primes, degs, 0.125, fam);
    auto r = final_R(l, primes, 8, base, degs);
    // a -> prod y_ij^{a_ij} is a homomorphism from prod Z_p^l onto H / N<y_ij^p>.
    auto src = AbelianQuotientModel::whole(block_moduli(primes, l));
    std::vector<std::size_t> idx;
    for (auto pr : primes)
      idx.push_back(std::find(hom.pe.primes.begin(), hom.pe.primes.end(), pr) - hom.pe.primes.begin());
    Bsgs low = hom.target->kernel();
    for (std::size_t i = 0; i < l; ++i)
      for (std::size_t jj = 0; jj < primes.size(); ++jj) low.extend(hom.y[i][idx[jj]].pow(primes[jj]));
    PermQuotientModel top(QuotientContext::from_verified(hom.target->parent_ptr(),
                                                         std::make_shared<const Bsgs>(std::move(low))));
    if (top.order() > 2000) continue;
    auto phi = [&](const AbelianVector& a) {
      Permutation x(p.h.degree);
      for (std::size_t jj = 0; jj < primes.size(); ++jj)
        for (std::size_t i = 0; i < l; ++i) x = x * hom.y[i][idx[jj]].pow(a[jj * l + i]);
      return x;
    };
    auto img = hom_image(src, r, top, phi);
    ASSERT_TRUE(img.measured.has_value()) << p.name;
    EXPECT_LE(dense_lambda2(top, img.set), effective_bound(r) + 1e-9) << p.name;
  }
}

TEST(AbelianQuotient, S4OverA4) {
  AuxFamily fam;
  auto s = abelian_quotient_expander(symmetric(4), alternating(4), fam);
  PermQuotientModel m(QuotientContext::make(symmetric(4), alternating(4)));
  EXPECT_LE(dense_lambda2(m, s.set), 0.25 + 1e-9);
  EXPECT_TRUE(is_exact_symmetric(m, s.set));
}

TEST(AbelianQuotient, Z12ByDft) {
  AuxFamily fam;
  auto s = abelian_quotient_expander(cyclic(12), {12, {}}, fam);
  Permutation g = cyclic(12).gens[0];
  Multiset<AbelianVector> logs;
  for (const auto& [x, c] : s.set) {
    std::uint32_t k = 0;
    while (!(g.pow(k) == x)) ++k;
    logs.add({k}, c);
  }
  EXPECT_LE(brute_bias({12}, logs), 0.25 + 1e-9);
}

TEST(AbelianQuotient, TrivialQuotient) {
  AuxFamily fam;
  auto s = abelian_quotient_expander(alternating(4), alternating(4), fam);
  EXPECT_EQ(s.set.total(), 1u);
  EXPECT_TRUE(s.set.smallest().is_identity());
}

TEST(AbelianQuotient, Catalog) {
  AuxFamily fam;
  for (const auto& p : abelian_pairs()) {
    PipelineLog log;
    AbelianPipelineOptions opt;
    opt.build.log = &log;
    auto s = abelian_quotient_expander(p.h, p.n, fam, opt);
    PermQuotientModel m(QuotientContext::make(p.h, p.n));
    Bsgs h = Bsgs::build(p.h);
    for (const auto& [x, c] : s.set) ASSERT_TRUE(h.contains(x)) << p.name;
    EXPECT_TRUE(is_exact_symmetric(m, s.set)) << p.name;
    EXPECT_LE(dense_lambda2(m, s.set), 0.25 + 1e-9) << p.name;
  }
}

TEST(AbelianQuotient, NonAbelianRejected) {
  AuxFamily fam;
  EXPECT_THROW(abelian_quotient_expander(symmetric(4), klein_four(), fam), NotAbelianError);
}
