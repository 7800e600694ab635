#include <gtest/gtest.h>

#include <random>

#include "cayex/error.hpp"
#include "cayex/multiset_io.hpp"

using namespace cayex;

TEST(PermMultisetIo, RoundTrip) {
  std::mt19937_64 rng(3);
  for (std::size_t n : {1u, 2u, 5u, 9u}) {
    Multiset<Permutation> s;
    for (int k = 0; k < 20; ++k) {
      std::vector<Point> img(n);
      for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<Point>(i);
      std::shuffle(img.begin(), img.end(), rng);
      s.add(Permutation(img), 1 + rng() % 1000000007ULL);
    }
    std::string text = format_perm_multiset(n, s);
    PermMultisetFile f = parse_perm_multiset(text);
    EXPECT_EQ(f.degree, n);
    EXPECT_EQ(f.set, s);
    EXPECT_EQ(format_perm_multiset(n, f.set), text);
  }
}

TEST(PermMultisetIo, Format) {
  Multiset<Permutation> s;
  s.add(Permutation(3), 2);
  s.add(Permutation(std::vector<Point>{1, 2, 0}), 5);
  EXPECT_EQ(format_perm_multiset(3, s), "degree 3\n2 ()\n5 (1 2 3)\n");
}

TEST(PermMultisetIo, CommentsAndRepeats) {
  auto f = parse_perm_multiset("# header\n\ndegree 3\n2 (1 2)\n# again\n3 (1 2)\n1 ()\n");
  EXPECT_EQ(f.set.count(Permutation(std::vector<Point>{1, 0, 2})), 5u);
  EXPECT_EQ(f.set.total(), 6u);
}

TEST(PermMultisetIo, Errors) {
  EXPECT_THROW(parse_perm_multiset(""), InputError);
  EXPECT_THROW(parse_perm_multiset("degree 3\n"), InputError);
  EXPECT_THROW(parse_perm_multiset("1 (1 2)\n"), InputError);
  EXPECT_THROW(parse_perm_multiset("degree x\n1 ()\n"), InputError);
  EXPECT_THROW(parse_perm_multiset("degree 3\n0 (1 2)\n"), InputError);
  EXPECT_THROW(parse_perm_multiset("degree 3\n-1 (1 2)\n"), InputError);
  EXPECT_THROW(parse_perm_multiset("degree 3\n(1 2)\n"), InputError);
  EXPECT_THROW(parse_perm_multiset("degree 3\n1 (1 4)\n"), InputError);
  try {
    parse_perm_multiset("degree 3\n1 ()\n1 (1 2\n");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(AbelianMultisetIo, RoundTrip) {
  AbelianShape shape({{2, 2, 2}, {3, 1, 1}, {5, 2, 1}});
  Multiset<AbelianVector> s;
  std::mt19937_64 rng(5);
  for (int k = 0; k < 30; ++k) {
    AbelianVector x;
    for (auto q : shape.moduli()) x.push_back(static_cast<std::uint32_t>(rng() % q));
    s.add(x, 1 + rng() % 9);
  }
  std::string text = format_abelian_multiset(shape, s);
  EXPECT_EQ(text.substr(0, text.find('\n')), "shape " + shape.to_string());
  auto f = parse_abelian_multiset(text);
  EXPECT_EQ(f.shape, shape);
  EXPECT_EQ(f.set, s);
}

TEST(AbelianMultisetIo, Errors) {
  EXPECT_THROW(parse_abelian_multiset("1 0,1\n"), InputError);
  EXPECT_THROW(parse_abelian_multiset("shape 2^1:2\n"), InputError);
  EXPECT_THROW(parse_abelian_multiset("shape 2^1:2\n1 0,2\n"), InputError);
  EXPECT_THROW(parse_abelian_multiset("shape 2^1:2\n1 0\n"), InputError);
  EXPECT_THROW(parse_abelian_multiset("shape 2^1:2\n1 0,1,1\n"), InputError);
  EXPECT_THROW(parse_abelian_multiset("shape 2^1:2\n1 0,,1\n"), InputError);
  EXPECT_THROW(parse_abelian_multiset("shape 4^1:2\n1 0,1\n"), InputError);
  auto f = parse_abelian_multiset("shape 3^1:2\n2 1,2\n2 2,1\n");
  EXPECT_EQ(f.set.total(), 4u);
}
