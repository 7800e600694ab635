#pragma once

#include <string>
#include <vector>

#include "cayex/permutation.hpp"

namespace cayex::testing {

inline Permutation cyc(const std::string& s, std::size_t n) { return parse_permutation(s, n); }

inline GeneratorList gl(std::size_t n, std::initializer_list<const char*> gens) {
  GeneratorList g{n, {}};
  for (const char* s : gens) g.gens.push_back(parse_permutation(s, n));
  return g;
}

inline std::string ncycle(std::size_t n, std::size_t from = 1) {
  std::string s = "(";
  for (std::size_t i = 0; i < n; ++i) {
    if (i) s += ' ';
    s += std::to_string(from + i);
  }
  return s + ")";
}

inline GeneratorList cyclic(std::size_t n) {
  if (n == 1) return {1, {}};
  return {n, {cyc(ncycle(n), n)}};
}

inline GeneratorList symmetric(std::size_t n) {
  if (n == 1) return {1, {}};
  return {n, {cyc(ncycle(n), n), cyc("(1 2)", n)}};
}

inline GeneratorList alternating(std::size_t n) {
  GeneratorList g{n, {}};
  for (std::size_t k = 3; k <= n; ++k) g.gens.push_back(cyc("(1 2 " + std::to_string(k) + ")", n));
  return g;
}

// Dihedral group of order 2n acting on n points.
inline GeneratorList dihedral(std::size_t n) {
  GeneratorList g{n, {cyc(ncycle(n), n)}};
  std::vector<Point> img(n);
  for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<Point>((n - i) % n);
  g.gens.emplace_back(img);
  return g;
}

inline GeneratorList klein_four() { return gl(4, {"(1 2)(3 4)", "(1 3)(2 4)"}); }

// S_3 x S_4 on 7 points, order 144.
inline GeneratorList s3_times_s4() { return gl(7, {"(1 2 3)", "(1 2)", "(4 5 6 7)", "(4 5)"}); }

// Sylow 2-subgroup of S_8, order 128.
inline GeneratorList sylow2_s8() {
  return gl(8, {"(1 2)", "(1 3)(2 4)", "(1 5)(2 6)(3 7)(4 8)"});
}

// Z_2^3 acting regularly-ish on 6 points, order 8.
inline GeneratorList z2_cubed() { return gl(6, {"(1 2)", "(3 4)", "(5 6)"}); }

// Z_3 wr Z_2 on 6 points, order 18.
inline GeneratorList z3_wr_z2() { return gl(6, {"(1 2 3)", "(1 4)(2 5)(3 6)"}); }

struct CatalogEntry {
  std::string name;
  GeneratorList gens;
  unsigned long long order;
  bool solvable;
  bool abelian;
};

inline std::vector<CatalogEntry> catalog() {
  return {
      {"trivial", {3, {}}, 1, true, true},
      {"Z2", cyclic(2), 2, true, true},
      {"Z6", cyclic(6), 6, true, true},
      {"Z8", cyclic(8), 8, true, true},
      {"Z12", cyclic(12), 12, true, true},
      {"Z2^3", z2_cubed(), 8, true, true},
      {"V4", klein_four(), 4, true, true},
      {"S3", symmetric(3), 6, true, false},
      {"D8", dihedral(4), 8, true, false},
      {"D10", dihedral(5), 10, true, false},
      {"A4", alternating(4), 12, true, false},
      {"Z3wrZ2", z3_wr_z2(), 18, true, false},
      {"S4", symmetric(4), 24, true, false},
      {"Sylow2(S8)", sylow2_s8(), 128, true, false},
      {"S3xS4", s3_times_s4(), 144, true, false},
      {"A5", alternating(5), 60, false, false},
      {"S5", symmetric(5), 120, false, false},
      {"A6", alternating(6), 360, false, false},
      {"S6", symmetric(6), 720, false, false},
  };
}

}  // namespace cayex::testing
