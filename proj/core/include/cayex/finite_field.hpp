#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace cayex {

/// GF(p^m) as Z_p[x] / (modulus). Polynomials are coefficient lists in
/// ascending degree; the modulus is monic of degree m.
struct FieldSpec {
  std::uint32_t p = 2;
  std::uint32_t m = 1;
  std::vector<std::uint32_t> modulus;

  std::uint64_t order() const;
  std::string to_string() const;  // e.g. "x^2 + x + 1"
  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

// Largest field construct_field accepts by default.
inline constexpr std::uint64_t kMaxFieldOrder = 1u << 24;

// True iff the monic polynomial f (ascending coefficients) is irreducible
// over Z_p, by trial division by every monic polynomial of degree <= deg/2.
bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& f);

// Lexicographically first monic irreducible polynomial of degree m, with
// coefficients compared from x^{m-1} down to x^0. For m = 1 this is x.
FieldSpec construct_field(std::uint32_t p, std::uint32_t m, std::uint64_t max_order = kMaxFieldOrder);

// Least m with p^m > bound.
std::uint32_t least_degree_exceeding(std::uint32_t p, std::uint64_t bound);

class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(std::shared_ptr<const FieldSpec> spec, std::vector<std::uint32_t> coeffs);

  static FieldElement zero(std::shared_ptr<const FieldSpec> spec);
  static FieldElement one(std::shared_ptr<const FieldSpec> spec);
  // The class of x.
  static FieldElement generator(std::shared_ptr<const FieldSpec> spec);
  // Coefficient t is digit t of idx in base p.
  static FieldElement from_index(std::shared_ptr<const FieldSpec> spec, std::uint64_t idx);

  const FieldSpec& spec() const { return *spec_; }
  const std::shared_ptr<const FieldSpec>& spec_ptr() const { return spec_; }
  const std::vector<std::uint32_t>& coeffs() const { return c_; }
  std::uint64_t index() const;
  bool is_zero() const;

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement scaled(std::uint32_t beta) const;
  FieldElement pow(std::uint64_t e) const;

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.c_ == b.c_ && *a.spec_ == *b.spec_;
  }

 private:
  void check(const FieldElement& o) const;
  std::shared_ptr<const FieldSpec> spec_;
  std::vector<std::uint32_t> c_;
};

// sum_t a_t b_t mod p on coefficient vectors.
std::uint32_t inner_product(const FieldElement& a, const FieldElement& b);

}  // namespace cayex
