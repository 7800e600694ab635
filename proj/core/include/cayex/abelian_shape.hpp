#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cayex {

// Coordinates of an element of a product of cyclic groups, flattened.
using AbelianVector = std::vector<std::uint32_t>;

/// prod_i Z_{p_i^{e_i}}^{n_i}, primes strictly increasing.
struct AbelianFactor {
  std::uint32_t p = 2;
  std::uint32_t e = 1;
  std::uint32_t copies = 1;
  friend bool operator==(const AbelianFactor&, const AbelianFactor&) = default;
};

class AbelianShape {
 public:
  AbelianShape() = default;
  // Throws InputError unless primes increase strictly and e, copies >= 1.
  explicit AbelianShape(std::vector<AbelianFactor> factors);

  const std::vector<AbelianFactor>& factors() const { return factors_; }
  // One modulus per coordinate: factor i contributes copies_i entries p_i^e_i.
  const std::vector<std::uint32_t>& moduli() const { return moduli_; }
  std::size_t rank() const { return moduli_.size(); }
  // Group order as a double (may exceed every integer type).
  double order_estimate() const;
  // Exact order, or 0 when it exceeds 2^63.
  std::uint64_t order_or_zero() const;

  // "p1^e1:n1 p2^e2:n2 ..."
  std::string to_string() const;
  static AbelianShape parse(std::string_view text);

  friend bool operator==(const AbelianShape& a, const AbelianShape& b) {
    return a.factors_ == b.factors_;
  }

 private:
  std::vector<AbelianFactor> factors_;
  std::vector<std::uint32_t> moduli_;
};

// Product of the moduli, or 0 when it exceeds 2^63.
std::uint64_t product_or_zero(const std::vector<std::uint32_t>& moduli);

// Mixed-radix index with coordinate 0 least significant.
std::uint64_t encode(const AbelianVector& v, const std::vector<std::uint32_t>& moduli);
AbelianVector decode(std::uint64_t index, const std::vector<std::uint32_t>& moduli);

bool is_prime(std::uint64_t n);
std::vector<std::uint32_t> primes_up_to(std::uint32_t n);
std::uint64_t ipow(std::uint64_t b, std::uint32_t e);

}  // namespace cayex
