#include "cayex/abelian_shape.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "cayex/error.hpp"

namespace cayex {

std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    if (__builtin_mul_overflow(r, b, &r)) throw OverflowError("integer power overflow");
  }
  return r;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  if (n < 2) return out;
  std::vector<bool> composite(n + 1, false);
  for (std::uint32_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = std::uint64_t{i} * i; j <= n; j += i) composite[j] = true;
  }
  return out;
}

AbelianShape::AbelianShape(std::vector<AbelianFactor> factors) : factors_(std::move(factors)) {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const auto& f = factors_[i];
    if (!is_prime(f.p)) throw InputError("shape factor " + std::to_string(f.p) + " is not prime");
    if (f.e < 1 || f.copies < 1) throw InputError("shape exponents and copies must be >= 1");
    if (i > 0 && factors_[i - 1].p >= f.p) throw InputError("shape primes must increase strictly");
    std::uint64_t q = ipow(f.p, f.e);
    if (q > 0xFFFFFFFFull) throw InputError("shape modulus too large");
    moduli_.insert(moduli_.end(), f.copies, static_cast<std::uint32_t>(q));
  }
}

double AbelianShape::order_estimate() const {
  double r = 1;
  for (auto q : moduli_) r *= q;
  return r;
}

std::uint64_t product_or_zero(const std::vector<std::uint32_t>& moduli) {
  std::uint64_t r = 1;
  for (auto q : moduli) {
    if (__builtin_mul_overflow(r, std::uint64_t{q}, &r) || r > (1ull << 63)) return 0;
  }
  return r;
}

std::uint64_t AbelianShape::order_or_zero() const { return product_or_zero(moduli_); }

std::string AbelianShape::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) os << ' ';
    os << factors_[i].p << '^' << factors_[i].e << ':' << factors_[i].copies;
  }
  return os.str();
}

AbelianShape AbelianShape::parse(std::string_view text) {
  std::vector<AbelianFactor> fs;
  std::size_t pos = 0;
  auto number = [&](std::uint32_t& out) {
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), out);
    if (ec != std::errc()) throw InputError("malformed shape: " + std::string(text));
    pos = static_cast<std::size_t>(ptr - text.data());
  };
  auto expect = [&](char c) {
    if (pos >= text.size() || text[pos] != c) throw InputError("malformed shape: " + std::string(text));
    ++pos;
  };
  while (true) {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    if (pos >= text.size()) break;
    AbelianFactor f;
    number(f.p);
    expect('^');
    number(f.e);
    expect(':');
    number(f.copies);
    fs.push_back(f);
  }
  if (fs.empty()) throw InputError("empty shape");
  return AbelianShape(std::move(fs));
}

std::uint64_t encode(const AbelianVector& v, const std::vector<std::uint32_t>& moduli) {
  if (v.size() != moduli.size()) throw InputError("vector length differs from shape rank");
  std::uint64_t idx = 0;
  for (std::size_t t = moduli.size(); t-- > 0;) {
    if (v[t] >= moduli[t]) throw InputError("coordinate out of range");
    idx = idx * moduli[t] + v[t];
  }
  return idx;
}

AbelianVector decode(std::uint64_t index, const std::vector<std::uint32_t>& moduli) {
  AbelianVector v(moduli.size());
  for (std::size_t t = 0; t < moduli.size(); ++t) {
    v[t] = static_cast<std::uint32_t>(index % moduli[t]);
    index /= moduli[t];
  }
  return v;
}

}  // namespace cayex
