#include "cayex/finite_field.hpp"

#include <sstream>

#include "cayex/abelian_shape.hpp"
#include "cayex/error.hpp"

namespace cayex {

namespace {

using Poly = std::vector<std::uint32_t>;

// f mod g for monic g, in place.
void reduce_monic(Poly& f, const Poly& g, std::uint32_t p) {
  std::size_t dg = g.size() - 1;
  for (std::size_t i = f.size(); i-- > dg;) {
    std::uint64_t c = f[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dg; ++j) {
      std::size_t k = i - dg + j;
      f[k] = static_cast<std::uint32_t>((f[k] + (p - c) * g[j]) % p);
    }
  }
  f.resize(std::min(f.size(), dg));
}

Poly monic_from_index(std::uint64_t idx, std::uint32_t p, std::uint32_t d) {
  Poly g(d + 1, 0);
  for (std::uint32_t t = 0; t < d; ++t) {
    g[t] = static_cast<std::uint32_t>(idx % p);
    idx /= p;
  }
  g[d] = 1;
  return g;
}

}  // namespace

std::uint64_t FieldSpec::order() const { return ipow(p, m); }

std::string FieldSpec::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = modulus.size(); i-- > 0;) {
    std::uint32_t c = modulus[i];
    if (c == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0) {
      os << c;
      continue;
    }
    if (c != 1) os << c;
    os << "x";
    if (i > 1) os << "^" << i;
  }
  if (first) os << "0";
  return os.str();
}

bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& f) {
  if (!is_prime(p)) throw InputError("field characteristic must be prime");
  if (f.empty() || f.back() != 1) throw InputError("polynomial must be monic");
  std::size_t d = f.size() - 1;
  if (d == 0) return false;
  for (std::uint32_t dg = 1; dg <= d / 2; ++dg) {
    std::uint64_t count = ipow(p, dg);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Poly r = f;
      reduce_monic(r, monic_from_index(idx, p, dg), p);
      bool zero = true;
      for (auto c : r) zero = zero && c == 0;
      if (zero) return false;
    }
  }
  return true;
}

FieldSpec construct_field(std::uint32_t p, std::uint32_t m, std::uint64_t max_order) {
  if (!is_prime(p)) throw InputError("field characteristic " + std::to_string(p) + " is not prime");
  if (m == 0) throw InputError("field degree must be positive");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < m; ++i) {
    q *= p;
    if (q > max_order) {
      throw CapacityError("field of order " + std::to_string(p) + "^" + std::to_string(m) + " exceeds the bound " +
                          std::to_string(max_order));
    }
  }
  // Digit m-1 is the most significant, so increasing idx walks the
  // coefficients from x^{m-1} down to x^0 lexicographically.
  std::uint64_t count = q;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    Poly f = monic_from_index(idx, p, m);
    if (is_irreducible(p, f)) return FieldSpec{p, m, f};
  }
  throw CertificationError("no irreducible polynomial found");  // unreachable for prime p
}

std::uint32_t least_degree_exceeding(std::uint32_t p, std::uint64_t bound) {
  if (p < 2) throw InputError("base must be at least 2");
  std::uint32_t m = 1;
  std::uint64_t q = p;
  while (q <= bound) {
    q *= p;
    ++m;
  }
  return m;
}

FieldElement::FieldElement(std::shared_ptr<const FieldSpec> spec, std::vector<std::uint32_t> coeffs)
    : spec_(std::move(spec)), c_(std::move(coeffs)) {
  if (!spec_) throw InputError("field element without a field");
  if (c_.size() != spec_->m) throw InputError("field element has the wrong number of coefficients");
  for (auto c : c_)
    if (c >= spec_->p) throw InputError("field coefficient out of range");
}

FieldElement FieldElement::zero(std::shared_ptr<const FieldSpec> spec) {
  std::uint32_t m = spec->m;
  return FieldElement(std::move(spec), std::vector<std::uint32_t>(m, 0));
}

FieldElement FieldElement::one(std::shared_ptr<const FieldSpec> spec) {
  std::vector<std::uint32_t> c(spec->m, 0);
  c[0] = 1;
  return FieldElement(std::move(spec), std::move(c));
}

FieldElement FieldElement::generator(std::shared_ptr<const FieldSpec> spec) {
  Poly x{0, 1};
  reduce_monic(x, spec->modulus, spec->p);
  x.resize(spec->m, 0);
  return FieldElement(std::move(spec), std::move(x));
}

FieldElement FieldElement::from_index(std::shared_ptr<const FieldSpec> spec, std::uint64_t idx) {
  if (idx >= spec->order()) throw InputError("field index out of range");
  std::vector<std::uint32_t> c(spec->m);
  for (auto& v : c) {
    v = static_cast<std::uint32_t>(idx % spec->p);
    idx /= spec->p;
  }
  return FieldElement(std::move(spec), std::move(c));
}

std::uint64_t FieldElement::index() const {
  std::uint64_t idx = 0;
  for (std::size_t t = c_.size(); t-- > 0;) idx = idx * spec_->p + c_[t];
  return idx;
}

bool FieldElement::is_zero() const {
  for (auto c : c_)
    if (c != 0) return false;
  return true;
}

void FieldElement::check(const FieldElement& o) const {
  if (!spec_ || !o.spec_ || !(*spec_ == *o.spec_)) throw InputError("field elements from different fields");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check(o);
  std::vector<std::uint32_t> r(c_.size());
  for (std::size_t t = 0; t < r.size(); ++t) r[t] = (c_[t] + o.c_[t]) % spec_->p;
  return FieldElement(spec_, std::move(r));
}

FieldElement FieldElement::operator-() const {
  std::vector<std::uint32_t> r(c_.size());
  for (std::size_t t = 0; t < r.size(); ++t) r[t] = (spec_->p - c_[t]) % spec_->p;
  return FieldElement(spec_, std::move(r));
}

FieldElement FieldElement::operator-(const FieldElement& o) const { return *this + (-o); }

FieldElement FieldElement::scaled(std::uint32_t beta) const {
  std::vector<std::uint32_t> r(c_.size());
  std::uint64_t b = beta % spec_->p;
  for (std::size_t t = 0; t < r.size(); ++t) r[t] = static_cast<std::uint32_t>(c_[t] * b % spec_->p);
  return FieldElement(spec_, std::move(r));
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  check(o);
  const std::uint64_t p = spec_->p;
  Poly prod(2 * c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) {
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{c_[i]} * o.c_[j]) % p);
    }
  }
  reduce_monic(prod, spec_->modulus, spec_->p);
  prod.resize(spec_->m, 0);
  return FieldElement(spec_, std::move(prod));
}

FieldElement FieldElement::pow(std::uint64_t e) const {
  FieldElement result = one(spec_), base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

std::uint32_t inner_product(const FieldElement& a, const FieldElement& b) {
  if (!(a.spec() == b.spec())) throw InputError("field elements from different fields");
  std::uint64_t s = 0;
  for (std::size_t t = 0; t < a.coeffs().size(); ++t) s = (s + std::uint64_t{a.coeffs()[t]} * b.coeffs()[t]) % a.spec().p;
  return static_cast<std::uint32_t>(s);
}

}  // namespace cayex
