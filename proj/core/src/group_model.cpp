#include "cayex/group_model.hpp"

#include "cayex/error.hpp"

namespace cayex {

PermQuotientModel::PermQuotientModel(QuotientContext q) : q_(std::move(q)) {}

const PermQuotientModel::CosetTable& PermQuotientModel::table(std::size_t cap) const {
  if (!table_) {
    auto t = std::make_shared<CosetTable>();
    t->reps = q_.coset_representatives(cap);
    t->index.reserve(t->reps.size() * 2);
    for (std::size_t i = 0; i < t->reps.size(); ++i) t->index.emplace(t->reps[i], static_cast<std::uint32_t>(i));
    table_ = std::move(t);
  }
  return *table_;
}

CayleyOperator PermQuotientModel::cayley_operator(const Multiset<Permutation>& s, std::size_t cap) const {
  const CosetTable& t = table(cap);
  CayleyOperator op;
  op.vertices = t.reps.size();
  op.degree_total = s.total();
  for (const auto& [x, c] : s) {
    if (x.degree() != q_.degree()) throw InputError("element degree differs from group degree");
    if (!q_.parent().contains(x)) throw InputError("element " + to_cycle_string(x) + " is not in the group");
    CayleyOperator::Action a;
    a.weight = static_cast<double>(c);
    a.image.resize(op.vertices);
    for (std::size_t i = 0; i < op.vertices; ++i) {
      a.image[i] = t.index.at(q_.canonicalize(t.reps[i] * x));
    }
    op.actions.push_back(std::move(a));
  }
  return op;
}

SpectrumReport PermQuotientModel::measure(const Multiset<Permutation>& s, const SpectralOptions& opt) const {
  std::size_t cap = std::max(opt.dense_cap, opt.iterative_cap);
  GroupOrder ord = order();
  std::size_t method_cap = opt.method == Method::Dense ? opt.dense_cap : opt.iterative_cap;
  if (ord > method_cap) {
    throw CapacityError("group order " + to_string(ord) + " exceeds verification cap " +
                        std::to_string(method_cap));
  }
  SpectrumReport r = second_eigenvalue(cayley_operator(s, cap), opt);
  r.group_order = ord;
  return r;
}

AbelianQuotientModel::AbelianQuotientModel(std::vector<std::uint32_t> moduli, std::vector<std::uint32_t> top,
                                           std::vector<std::uint32_t> kernel)
    : q_(std::move(moduli)), a_(std::move(top)), b_(std::move(kernel)) {
  if (a_.size() != q_.size() || b_.size() != q_.size()) throw InputError("section rank mismatch");
  for (std::size_t t = 0; t < q_.size(); ++t) {
    if (a_[t] == 0 || b_[t] == 0 || b_[t] % a_[t] != 0 || q_[t] % b_[t] != 0) {
      throw InputError("section divisors must satisfy a | b | q on every axis");
    }
  }
}

AbelianQuotientModel AbelianQuotientModel::whole(std::vector<std::uint32_t> moduli) {
  std::vector<std::uint32_t> ones(moduli.size(), 1);
  std::vector<std::uint32_t> b = moduli;
  return AbelianQuotientModel(std::move(moduli), std::move(ones), std::move(b));
}

AbelianVector AbelianQuotientModel::multiply(const AbelianVector& a, const AbelianVector& b) const {
  AbelianVector r(q_.size());
  for (std::size_t t = 0; t < q_.size(); ++t) {
    std::uint64_t s = std::uint64_t{a[t]} + b[t];
    r[t] = static_cast<std::uint32_t>(s % q_[t]);
  }
  return r;
}

AbelianVector AbelianQuotientModel::inverse(const AbelianVector& a) const {
  AbelianVector r(q_.size());
  for (std::size_t t = 0; t < q_.size(); ++t) r[t] = a[t] == 0 ? 0 : q_[t] - a[t];
  return r;
}

AbelianVector AbelianQuotientModel::canonical(const AbelianVector& a) const {
  AbelianVector r(q_.size());
  for (std::size_t t = 0; t < q_.size(); ++t) r[t] = a[t] % b_[t];
  return r;
}

bool AbelianQuotientModel::is_involution(const AbelianVector& a) const {
  for (std::size_t t = 0; t < q_.size(); ++t) {
    if ((2 * std::uint64_t{a[t]}) % q_[t] != 0) return false;
  }
  return true;
}

GroupOrder AbelianQuotientModel::order() const {
  GroupOrder o = 1;
  for (std::size_t t = 0; t < q_.size(); ++t) o *= b_[t] / a_[t];
  return o;
}

std::vector<std::uint32_t> AbelianQuotientModel::quotient_moduli() const {
  std::vector<std::uint32_t> r(q_.size());
  for (std::size_t t = 0; t < q_.size(); ++t) r[t] = b_[t] / a_[t];
  return r;
}

AbelianVector AbelianQuotientModel::project(const AbelianVector& a) const {
  if (a.size() != q_.size()) throw InputError("element shape mismatch");
  AbelianVector r(q_.size());
  for (std::size_t t = 0; t < q_.size(); ++t) {
    if (a[t] % a_[t] != 0) throw InputError("element lies outside the section");
    r[t] = (a[t] / a_[t]) % (b_[t] / a_[t]);
  }
  return r;
}

Multiset<AbelianVector> AbelianQuotientModel::project(const Multiset<AbelianVector>& s) const {
  Multiset<AbelianVector> r;
  for (const auto& [x, c] : s) r.add(project(x), c);
  return r;
}

SpectrumReport AbelianQuotientModel::measure(const Multiset<AbelianVector>& s, const SpectralOptions& opt) const {
  SpectralOptions o = opt;
  if (o.method == Method::Dense || o.method == Method::PowerIteration) o.method = Method::Auto;
  return abelian_bias(quotient_moduli(), project(s), o);
}

SpectrumReport second_eigenvalue(std::shared_ptr<const Bsgs> b, const Multiset<Permutation>& s,
                                 const SpectralOptions& opt) {
  PermQuotientModel m(QuotientContext::whole(std::move(b)));
  require_exact_symmetric(m, s);
  return m.measure(s, opt);
}

SpectrumReport second_eigenvalue(const Bsgs& b, const Multiset<Permutation>& s, const SpectralOptions& opt) {
  return second_eigenvalue(std::make_shared<const Bsgs>(b), s, opt);
}

}  // namespace cayex
