#include "cayex/chains.hpp"

#include "cayex/error.hpp"

namespace cayex {

PermChain::PermChain(std::vector<std::shared_ptr<const Bsgs>> groups) : groups_(std::move(groups)) {
  if (groups_.empty()) throw InputError("empty chain");
}

PermChain PermChain::from_series(const SubgroupChain& chain) {
  std::vector<std::shared_ptr<const Bsgs>> g;
  for (const auto& gl : chain.groups) g.push_back(std::make_shared<const Bsgs>(Bsgs::build(gl)));
  return PermChain(std::move(g));
}

const PermQuotientModel& PermChain::model(std::size_t k, std::size_t m) const {
  if (k > m || m >= groups_.size()) throw InputError("invalid chain section");
  auto& slot = cache_[{k, m}];
  if (!slot) slot = std::make_unique<PermQuotientModel>(QuotientContext::from_verified(groups_[k], groups_[m]));
  return *slot;
}

AbelianChain::AbelianChain(std::vector<std::uint32_t> moduli, std::vector<std::vector<std::uint32_t>> levels)
    : q_(std::move(moduli)), levels_(std::move(levels)) {
  if (levels_.empty()) throw InputError("empty chain");
  for (std::size_t j = 0; j < levels_.size(); ++j) {
    if (levels_[j].size() != q_.size()) throw InputError("chain level rank mismatch");
    for (std::size_t t = 0; t < q_.size(); ++t) {
      if (levels_[j][t] == 0 || q_[t] % levels_[j][t] != 0) throw InputError("chain divisor must divide modulus");
      if (j > 0 && levels_[j][t] % levels_[j - 1][t] != 0) throw InputError("chain must descend");
    }
  }
}

const AbelianQuotientModel& AbelianChain::model(std::size_t k, std::size_t m) const {
  if (k > m || m >= levels_.size()) throw InputError("invalid chain section");
  auto& slot = cache_[{k, m}];
  if (!slot) slot = std::make_unique<AbelianQuotientModel>(q_, levels_[k], levels_[m]);
  return *slot;
}

}  // namespace cayex
