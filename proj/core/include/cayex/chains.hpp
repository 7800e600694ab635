#pragma once

#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "cayex/bsgs.hpp"
#include "cayex/group_model.hpp"
#include "cayex/series.hpp"

namespace cayex {

/// A normal series of permutation groups, each normal in the first.
class PermChain {
 public:
  explicit PermChain(std::vector<std::shared_ptr<const Bsgs>> groups);
  static PermChain from_series(const SubgroupChain& chain);

  std::size_t length() const { return groups_.size() - 1; }
  const Bsgs& group(std::size_t i) const { return *groups_[i]; }
  std::shared_ptr<const Bsgs> group_ptr(std::size_t i) const { return groups_[i]; }
  // The section G_k / G_m, k <= m.
  const PermQuotientModel& model(std::size_t k, std::size_t m) const;

 private:
  std::vector<std::shared_ptr<const Bsgs>> groups_;
  mutable std::map<std::pair<std::size_t, std::size_t>, std::unique_ptr<PermQuotientModel>> cache_;
};

/// Subgroups G_j = prod_t a^(j)_t Z_{q_t} of prod_t Z_{q_t}, with
/// a^(j)_t dividing a^(j+1)_t and q_t.
class AbelianChain {
 public:
  AbelianChain(std::vector<std::uint32_t> moduli, std::vector<std::vector<std::uint32_t>> levels);

  std::size_t length() const { return levels_.size() - 1; }
  const std::vector<std::uint32_t>& moduli() const { return q_; }
  const std::vector<std::uint32_t>& level(std::size_t j) const { return levels_[j]; }
  const AbelianQuotientModel& model(std::size_t k, std::size_t m) const;

 private:
  std::vector<std::uint32_t> q_;
  std::vector<std::vector<std::uint32_t>> levels_;
  mutable std::map<std::pair<std::size_t, std::size_t>, std::unique_ptr<AbelianQuotientModel>> cache_;
};

}  // namespace cayex
