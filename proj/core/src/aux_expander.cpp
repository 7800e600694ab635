#include "cayex/aux_expander.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <sstream>

#include "cayex/error.hpp"

namespace cayex {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

bool is_pow2(std::uint64_t x) { return x != 0 && (x & (x - 1)) == 0; }

AuxExpander::Chunk full_chunk(unsigned bits) {
  AuxExpander::Chunk c;
  c.bits = bits;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << bits); ++v) c.gens.push_back(v);
  c.mu = 0;
  return c;
}

// Greedy: each step adds the candidate minimizing the largest partial
// character sum; stops at the first power-of-two degree meeting the target.
AuxExpander::Chunk greedy_chunk(unsigned bits, double target, const AuxOptions& opt) {
  std::uint64_t n = std::uint64_t{1} << bits;
  std::vector<std::int64_t> sum(n, 0);
  AuxExpander::Chunk c;
  c.bits = bits;
  std::size_t pool = n <= 256 ? n : (bits <= 12 ? 256 : 128);
  double best_mu = 1;
  for (std::uint64_t step = 0;; ++step) {
    std::uint64_t d = step + 1;
    if (d >= n || d > opt.max_degree) break;
    std::int64_t best_score = std::numeric_limits<std::int64_t>::max();
    std::uint64_t best_cand = 0;
    for (std::size_t k = 0; k < pool; ++k) {
      std::uint64_t cand = pool == n ? k : splitmix(opt.seed ^ (step << 20) ^ k ^ (std::uint64_t{bits} << 56)) & (n - 1);
      std::int64_t score = 0;
      for (std::uint64_t chi = 1; chi < n && score < best_score; ++chi) {
        std::int64_t v = sum[chi] + ((std::popcount(chi & cand) & 1) ? -1 : 1);
        score = std::max<std::int64_t>(score, std::llabs(v));
      }
      if (score < best_score) {
        best_score = score;
        best_cand = cand;
      }
    }
    c.gens.push_back(best_cand);
    for (std::uint64_t chi = 0; chi < n; ++chi) sum[chi] += (std::popcount(chi & best_cand) & 1) ? -1 : 1;
    if (is_pow2(d)) {
      double mu = static_cast<double>(best_score) / static_cast<double>(d);
      best_mu = std::min(best_mu, mu);
      if (mu <= target) {
        c.mu = measure_aux_chunk(bits, c.gens);
        return c;
      }
    }
  }
  if (n <= opt.max_degree) return full_chunk(bits);
  std::ostringstream os;
  os << "aux expander on 2^" << bits << " vertices: target mu " << target << " needs degree above "
     << opt.max_degree << " (best mu " << best_mu << ")";
  throw CertificationError(os.str());
}

AuxExpander::Chunk random_chunk(unsigned bits, double target, const AuxOptions& opt) {
  std::uint64_t mask = (std::uint64_t{1} << bits) - 1;
  double best_mu = 1;
  for (std::uint64_t d = 64; d <= opt.max_degree; d *= 2) {
    AuxExpander::Chunk c;
    c.bits = bits;
    for (std::uint64_t i = 0; i < d; ++i) c.gens.push_back(splitmix(opt.seed ^ (std::uint64_t{bits} << 48) ^ i) & mask);
    c.mu = measure_aux_chunk(bits, c.gens);
    best_mu = std::min(best_mu, c.mu);
    if (c.mu <= target) return c;
  }
  std::ostringstream os;
  os << "aux expander on 2^" << bits << " vertices: target mu " << target << " needs degree above "
     << opt.max_degree << " (best mu " << best_mu << ")";
  throw CertificationError(os.str());
}

// Several seeded random sets of each power-of-two degree below `below`.
std::optional<AuxExpander::Chunk> random_tries(unsigned bits, double target, std::uint64_t below,
                                               const AuxOptions& opt) {
  std::uint64_t mask = (std::uint64_t{1} << bits) - 1;
  for (std::uint64_t d = std::max<std::uint64_t>(bits, 2); d < below; d *= 2) {
    if (!is_pow2(d)) d = std::bit_ceil(d);
    for (std::uint64_t t = 0; t < opt.random_tries; ++t) {
      AuxExpander::Chunk c;
      c.bits = bits;
      for (std::uint64_t i = 0; i < d; ++i) {
        c.gens.push_back(splitmix(opt.seed ^ (std::uint64_t{bits} << 48) ^ (t << 32) ^ (d << 20) ^ i) & mask);
      }
      c.mu = measure_aux_chunk(bits, c.gens);
      if (c.mu <= target) return c;
    }
  }
  return std::nullopt;
}

AuxExpander::Chunk build_chunk(unsigned bits, double target, const AuxOptions& opt) {
  if (bits == 0) return full_chunk(0);
  if ((std::uint64_t{1} << bits) <= opt.full_group_vertices) return full_chunk(bits);
  if (bits <= opt.greedy_bits) {
    AuxExpander::Chunk g = greedy_chunk(bits, target, opt);
    if (auto r = random_tries(bits, target, g.gens.size(), opt)) return *r;
    return g;
  }
  return random_chunk(bits, target, opt);
}

}  // namespace

AuxExpander::AuxExpander(std::vector<Chunk> chunks) : chunks_(std::move(chunks)) {
  for (const auto& c : chunks_) {
    bits_ += c.bits;
    degree_ *= c.gens.size();
    mu_ = std::max(mu_, c.mu);
  }
  if (bits_ > 62) throw CapacityError("aux expander too large");
}

std::uint64_t AuxExpander::gen(std::uint64_t label) const {
  std::uint64_t g = 0;
  unsigned shift = 0;
  for (const auto& c : chunks_) {
    std::uint64_t d = c.gens.size();
    g |= c.gens[label % d] << shift;
    label /= d;
    shift += c.bits;
  }
  return g;
}

double measure_aux_chunk(unsigned bits, const std::vector<std::uint64_t>& gens) {
  if (gens.empty()) throw InputError("aux chunk without generators");
  std::uint64_t n = std::uint64_t{1} << bits;
  if (gens.size() > (std::uint64_t{1} << 30)) throw CapacityError("aux chunk degree too large");
  std::vector<std::int32_t> a(n, 0);
  for (auto g : gens) a[g] += 1;
  for (std::uint64_t len = 1; len < n; len <<= 1) {
    for (std::uint64_t i = 0; i < n; i += 2 * len) {
      for (std::uint64_t j = i; j < i + len; ++j) {
        std::int32_t x = a[j], y = a[j + len];
        a[j] = x + y;
        a[j + len] = x - y;
      }
    }
  }
  std::int64_t best = 0;
  for (std::uint64_t chi = 1; chi < n; ++chi) best = std::max<std::int64_t>(best, std::llabs(a[chi]));
  return static_cast<double>(best) / static_cast<double>(gens.size());
}

AuxExpander aux_family(std::uint64_t vertex_count, double target_mu, const AuxOptions& opt) {
  if (!is_pow2(vertex_count)) throw InputError("aux vertex count must be a power of two");
  if (!(target_mu >= 0)) throw InputError("aux target mu must be non-negative");
  unsigned bits = static_cast<unsigned>(std::countr_zero(vertex_count));
  std::vector<AuxExpander::Chunk> chunks;
  unsigned k = bits <= opt.max_chunk_bits ? 1 : (bits + opt.max_chunk_bits - 1) / opt.max_chunk_bits;
  for (unsigned i = 0; i < k; ++i) {
    unsigned b = bits / k + (i < bits % k ? 1 : 0);
    chunks.push_back(build_chunk(b, target_mu, opt));
  }
  return AuxExpander(std::move(chunks));
}

const AuxExpander& AuxFamily::get(std::uint64_t vertex_count, double target_mu) {
  auto key = std::make_pair(vertex_count, target_mu);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  return cache_.emplace(key, aux_family(vertex_count, target_mu, opt_)).first->second;
}

}  // namespace cayex
