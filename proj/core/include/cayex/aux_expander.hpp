#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace cayex {

/// A Cayley graph on Z_2^m. Label l sends v to v ^ gen(l), so every label is
/// an involution of the vertex set and the labelling is consistent.
///
/// Large instances are tensor products of chunks: the label is a mixed-radix
/// tuple (l_1, ..., l_k) and the generator is the concatenation of the chunk
/// generators. Eigenvalues multiply across chunks, so mu is the largest
/// chunk mu.
class AuxExpander {
 public:
  struct Chunk {
    unsigned bits = 0;
    std::vector<std::uint64_t> gens;
    double mu = 0;
  };

  AuxExpander() = default;
  explicit AuxExpander(std::vector<Chunk> chunks);

  unsigned bits() const { return bits_; }
  std::uint64_t vertex_count() const { return std::uint64_t{1} << bits_; }
  std::uint64_t degree() const { return degree_; }
  double mu() const { return mu_; }
  const std::vector<Chunk>& chunks() const { return chunks_; }

  std::uint64_t gen(std::uint64_t label) const;
  std::uint64_t neighbor(std::uint64_t v, std::uint64_t label) const { return v ^ gen(label); }
  // Rotation map: (v, l) -> (neighbor, label of the reverse edge).
  std::pair<std::uint64_t, std::uint64_t> rotation(std::uint64_t v, std::uint64_t label) const {
    return {neighbor(v, label), label};
  }

 private:
  std::vector<Chunk> chunks_;
  unsigned bits_ = 0;
  std::uint64_t degree_ = 1;
  double mu_ = 0;
};

struct AuxOptions {
  // Up to this many vertices the whole group (mu = 0) is used directly.
  std::uint64_t full_group_vertices = 16;
  // Greedy selection over all candidates up to this many bits.
  unsigned greedy_bits = 10;
  // Seeded random sets tried per degree on small cubes.
  std::uint64_t random_tries = 16;
  // Walsh-Hadamard certification up to this many bits; larger graphs are
  // tensor products of chunks of at most this size.
  unsigned max_chunk_bits = 24;
  std::uint64_t max_degree = std::uint64_t{1} << 16;
  std::uint64_t seed = 0x5eedf00dull;
};

// max over nonzero characters chi of |mean_l (-1)^{<chi, gens[l]>}|, by a
// Walsh-Hadamard transform on 2^bits points.
double measure_aux_chunk(unsigned bits, const std::vector<std::uint64_t>& gens);

// A consistently labelled graph on exactly vertex_count = 2^t vertices with
// certified mu <= target_mu and power-of-two degree. Throws
// CertificationError naming the best achievable mu when the degree budget
// is exceeded.
AuxExpander aux_family(std::uint64_t vertex_count, double target_mu, const AuxOptions& opt = {});

// Memoized aux_family.
class AuxFamily {
 public:
  explicit AuxFamily(AuxOptions opt = {}) : opt_(opt) {}
  const AuxExpander& get(std::uint64_t vertex_count, double target_mu);

 private:
  AuxOptions opt_;
  std::map<std::pair<std::uint64_t, double>, AuxExpander> cache_;
};

}  // namespace cayex
