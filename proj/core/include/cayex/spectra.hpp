#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cayex/abelian_shape.hpp"
#include "cayex/bsgs.hpp"
#include "cayex/multiset.hpp"

namespace cayex {

enum class Method { Auto, Dense, PowerIteration, CharacterSum, Sampled };

std::string to_string(Method m);
Method method_from_string(const std::string& s);

struct SpectralOptions {
  Method method = Method::Auto;
  double tol = 1e-9;
  // Auto picks the dense eigensolver up to this many vertices.
  std::size_t auto_dense_cap = 2048;
  std::size_t dense_cap = 10000;
  std::size_t iterative_cap = 1000000;
  std::size_t max_iterations = 1000000;
  // Characters evaluated exhaustively up to this group order.
  std::uint64_t exhaustive_cap = 2000000;
  bool allow_sampled = false;
  std::size_t samples = 100000;
};

struct SpectrumReport {
  GroupOrder group_order = 1;
  Count degree_total = 0;
  double lambda2 = 0;
  Method method = Method::Dense;
  double tolerance = 0;
  std::optional<double> certified_target;
  // False for sampled estimates: they are lower bounds, never certificates.
  bool certifying = true;
  std::size_t iterations = 0;

  std::string to_json() const;
};

// True iff the report certifies lambda2 <= target (within its tolerance).
// On success the target is recorded in the report.
bool certify(SpectrumReport& report, double target);
bool certifies(const SpectrumReport& report, double target);

/// Normalized adjacency operator of a Cayley graph on vertices 0..V-1:
/// (Mv)(x) = sum_a w_a v(image_a[x]) / sum_a w_a.
struct CayleyOperator {
  struct Action {
    std::vector<std::uint32_t> image;
    double weight = 0;
  };
  std::size_t vertices = 1;
  std::vector<Action> actions;
  Count degree_total = 0;

  void apply(const std::vector<double>& in, std::vector<double>& out) const;
};

// Second eigenvalue magnitude on the complement of the constants.
// Throws CapacityError when the vertex count exceeds the chosen method's cap.
SpectrumReport second_eigenvalue(const CayleyOperator& op, const SpectralOptions& opt = {});

// All eigenvalues in ascending order (dense; vertices <= dense_cap).
std::vector<double> dense_spectrum(const CayleyOperator& op, const SpectralOptions& opt = {});

// max over nontrivial characters chi of |E_{s in S} chi(s)| for S over
// prod_t Z_{moduli[t]}. Exhaustive up to exhaustive_cap characters, sampled
// (non-certifying) beyond when allowed, CapacityError otherwise.
SpectrumReport abelian_bias(const std::vector<std::uint32_t>& moduli,
                            const Multiset<AbelianVector>& s, const SpectralOptions& opt = {});
SpectrumReport abelian_bias(const AbelianShape& shape, const Multiset<AbelianVector>& s,
                            const SpectralOptions& opt = {});

// Every character sum E_s chi(s); entry k is the character with mixed-radix
// index k (coordinate 0 fastest). Exhaustive only.
std::vector<double> abelian_spectrum(const std::vector<std::uint32_t>& moduli,
                                     const Multiset<AbelianVector>& s);

// Throws NotSymmetricError unless every element's inverse has equal multiplicity.
void require_symmetric(const Multiset<AbelianVector>& s, const std::vector<std::uint32_t>& moduli);

}  // namespace cayex
