#pragma once

#include <cstdint>
#include <vector>

#include "cloneq/tensor.hpp"

namespace cloneq {

// Permutation of {0, ..., n-1} stored as its image array: images[i] = sigma(i).
class Permutation {
 public:
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int n);
  // Swaps i and j; i == j gives the identity.
  static Permutation transposition(int n, int i, int j);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_.at(i); }
  const std::vector<int>& images() const { return images_; }

  // (this ∘ other)(i) = this(other(i)), i.e. other acts first.
  Permutation compose(const Permutation& other) const;
  Permutation inverse() const;

  // Number of disjoint cycles, fixed points included.
  int cycle_count() const;
  std::vector<std::vector<int>> cycles() const;

  bool operator==(const Permutation& o) const { return images_ == o.images_; }
  bool operator!=(const Permutation& o) const { return !(*this == o); }

 private:
  std::vector<int> images_;
};

// All n! permutations in lexicographic order of the image array.
std::vector<Permutation> all_permutations(int n);

// Permutations sigma of {0..N} with sigma(0) = a and sigma(b) = 0, for
// 1 <= a, b <= N. There are (N-1)! of them; order is deterministic.
std::vector<Permutation> enumerate_sigma_ab(int N, int a, int b);

// The (i : j) shift permutation of S_n:
//   j < i: the cycle ((i-1), (i-2), ..., j)
//   i < j: the cycle (i, (i+1), ..., (j-1))
//   i == j: the identity.
Permutation cycle_between(int i, int j, int n);

// Permutation operator: Pi_sigma (v_0 ⊗ ... ⊗ v_{n-1}) = ⊗_k v_{sigma^{-1}(k)}.
TensorOperator permutation_operator(const Permutation& sigma, int d,
                                    std::int64_t guard = kDimGuard);

// partial_transpose(permutation_operator(sigma), 0)
TensorOperator ptp_operator(const Permutation& sigma, int d,
                            std::int64_t guard = kDimGuard);

// Structure of a site-0 partially transposed permutation operator:
//   Pi_sigma^G = Pi_(1 a) (omega_(0,1) ⊗ Pi_sigma_hat) Pi_(1 b)
// with a = sigma(0), b = sigma^{-1}(0) and sigma_hat in S_{N-1} unique.
struct PtDecomposition {
  int a = 0;
  int b = 0;
  Permutation sigma_hat;
};

// Requires sigma(0) != 0. sigma_hat is found by exhaustive search over
// S_{N-1}, matching the operator identity at d = 2; uniqueness makes the
// result d-independent.
PtDecomposition decompose_partial_transpose(const Permutation& sigma);

// The composite permutation appearing in the action of Pi_sigma^G on pair
// vectors: (0 : a-1) ∘ sigma_hat ∘ pi_{b,c}, with
// pi_{b,c} = (b-1 : 0) for c == b and (b-1 : 0) ∘ (c-1 : b-1) otherwise.
Permutation sigma_hat_composite(const Permutation& sigma_hat, int a, int b, int c);

// Orthogonal projector onto the symmetric subspace of (C^d)^{⊗N}.
TensorOperator symmetric_projector(int N, int d, std::int64_t guard = kDimGuard);

// binomial(d + N - 1, N), the symmetric subspace dimension. Exact.
std::int64_t sym_dim(int N, int d);

}  // namespace cloneq
