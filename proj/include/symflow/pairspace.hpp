#pragma once

#include <vector>

#include "symflow/types.hpp"

namespace symflow::pairspace {

/// Two-particle product basis |u_i(1); u_j(2)> over a d-dimensional
/// one-particle space, together with the index maps into the exchange
/// eigenbases. Product ordering is row-major with the particle-1 index outer;
/// eigenbasis elements are ordered lexicographically by (i, j), symmetric
/// block (i <= j) first, then antisymmetric (i < j). Indices are 0-based.
class PairBasis {
 public:
  /// d in [2, 16]; the cap keeps every dense eigensolve sub-second.
  explicit PairBasis(int d);

  int d() const { return d_; }
  int pair_dim() const { return d_ * d_; }
  int sym_dim() const { return d_ * (d_ + 1) / 2; }
  int asym_dim() const { return d_ * (d_ - 1) / 2; }

  int product_index(int i, int j) const;
  int sym_index(int i, int j) const;   // requires i <= j
  int asym_index(int i, int j) const;  // requires i < j

 private:
  void check_pair(int i, int j) const;
  int d_;
};

/// Exchange operator: swaps the two particle labels on the product basis.
/// Real 0/1 matrix with P^2 = 1 and P = P^dag.
ComplexMatrix build_permutation(const PairBasis& basis);

/// S = (1 + P)/2, the projector onto the exchange-symmetric subspace.
ComplexMatrix build_symmetrizer(const PairBasis& basis);

/// A = (1 - P)/2, the projector onto the exchange-antisymmetric subspace.
ComplexMatrix build_antisymmetrizer(const PairBasis& basis);

/// Orthonormal +1 eigenvectors of P: (|u_i u_j> + |u_j u_i>)/sqrt(2(1+delta_ij)),
/// i <= j, in sym_index order.
std::vector<Ket> sym_eigenbasis(const PairBasis& basis);

/// Orthonormal -1 eigenvectors of P: (|u_i u_j> - |u_j u_i>)/sqrt(2), i < j,
/// in asym_index order. Empty of diagonal pairs (exclusion).
std::vector<Ket> asym_eigenbasis(const PairBasis& basis);

struct KetDecomposition {
  Ket symmetric;      // S|psi>
  Ket antisymmetric;  // A|psi>
};

/// Splits a product-basis ket into its definite-symmetry parts.
/// Throws if dim(psi) != d^2.
KetDecomposition decompose_ket(const Ket& psi, const PairBasis& basis);

}  // namespace symflow::pairspace
