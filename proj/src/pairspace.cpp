#include "symflow/pairspace.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace symflow::pairspace {

namespace {
constexpr int kMaxDimension = 16;
}

PairBasis::PairBasis(int d) : d_(d) {
  if (d < 2 || d > kMaxDimension) {
    throw std::invalid_argument("PairBasis: one-particle dimension d must be in [2, " +
                                std::to_string(kMaxDimension) + "], got " + std::to_string(d));
  }
}

void PairBasis::check_pair(int i, int j) const {
  if (i < 0 || j < 0 || i >= d_ || j >= d_) {
    throw std::out_of_range("PairBasis: index pair (" + std::to_string(i) + ", " +
                            std::to_string(j) + ") outside [0, " + std::to_string(d_ - 1) + "]");
  }
}

int PairBasis::product_index(int i, int j) const {
  check_pair(i, j);
  return i * d_ + j;
}

int PairBasis::sym_index(int i, int j) const {
  check_pair(i, j);
  if (i > j) throw std::invalid_argument("PairBasis::sym_index requires i <= j");
  // Row i holds pairs (i, i) .. (i, d-1): d - i entries.
  return i * d_ - i * (i - 1) / 2 + (j - i);
}

int PairBasis::asym_index(int i, int j) const {
  check_pair(i, j);
  if (i >= j) throw std::invalid_argument("PairBasis::asym_index requires i < j");
  // Row i holds pairs (i, i+1) .. (i, d-1): d - i - 1 entries.
  return i * d_ - i * (i + 1) / 2 + (j - i - 1);
}

ComplexMatrix build_permutation(const PairBasis& basis) {
  const int d = basis.d();
  ComplexMatrix p = ComplexMatrix::Zero(basis.pair_dim(), basis.pair_dim());
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      p(basis.product_index(j, i), basis.product_index(i, j)) = 1.0;
    }
  }
  return p;
}

ComplexMatrix build_symmetrizer(const PairBasis& basis) {
  const int n = basis.pair_dim();
  return 0.5 * (ComplexMatrix::Identity(n, n) + build_permutation(basis));
}

ComplexMatrix build_antisymmetrizer(const PairBasis& basis) {
  const int n = basis.pair_dim();
  return 0.5 * (ComplexMatrix::Identity(n, n) - build_permutation(basis));
}

std::vector<Ket> sym_eigenbasis(const PairBasis& basis) {
  const int d = basis.d();
  std::vector<Ket> kets;
  kets.reserve(basis.sym_dim());
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      Ket k = Ket::Zero(basis.pair_dim());
      const double scale = 1.0 / std::sqrt(2.0 * (i == j ? 2.0 : 1.0));
      k(basis.product_index(i, j)) += scale;
      k(basis.product_index(j, i)) += scale;
      kets.push_back(std::move(k));
    }
  }
  return kets;
}

std::vector<Ket> asym_eigenbasis(const PairBasis& basis) {
  const int d = basis.d();
  std::vector<Ket> kets;
  kets.reserve(basis.asym_dim());
  const double scale = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      Ket k = Ket::Zero(basis.pair_dim());
      k(basis.product_index(i, j)) = scale;
      k(basis.product_index(j, i)) = -scale;
      kets.push_back(std::move(k));
    }
  }
  return kets;
}

KetDecomposition decompose_ket(const Ket& psi, const PairBasis& basis) {
  if (psi.size() != basis.pair_dim()) {
    throw std::invalid_argument("decompose_ket: ket dimension " + std::to_string(psi.size()) +
                                " does not match pair dimension " +
                                std::to_string(basis.pair_dim()) +
                                " (misconfigured basis?)");
  }
  const ComplexMatrix p = build_permutation(basis);
  KetDecomposition out;
  out.symmetric = 0.5 * (psi + p * psi);
  out.antisymmetric = 0.5 * (psi - p * psi);
  return out;
}

}  // namespace symflow::pairspace
