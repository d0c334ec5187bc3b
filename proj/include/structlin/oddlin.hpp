#pragma once

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "structlin/bases.hpp"
#include "structlin/matpoly.hpp"
#include "structlin/pencil_template.hpp"

namespace structlin {

// Block Kronecker pencil for odd grade d = 2s+1: an arbitrary inner pencil
// lambda*B + A of size (s+1)n bordered by L_s(lambda)^T (x) I_n on the right
// and sigma * L_s(lambda) (x) I_n below, zero bottom-right corner.
template <class T>
struct BlockKroneckerPencil {
  MatPoly<T> inner;
  int sigma = 1;
  int s = 0;
  int n = 0;
  Involution involution = Involution::transpose;
  MatPoly<T> assembled;
  bool degenerate = false;  // s == 0: empty Kronecker blocks, vacuous statement

  int grade_d() const { return 2 * s + 1; }
};

template <class T>
Matrix<T> involute_matrix(const Matrix<T>& m, Involution mode) {
  return mode == Involution::transpose ? m.transpose() : m.conj_transpose();
}

template <class T>
MatPoly<T> apply_block_permutation(const MatPoly<T>& m, const std::vector<int>& perm, int n) {
  int p = static_cast<int>(perm.size());
  if (m.rows() != p * n || m.cols() != p * n)
    throw std::invalid_argument("apply_block_permutation: size mismatch");
  MatPoly<T> out(m.rows(), m.cols(), m.grade());
  for (int k = 0; k <= m.grade(); ++k)
    for (int bi = 0; bi < p; ++bi)
      for (int bj = 0; bj < p; ++bj)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            out.coeff_mut(k)(bi * n + i, bj * n + j) = m.coeff(k)(perm[bi] * n + i, perm[bj] * n + j);
  return out;
}

template <class T>
BlockKroneckerPencil<T> assemble(const MatPoly<T>& inner, int sigma, int s, int n,
                                 Involution involution = Involution::transpose) {
  if (sigma != 1 && sigma != -1) throw std::invalid_argument("assemble: sigma must be +1 or -1");
  if (s < 0 || n < 1) throw std::invalid_argument("assemble: bad parameters");
  if (inner.rows() != (s + 1) * n || inner.cols() != (s + 1) * n)
    throw std::invalid_argument("assemble: inner pencil size mismatch");
  if (inner.degree().value_or(0) > 1) throw std::invalid_argument("assemble: inner must be a pencil");

  BlockKroneckerPencil<T> out;
  out.inner = inner.regrade(1);
  out.sigma = sigma;
  out.s = s;
  out.n = n;
  out.involution = involution;
  out.degenerate = (s == 0);

  const T one = scalar_traits<T>::one();
  const T sig = scalar_traits<T>::from_int(sigma);
  int d = 2 * s + 1;
  MatPoly<T> a(d * n, d * n, 1);
  for (int k = 0; k <= 1; ++k)
    for (int i = 0; i < (s + 1) * n; ++i)
      for (int j = 0; j < (s + 1) * n; ++j) a.coeff_mut(k)(i, j) = out.inner.coeff(k)(i, j);
  for (int c = 0; c < s; ++c)
    for (int e = 0; e < n; ++e) {
      a.coeff_mut(0)(c * n + e, (s + 1 + c) * n + e) = -one;              // L_s^T (x) I
      a.coeff_mut(1)((c + 1) * n + e, (s + 1 + c) * n + e) = one;
      a.coeff_mut(0)((s + 1 + c) * n + e, c * n + e) = -sig;              // sigma L_s (x) I
      a.coeff_mut(1)((s + 1 + c) * n + e, (c + 1) * n + e) = sig;
    }
  out.assembled = std::move(a);
  return out;
}

// Corollary condition (a): the antidiagonal block sums reproduce the
// coefficients of P,
//   sum_{i+j=d+2-k} B_ij + sum_{i+j=d+1-k} A_ij = P_k,  k = 0..d.
template <class T>
bool check_condition_coeff(const MatPoly<T>& inner, const MatPoly<T>& p, int s, int n,
                           double tau = 0.0) {
  int d = 2 * s + 1;
  if (p.grade() != d || p.rows() != n || p.cols() != n)
    throw std::invalid_argument("check_condition_coeff: shape mismatch");
  if (inner.rows() != (s + 1) * n || inner.cols() != (s + 1) * n)
    throw std::invalid_argument("check_condition_coeff: inner size mismatch");
  MatPoly<T> pen = inner.regrade(std::max(1, inner.grade()));
  double scale = std::max(p.max_coeff_norm(), pen.max_coeff_norm());
  for (int k = 0; k <= d; ++k) {
    Matrix<T> sum(n, n);
    for (int i = 1; i <= s + 1; ++i)
      for (int j = 1; j <= s + 1; ++j) {
        if (i + j == d + 2 - k) sum += pen.coeff(1).block(i - 1, j - 1, n);
        if (i + j == d + 1 - k) sum += pen.coeff(0).block(i - 1, j - 1, n);
      }
    if (!sum.approx_equal(p.coeff(k), tau, scale)) return false;
  }
  return true;
}

// Corollary condition (b): P(lambda) = su((lambda B + A) (.) Gamma_s(lambda)).
template <class T>
bool check_condition_M(const MatPoly<T>& inner, const MatPoly<T>& p, int s, int n,
                       double tau = 0.0) {
  int d = 2 * s + 1;
  if (p.grade() != d || p.rows() != n || p.cols() != n)
    throw std::invalid_argument("check_condition_M: shape mismatch");
  if (inner.rows() != (s + 1) * n || inner.cols() != (s + 1) * n)
    throw std::invalid_argument("check_condition_M: inner size mismatch");
  BlockShape shape{s + 1, s + 1, n};
  MatPoly<T> gamma = make_basis<T>({BasisTag::Gamma, s, n});
  MatPoly<T> lhs = su(block_hadamard(inner.regrade(std::max(1, inner.grade())), gamma, shape), shape);
  return lhs.approx_equal(p, tau);
}

// Free off-diagonal parameters: (i, j) with 1 <= i < j <= s+1 mapped to the
// pair (A_ij, B_ij). Lower blocks are always derived, never accepted.
template <class T>
using FreeParams = std::map<std::pair<int, int>, std::pair<Matrix<T>, Matrix<T>>>;

// General sigma-structured inner pencil: lower blocks X_ji = sigma*invol(X_ij)
// and diagonal blocks
//   B_kk = P_{d-2k+2} - sum_{i+j=2k,  i<j} (B_ij + sigma*invol(B_ij))
//                     - sum_{i+j=2k-1,i<j} (A_ij + sigma*invol(A_ij)),
//   A_kk = P_{d-2k+1} - sum_{i+j=2k+1,i<j} (B_ij + sigma*invol(B_ij))
//                     - sum_{i+j=2k,  i<j} (A_ij + sigma*invol(A_ij)).
template <class T>
MatPoly<T> solve_structured(const MatPoly<T>& p, int sigma, Involution involution,
                            const FreeParams<T>& free_params = {}, double tau = 0.0) {
  if (sigma != 1 && sigma != -1) throw std::invalid_argument("solve_structured: sigma must be +-1");
  int d = p.grade();
  if (d % 2 == 0) throw std::invalid_argument("solve_structured: odd grade required");
  if (p.rows() != p.cols()) throw std::invalid_argument("solve_structured: square input required");
  if (!structure_check(p, structure_class(sigma, involution), tau))
    throw std::invalid_argument("solve_structured: structure mismatch");
  int s = (d - 1) / 2, n = p.rows(), dim = s + 1;
  const T sig = scalar_traits<T>::from_int(sigma);

  auto upper = [&](int i, int j, bool want_b) -> Matrix<T> {
    auto it = free_params.find({i, j});
    if (it == free_params.end()) return Matrix<T>(n, n);
    return want_b ? it->second.second : it->second.first;
  };
  for (const auto& [key, mats] : free_params) {
    if (key.first < 1 || key.second <= key.first || key.second > dim)
      throw std::invalid_argument("solve_structured: free parameter index out of range");
    if (mats.first.rows() != n || mats.first.cols() != n || mats.second.rows() != n ||
        mats.second.cols() != n)
      throw std::invalid_argument("solve_structured: free parameter block must be n x n");
  }

  MatPoly<T> inner(dim * n, dim * n, 1);
  auto put = [&](int i, int j, const Matrix<T>& a_blk, const Matrix<T>& b_blk) {
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        inner.coeff_mut(0)((i - 1) * n + r, (j - 1) * n + c) = a_blk(r, c);
        inner.coeff_mut(1)((i - 1) * n + r, (j - 1) * n + c) = b_blk(r, c);
      }
  };

  for (int i = 1; i <= dim; ++i)
    for (int j = i + 1; j <= dim; ++j) {
      Matrix<T> aij = upper(i, j, false), bij = upper(i, j, true);
      put(i, j, aij, bij);
      put(j, i, involute_matrix(aij, involution).scaled(sig),
          involute_matrix(bij, involution).scaled(sig));
    }

  auto symmetrized_sum = [&](int total, bool want_b) {
    Matrix<T> acc(n, n);
    for (int i = 1; i <= dim; ++i) {
      int j = total - i;
      if (j <= i || j > dim) continue;
      Matrix<T> x = upper(i, j, want_b);
      acc += x + involute_matrix(x, involution).scaled(sig);
    }
    return acc;
  };
  for (int k = 1; k <= dim; ++k) {
    Matrix<T> bkk = p.coeff(d - 2 * k + 2) - symmetrized_sum(2 * k, true) - symmetrized_sum(2 * k - 1, false);
    Matrix<T> akk = p.coeff(d - 2 * k + 1) - symmetrized_sum(2 * k + 1, true) - symmetrized_sum(2 * k, false);
    put(k, k, akk, bkk);
  }
  return inner;
}

enum class TemplateName { blockdiag, pentadiagonal, ex1, ex2 };

// The template library of the worked examples: the block-diagonal "simplest
// choice", the pentadiagonal companion form, and the two general degree-5
// grids continued block-diagonally for higher odd grades.
inline BlockPencilTemplate template_library(TemplateName name, int d) {
  if (d < 3 || d % 2 == 0) throw std::invalid_argument("template_library: odd d >= 3 required");
  int s = (d - 1) / 2, dim = s + 1;
  BlockPencilTemplate t(dim);
  switch (name) {
    case TemplateName::blockdiag:
      for (int i = 0; i < dim; ++i) {
        t.add_coeff(i, i, 1, 1, d - 2 * i);
        t.add_coeff(i, i, 1, 0, d - 2 * i - 1);
      }
      break;
    case TemplateName::pentadiagonal:
      for (int i = 0; i < dim; ++i) {
        t.add_coeff(i, i, 1, 1, d - 2 * i);
        t.add_coeff(i, i, i == dim - 1 ? 1 : -1, 0, d - 2 * i - 1);
        if (i + 1 < dim) {
          t.add_coeff(i, i + 1, 1, 1, d - 2 * i - 1);
          t.add_coeff(i + 1, i, 1, 1, d - 2 * i - 1);
        }
      }
      break;
    case TemplateName::ex1:
      if (d < 5) throw std::invalid_argument("template_library: ex1 requires d >= 5");
      t.add_coeff(0, 0, 1, 1, d);
      t.add_coeff(0, 1, 1, 1, d - 1);
      t.add_coeff(1, 1, 1, 0, d - 3);
      t.add_coeff(2, 0, 1, 1, d - 2);
      t.add_coeff(2, 2, 1, 1, d - 4);
      t.add_coeff(2, 2, 1, 0, d - 5);
      for (int i = 3; i < dim; ++i) {
        t.add_coeff(i, i, 1, 1, d - 2 * i);
        t.add_coeff(i, i, 1, 0, d - 2 * i - 1);
      }
      break;
    case TemplateName::ex2:
      if (d < 5) throw std::invalid_argument("template_library: ex2 requires d >= 5");
      t.add_coeff(0, 0, 1, 1, d);
      t.add_coeff(0, 0, 1, 0, d - 1);
      t.add_coeff(0, 1, 1, 0, d - 2);
      t.add_coeff(1, 2, 1, 1, d - 3);
      t.add_coeff(2, 1, 1, 0, d - 4);
      t.add_coeff(2, 2, 1, 0, d - 5);
      for (int i = 3; i < dim; ++i) {
        t.add_coeff(i, i, 1, 1, d - 2 * i);
        t.add_coeff(i, i, 1, 0, d - 2 * i - 1);
      }
      break;
  }
  return t;
}

inline bool is_companion_template(const BlockPencilTemplate& t) { return t.is_companion(); }

// Interleaving block order 1, s+2, 2, s+3, ..., s+1 (1-based); carries the
// block-diagonal inner onto the block-tridiagonal companion form and the
// pentadiagonal template onto its banded display.
inline std::vector<int> interleave_permutation_odd(int s) {
  std::vector<int> perm;
  for (int i = 0; i < s; ++i) {
    perm.push_back(i);
    perm.push_back(s + 1 + i);
  }
  perm.push_back(s);
  return perm;
}

template <class T>
struct PermutedPencil {
  std::vector<int> perm;
  MatPoly<T> permuted;
};

template <class T>
PermutedPencil<T> permute_to_banded(const BlockKroneckerPencil<T>& l, TemplateName name,
                                    double tau = 0.0) {
  if (name != TemplateName::blockdiag && name != TemplateName::pentadiagonal)
    throw std::invalid_argument("permute_to_banded: template mismatch");
  BlockShape shape{l.s + 1, l.s + 1, l.n};
  int band = (name == TemplateName::blockdiag) ? 0 : 1;
  for (int i = 0; i <= l.s; ++i)
    for (int j = 0; j <= l.s; ++j) {
      if (std::abs(i - j) <= band) continue;
      if (!block_of(l.inner, shape, i, j).approx_equal(MatPoly<T>(l.n, l.n, 1), tau))
        throw std::invalid_argument("permute_to_banded: template mismatch");
    }
  PermutedPencil<T> out;
  out.perm = interleave_permutation_odd(l.s);
  out.permuted = apply_block_permutation(l.assembled, out.perm, l.n);
  return out;
}

enum class FprOddName { L3prime, L5prime };

template <class T>
struct FprFixture {
  MatPoly<T> pencil;        // the printed FPR pencil built from P
  std::vector<int> perm;    // block permutation carrying it onto Kronecker form
  MatPoly<T> permuted;      // perm^T * pencil * perm
};

// The two degree-5 symmetric companion forms from the Fiedler-pencil
// literature, plus the permutations exhibiting them as block Kronecker
// pencils. The same inners serve the skew case.
template <class T>
FprFixture<T> fpr_fixtures(FprOddName name, const MatPoly<T>& p) {
  if (p.grade() != 5 || p.rows() != p.cols())
    throw std::invalid_argument("fpr_fixtures: square grade-5 polynomial required");
  BlockPencilTemplate t(5);
  std::vector<int> perm;
  if (name == FprOddName::L3prime) {
    t.add_identity(0, 1, 1, 1);
    t.add_identity(0, 2, -1, 0);
    t.add_identity(1, 0, 1, 1);
    t.add_coeff(1, 1, -1, 1, 1);
    t.add_coeff(1, 1, 1, 0, 0);
    t.add_coeff(1, 2, 1, 0, 1);
    t.add_identity(2, 0, -1, 0);
    t.add_coeff(2, 1, 1, 0, 1);
    t.add_coeff(2, 2, 1, 1, 3);
    t.add_coeff(2, 2, 1, 0, 2);
    t.add_coeff(2, 3, 1, 1, 4);
    t.add_identity(2, 4, 1, 1);
    t.add_coeff(3, 2, 1, 1, 4);
    t.add_coeff(3, 3, 1, 1, 5);
    t.add_coeff(3, 3, -1, 0, 4);
    t.add_identity(3, 4, -1, 0);
    t.add_identity(4, 2, 1, 1);
    t.add_identity(4, 3, -1, 0);
    perm = {3, 2, 1, 4, 0};
  } else {
    t.add_identity(0, 2, 1, 1);
    t.add_identity(0, 3, -1, 0);
    t.add_identity(1, 3, 1, 1);
    t.add_identity(1, 4, -1, 0);
    t.add_identity(2, 0, 1, 1);
    t.add_coeff(2, 2, -1, 1, 1);
    t.add_coeff(2, 2, 1, 0, 0);
    t.add_coeff(2, 3, -1, 1, 2);
    t.add_coeff(2, 3, 1, 0, 1);
    t.add_coeff(2, 4, 1, 0, 2);
    t.add_identity(3, 0, -1, 0);
    t.add_identity(3, 1, 1, 1);
    t.add_coeff(3, 2, -1, 1, 2);
    t.add_coeff(3, 2, 1, 0, 1);
    t.add_coeff(3, 3, -1, 1, 3);
    t.add_coeff(3, 3, 1, 0, 2);
    t.add_coeff(3, 4, 1, 0, 3);
    t.add_identity(4, 1, -1, 0);
    t.add_coeff(4, 2, 1, 0, 2);
    t.add_coeff(4, 3, 1, 0, 3);
    t.add_coeff(4, 4, 1, 1, 5);
    t.add_coeff(4, 4, 1, 0, 4);
    perm = {4, 3, 2, 1, 0};
  }
  FprFixture<T> out;
  out.pencil = t.instantiate(p);
  out.perm = perm;
  out.permuted = apply_block_permutation(out.pencil, perm, p.rows());
  return out;
}

}  // namespace structlin
