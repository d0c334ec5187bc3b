#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "structlin/det.hpp"
#include "structlin/matpoly.hpp"

namespace structlin {

// The paper's fixed structural blocks. k doubles as s (Gamma) and t (Nhat).
enum class BasisTag { Lk, Lambda, LkHat, LambdaHat, LambdaTilde, Gamma, Nhat };

struct BasisKind {
  BasisTag tag;
  int k = 1;
  int n = 1;
};

template <class T>
MatPoly<T> make_basis(const BasisKind& kind) {
  const T one = scalar_traits<T>::one();
  const int k = kind.k, n = kind.n;
  if (n < 1) throw std::invalid_argument("make_basis: n must be positive");
  auto mono = [&](MatPoly<T>& m, int i, int j, int pow) { m.coeff_mut(pow)(i, j) = one; };
  MatPoly<T> base;
  switch (kind.tag) {
    case BasisTag::Lk: {
      if (k < 1) throw std::invalid_argument("make_basis: Lk requires k >= 1");
      base = MatPoly<T>(k, k + 1, 1);
      for (int i = 0; i < k; ++i) {
        base.coeff_mut(0)(i, i) = -one;
        base.coeff_mut(1)(i, i + 1) = one;
      }
      break;
    }
    case BasisTag::Lambda: {
      if (k < 0) throw std::invalid_argument("make_basis: Lambda requires k >= 0");
      base = MatPoly<T>(1, k + 1, k);
      for (int j = 0; j <= k; ++j) mono(base, 0, j, k - j);
      break;
    }
    case BasisTag::LkHat: {
      if (k < 1) throw std::invalid_argument("make_basis: LkHat requires k >= 1");
      base = MatPoly<T>(k - 1, k + 1, 1);
      for (int i = 0; i < k - 1; ++i) {
        base.coeff_mut(0)(i, i + 1) = -one;
        base.coeff_mut(1)(i, i + 2) = one;
      }
      break;
    }
    case BasisTag::LambdaHat: {
      if (k < 1) throw std::invalid_argument("make_basis: LambdaHat requires k >= 1");
      base = MatPoly<T>(2, k + 1, std::max(k - 1, 0));
      mono(base, 0, 0, 0);
      for (int j = 1; j <= k; ++j) mono(base, 1, j, k - j);
      break;
    }
    case BasisTag::LambdaTilde: {
      if (k < 1) throw std::invalid_argument("make_basis: LambdaTilde requires k >= 1");
      base = MatPoly<T>(2, k + 1, std::max(k - 1, 0));
      mono(base, 0, 0, 0);
      for (int j = 1; j <= k; ++j) mono(base, 1, j, j - 1);
      break;
    }
    case BasisTag::Gamma: {
      if (k < 0) throw std::invalid_argument("make_basis: Gamma requires s >= 0");
      base = MatPoly<T>(k + 1, k + 1, 2 * k);
      for (int i = 0; i <= k; ++i)
        for (int j = 0; j <= k; ++j) mono(base, i, j, (k - i) + (k - j));
      break;
    }
    case BasisTag::Nhat: {
      if (k < 1) throw std::invalid_argument("make_basis: Nhat requires t >= 1");
      base = MatPoly<T>(k - 1, k + 1, std::max(k - 2, 0));
      for (int i = 0; i < k - 1; ++i)
        for (int j = 1; j <= i + 1; ++j) mono(base, i, j, i + 1 - j);
      break;
    }
  }
  return kron_identity(base, n);
}

template <class T>
struct MinimalBasisReport {
  std::vector<int> row_degrees;
  Matrix<T> highest_row_coeff;
  bool row_reduced = false;
  bool full_rank_everywhere = false;
  bool verdict = false;
};

namespace detail {

// Next rows-subset of columns in lexicographic order; false when exhausted.
inline bool next_combination(std::vector<int>& idx, int n) {
  int r = static_cast<int>(idx.size());
  for (int i = r - 1; i >= 0; --i) {
    if (idx[i] < n - (r - i)) {
      ++idx[i];
      for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace detail

// Minimal-basis test per the row-reduced / full-rank-everywhere
// characterization. Full rank over the algebraic closure is decided exactly:
// the gcd of the maximal minors must be a nonzero constant. The normal rank
// and a first nonzero minor come from fraction-free elimination over
// F[lambda]; further minors join the gcd until it collapses to a constant.
template <class T>
MinimalBasisReport<T> is_minimal_basis(const MatPoly<T>& q) {
  static_assert(scalar_traits<T>::exact, "is_minimal_basis: exact arithmetic required");
  int m = q.rows(), n = q.cols();
  if (m > n) throw std::invalid_argument("is_minimal_basis: more rows than columns");

  MinimalBasisReport<T> rep;
  rep.row_degrees.resize(m, 0);
  rep.highest_row_coeff = Matrix<T>(m, n);
  for (int i = 0; i < m; ++i) {
    int d = 0;
    for (int k = q.grade(); k >= 1; --k) {
      bool nonzero = false;
      for (int j = 0; j < n; ++j)
        if (!scalar_traits<T>::is_zero(q.coeff(k)(i, j))) {
          nonzero = true;
          break;
        }
      if (nonzero) {
        d = k;
        break;
      }
    }
    rep.row_degrees[i] = d;
    for (int j = 0; j < n; ++j) rep.highest_row_coeff(i, j) = q.coeff(d)(i, j);
  }
  rep.row_reduced = rep.highest_row_coeff.rank() == m;

  if (m == 0) {
    rep.full_rank_everywhere = true;
    rep.verdict = rep.row_reduced;
    return rep;
  }

  PolyEliminationResult<T> elim = poly_bareiss(q);
  if (elim.normal_rank < m) {
    rep.full_rank_everywhere = false;
  } else {
    std::vector<int> all_rows(m);
    for (int i = 0; i < m; ++i) all_rows[i] = i;

    // Seed the gcd with pivot minors of several column orders before the
    // exhaustive sweep; a reversed or shuffled order usually produces a minor
    // coprime to the first one, collapsing the gcd to a constant immediately.
    Poly<T> g = elim.pivot_minor;
    std::vector<std::vector<int>> tried{elim.pivot_cols};
    std::mt19937_64 order_rng(0x6cd);
    for (int attempt = 0; attempt < 5 && !g.is_nonzero_constant(); ++attempt) {
      std::vector<int> order(n);
      for (int i = 0; i < n; ++i) order[i] = i;
      if (attempt == 0) {
        std::reverse(order.begin(), order.end());
      } else {
        std::shuffle(order.begin(), order.end(), order_rng);
      }
      MatPoly<T> perm = q.submatrix(all_rows, order);
      PolyEliminationResult<T> e2 = poly_bareiss(perm);
      std::vector<int> cols;
      for (int c : e2.pivot_cols) cols.push_back(order[c]);
      std::sort(cols.begin(), cols.end());
      if (std::find(tried.begin(), tried.end(), cols) != tried.end()) continue;
      tried.push_back(cols);
      g = Poly<T>::gcd(g, e2.pivot_minor);
    }

    std::vector<int> subset(m);
    for (int i = 0; i < m; ++i) subset[i] = i;
    do {
      if (g.is_nonzero_constant()) break;
      if (std::find(tried.begin(), tried.end(), subset) == tried.end()) {
        Poly<T> minor = detpoly(q.submatrix(all_rows, subset));
        if (!minor.is_zero()) g = Poly<T>::gcd(g, minor);
      }
    } while (detail::next_combination(subset, n));
    rep.full_rank_everywhere = g.is_nonzero_constant();
  }
  rep.verdict = rep.row_reduced && rep.full_rank_everywhere;
  return rep;
}

template <class T>
bool are_dual_minimal_bases(const MatPoly<T>& l, const MatPoly<T>& nb) {
  if (l.cols() != nb.cols()) throw std::invalid_argument("are_dual_minimal_bases: column counts differ");
  if (l.rows() + nb.rows() != l.cols()) return false;
  if (!is_minimal_basis(l).verdict || !is_minimal_basis(nb).verdict) return false;
  return poly_matmul(l, nb.involute(Involution::transpose)).is_zero();
}

// Normal rank via exact evaluation at random points; any point gives a lower
// bound, two agreeing draws of the running maximum decide.
template <class T>
int normal_rank(const MatPoly<T>& p, uint64_t seed = 0x5eed) {
  static_assert(scalar_traits<T>::exact, "normal_rank: exact arithmetic required");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> dist(-100000, 100000);
  int bound = std::min(p.rows(), p.cols());
  int best = 0, hits = 0;
  for (int tries = 0; tries < 16; ++tries) {
    int r = p.eval(scalar_traits<T>::from_int(dist(rng))).rank();
    if (r == bound) return bound;
    if (r > best) {
      best = r;
      hits = 1;
    } else if (r == best) {
      ++hits;
    }
    if (hits >= 2) return best;
  }
  return best;
}

template <class T>
struct NullspaceBasis {
  std::vector<MatPoly<T>> basis;  // column vector polynomials annihilating P
  std::vector<int> indices;       // nondecreasing degrees
};

namespace detail {

template <class T>
MatPoly<T> stack_rows(const std::vector<MatPoly<T>>& vecs, int n) {
  int g = 0;
  for (const auto& v : vecs) g = std::max(g, v.grade());
  MatPoly<T> q(static_cast<int>(vecs.size()), n, g);
  for (size_t i = 0; i < vecs.size(); ++i)
    for (int k = 0; k <= vecs[i].grade(); ++k)
      for (int j = 0; j < n; ++j) q.coeff_mut(k)(static_cast<int>(i), j) = vecs[i].coeff(k)(j, 0);
  return q;
}

// Reduce v against the running row-reduced basis: repeatedly cancel the
// leading coefficient with shifts of lower-or-equal-degree basis vectors.
// Members of the polynomial span reduce to zero (predictable degree).
template <class T>
MatPoly<T> reduce_against(MatPoly<T> v, const std::vector<MatPoly<T>>& basis,
                          const std::vector<int>& degrees, int n) {
  for (;;) {
    std::optional<int> dv = v.degree();
    if (!dv) return v;
    std::vector<int> usable;
    for (size_t j = 0; j < basis.size(); ++j)
      if (degrees[j] <= *dv) usable.push_back(static_cast<int>(j));
    if (usable.empty()) return v;
    Matrix<T> lhs(n, static_cast<int>(usable.size()));
    Matrix<T> aug(n, static_cast<int>(usable.size()) + 1);
    for (size_t c = 0; c < usable.size(); ++c) {
      const MatPoly<T>& b = basis[usable[c]];
      for (int i = 0; i < n; ++i) {
        lhs(i, static_cast<int>(c)) = b.coeff(degrees[usable[c]])(i, 0);
        aug(i, static_cast<int>(c)) = lhs(i, static_cast<int>(c));
      }
    }
    for (int i = 0; i < n; ++i) aug(i, static_cast<int>(usable.size())) = v.coeff(*dv)(i, 0);
    if (aug.rank() != lhs.rank()) return v;  // leading coeff independent
    std::vector<int> pivots = aug.rref();
    std::vector<T> coeffs(usable.size(), scalar_traits<T>::zero());
    for (size_t pi = 0; pi < pivots.size(); ++pi) {
      if (pivots[pi] == static_cast<int>(usable.size())) return v;  // inconsistent
      coeffs[pivots[pi]] = aug(static_cast<int>(pi), static_cast<int>(usable.size()));
    }
    for (size_t c = 0; c < usable.size(); ++c) {
      if (scalar_traits<T>::is_zero(coeffs[c])) continue;
      const MatPoly<T>& b = basis[usable[c]];
      int shift = *dv - degrees[usable[c]];
      for (int k = 0; k <= degrees[usable[c]]; ++k)
        v.coeff_mut(k + shift) -= b.coeff(k).scaled(coeffs[c]);
    }
    if (v.degree() && *v.degree() >= *dv) throw std::logic_error("reduce_against: degree did not drop");
  }
}

}  // namespace detail

// Right-nullspace oracle: sweep degrees 0,1,... solving the block-convolution
// system P(lambda) x(lambda) = 0 for degree-<=delta vector polynomials, keep
// candidates that preserve minimality of the running basis, stop when the
// basis dimension reaches cols - normal_rank(P).
template <class T>
NullspaceBasis<T> minimal_nullspace_basis(const MatPoly<T>& p, int max_degree,
                                          uint64_t seed = 0x5eed) {
  static_assert(scalar_traits<T>::exact, "minimal_nullspace_basis: exact arithmetic required");
  int m = p.rows(), n = p.cols(), g = p.grade();
  int target = n - normal_rank(p, seed);
  NullspaceBasis<T> out;
  if (target == 0) return out;

  for (int delta = 0; delta <= max_degree; ++delta) {
    // Convolution matrix of P acting on degree-<=delta vector polynomials.
    Matrix<T> conv((g + delta + 1) * m, (delta + 1) * n);
    for (int c = 0; c <= delta; ++c)
      for (int k = 0; k <= g; ++k)
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < n; ++j) conv((c + k) * m + i, c * n + j) = p.coeff(k)(i, j);
    for (const auto& nv : conv.right_nullspace()) {
      if (static_cast<int>(out.basis.size()) == target) break;
      MatPoly<T> cand(n, 1, delta);
      for (int c = 0; c <= delta; ++c)
        for (int j = 0; j < n; ++j) cand.coeff_mut(c)(j, 0) = nv[c * n + j];
      cand = detail::reduce_against(std::move(cand), out.basis, out.indices, n);
      std::optional<int> d = cand.degree();
      if (!d) continue;
      std::vector<MatPoly<T>> trial = out.basis;
      trial.push_back(cand.regrade(*d));
      if (!is_minimal_basis(detail::stack_rows(trial, n)).verdict) continue;
      out.basis = std::move(trial);
      out.indices.push_back(*d);
    }
    if (static_cast<int>(out.basis.size()) == target) break;
  }
  if (static_cast<int>(out.basis.size()) != target)
    throw std::runtime_error("minimal_nullspace_basis: degree cap exceeded");

  std::vector<size_t> order(out.basis.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return out.indices[a] < out.indices[b]; });
  NullspaceBasis<T> sorted;
  for (size_t i : order) {
    sorted.basis.push_back(out.basis[i]);
    sorted.indices.push_back(out.indices[i]);
  }
  for (const auto& v : sorted.basis)
    if (!poly_matmul(p, v).is_zero())
      throw std::logic_error("minimal_nullspace_basis: candidate does not annihilate input");
  if (!is_minimal_basis(detail::stack_rows(sorted.basis, n)).verdict)
    throw std::logic_error("minimal_nullspace_basis: final minimality check failed");
  return sorted;
}

}  // namespace structlin
