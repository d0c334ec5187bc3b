#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "structlin/matpoly.hpp"

namespace structlin {

// Symbolic block grids whose entries are formal combinations of lambda^{0,1}
// times P_k, identity, or a named free matrix. Companion-form checks happen
// here; instantiation substitutes a concrete polynomial's coefficients.
enum class TokenKind { coeff, identity, zero, free_matrix };

struct TemplateTerm {
  Rational weight{1};
  int lambda_power = 0;  // 0 or 1
  TokenKind kind = TokenKind::zero;
  int index = 0;           // which P_k, for TokenKind::coeff
  std::string name;        // free matrix name
  bool transposed = false; // free matrix transpose flag
};

using TemplateBlock = std::vector<TemplateTerm>;

class BlockPencilTemplate {
 public:
  explicit BlockPencilTemplate(int dim) : dim_(dim), grid_(static_cast<size_t>(dim) * dim) {
    if (dim <= 0) throw std::invalid_argument("BlockPencilTemplate: dimension must be positive");
  }

  int dim() const { return dim_; }
  const TemplateBlock& block(int i, int j) const { return grid_[idx(i, j)]; }

  void add_term(int i, int j, TemplateTerm t) {
    if (t.lambda_power < 0 || t.lambda_power > 1)
      throw std::invalid_argument("BlockPencilTemplate: lambda power must be 0 or 1");
    grid_[idx(i, j)].push_back(std::move(t));
  }
  void add_coeff(int i, int j, Rational w, int lambda_power, int k) {
    add_term(i, j, {std::move(w), lambda_power, TokenKind::coeff, k, "", false});
  }
  void add_identity(int i, int j, Rational w, int lambda_power) {
    add_term(i, j, {std::move(w), lambda_power, TokenKind::identity, 0, "", false});
  }
  void add_free(int i, int j, Rational w, int lambda_power, std::string name, bool transposed = false) {
    add_term(i, j, {std::move(w), lambda_power, TokenKind::free_matrix, 0, std::move(name), transposed});
  }

  BlockPencilTemplate canonicalized() const {
    BlockPencilTemplate out(dim_);
    for (size_t b = 0; b < grid_.size(); ++b) {
      std::map<std::tuple<int, int, int, std::string, bool>, Rational> acc;
      for (const TemplateTerm& t : grid_[b]) {
        if (t.kind == TokenKind::zero) continue;
        acc[{t.lambda_power, static_cast<int>(t.kind), t.index, t.name, t.transposed}] += t.weight;
      }
      for (const auto& [key, w] : acc) {
        if (w == 0) continue;
        const auto& [pow, kind, index, name, transposed] = key;
        out.grid_[b].push_back({w, pow, static_cast<TokenKind>(kind), index, name, transposed});
      }
    }
    return out;
  }

  friend bool operator==(const BlockPencilTemplate& a, const BlockPencilTemplate& b) {
    if (a.dim_ != b.dim_) return false;
    BlockPencilTemplate x = a.canonicalized(), y = b.canonicalized();
    for (size_t i = 0; i < x.grid_.size(); ++i) {
      auto key = [](const TemplateTerm& t) {
        return std::tuple(t.lambda_power, static_cast<int>(t.kind), t.index, t.name, t.transposed, t.weight);
      };
      auto lt = [&](const TemplateTerm& s, const TemplateTerm& t) { return key(s) < key(t); };
      std::sort(x.grid_[i].begin(), x.grid_[i].end(), lt);
      std::sort(y.grid_[i].begin(), y.grid_[i].end(), lt);
      if (x.grid_[i].size() != y.grid_[i].size()) return false;
      for (size_t k = 0; k < x.grid_[i].size(); ++k)
        if (key(x.grid_[i][k]) != key(y.grid_[i][k])) return false;
    }
    return true;
  }

  bool is_block_symmetric() const {
    for (int i = 0; i < dim_; ++i)
      for (int j = i + 1; j < dim_; ++j) {
        BlockPencilTemplate a(1), b(1);
        a.grid_[0] = grid_[idx(i, j)];
        b.grid_[0] = grid_[idx(j, i)];
        if (!(a == b)) return false;
      }
    return true;
  }

  // Every block built only from signed lambda^{0,1} P_k / identity terms.
  bool is_companion() const {
    for (const TemplateBlock& blk : canonicalized().grid_)
      for (const TemplateTerm& t : blk)
        if (t.kind == TokenKind::free_matrix) return false;
    return true;
  }

  template <class T>
  MatPoly<T> instantiate(const MatPoly<T>& p,
                         const std::map<std::string, Matrix<T>>& bindings = {}) const {
    if (p.rows() != p.cols()) throw std::invalid_argument("instantiate: square polynomial required");
    int n = p.rows();
    MatPoly<T> inner(dim_ * n, dim_ * n, 1);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j)
        for (const TemplateTerm& t : grid_[idx(i, j)]) {
          Matrix<T> tok(n, n);
          switch (t.kind) {
            case TokenKind::coeff:
              if (t.index < 0 || t.index > p.grade())
                throw std::invalid_argument("instantiate: template index exceeds grade");
              tok = p.coeff(t.index);
              break;
            case TokenKind::identity:
              tok = Matrix<T>::identity(n);
              break;
            case TokenKind::zero:
              continue;
            case TokenKind::free_matrix: {
              auto it = bindings.find(t.name);
              if (it == bindings.end())
                throw std::invalid_argument("instantiate: unbound free matrix '" + t.name + "'");
              tok = t.transposed ? it->second.transpose() : it->second;
              if (tok.rows() != n || tok.cols() != n)
                throw std::invalid_argument("instantiate: free matrix shape mismatch");
              break;
            }
          }
          Matrix<T>& dst = inner.coeff_mut(t.lambda_power);
          T w = rational_to<T>(t.weight);
          for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) dst(i * n + r, j * n + c) += tok(r, c) * w;
        }
    return inner;
  }

 private:
  size_t idx(int i, int j) const {
    if (i < 0 || j < 0 || i >= dim_ || j >= dim_)
      throw std::out_of_range("BlockPencilTemplate: block index");
    return static_cast<size_t>(i) * dim_ + j;
  }
  int dim_;
  std::vector<TemplateBlock> grid_;
};

}  // namespace structlin
