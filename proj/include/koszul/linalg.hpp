#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "koszul/matrix.hpp"

namespace koszul {

using Vector = std::vector<mpq_class>;

/// Reduced row-echelon form of the row space: nonzero rows only, leading
/// entries equal to one, `pivots[i]` the leading column of row i.
struct Rref {
  Matrix rows;
  std::vector<std::size_t> pivots;
};

Rref rref(const Matrix& m);

/// Exact rank over the matrix's field.
std::size_t rank(const Matrix& m);

/// A linear subspace of field^n, stored as the reduced row-echelon basis of
/// its row span. Two subspaces are equal iff their bases are identical.
class Subspace {
 public:
  Subspace() = default;
  Subspace(FieldSpec field, std::size_t ambient_dim);  // zero subspace

  static Subspace row_span(const Matrix& m);
  static Subspace column_span(const Matrix& m);
  static Subspace full(FieldSpec field, std::size_t n);

  FieldSpec field() const noexcept { return span_.field(); }
  std::size_t ambient_dim() const noexcept { return span_.cols(); }
  std::size_t dim() const noexcept { return span_.rows(); }
  const Matrix& span() const noexcept { return span_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  /// Coordinates of v in the echelon basis, or nullopt if v is not in the
  /// subspace.
  std::optional<Vector> coordinates(const Vector& v) const;
  bool contains(const Vector& v) const { return coordinates(v).has_value(); }
  bool contains(const Subspace& other) const;
  /// Vectors pairing to zero with every vector of this subspace under the
  /// standard dot product.
  Subspace annihilator() const;
  Subspace sum(const Subspace& other) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.span_ == b.span_;
  }

 private:
  explicit Subspace(Rref r) : span_(std::move(r.rows)), pivots_(std::move(r.pivots)) {}

  Matrix span_;
  std::vector<std::size_t> pivots_;
};

/// ker(m) for m acting on column vectors.
Subspace kernel_basis(const Matrix& m);

/// Canonical particular solution of m x = b: free variables of the reduced
/// echelon form set to zero. nullopt when the system is inconsistent.
std::optional<Vector> solve(const Matrix& m, const Vector& b);

struct SolveManyResult {
  Matrix solutions;            // cols() = number of right-hand sides
  std::vector<bool> solvable;  // per right-hand side
};
/// Solves m X = rhs column by column; unsolvable columns are left zero.
SolveManyResult solve_many(const Matrix& m, const Matrix& rhs);

/// dim(ker g / im f) for a complex  A --f--> B --g--> C.
/// Throws ComplexError unless g * f == 0.
std::size_t homology_dim(const Matrix& f, const Matrix& g);

/// Rank of g together with rank of f, computed for a complex. Equivalent to
/// two calls to rank() but able to reuse the complex structure.
struct ComplexRanks {
  std::size_t rank_f;
  std::size_t rank_g;
};
ComplexRanks complex_ranks(const Matrix& f, const Matrix& g);

/// Rows of `candidates` (in order) that extend a basis of span(base); the
/// result spans a complement of span(base) inside span(base) + span(candidates).
std::vector<std::size_t> extending_rows(const Matrix& base, const Matrix& candidates);

}  // namespace koszul
