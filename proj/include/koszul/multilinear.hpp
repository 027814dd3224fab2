#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "koszul/linalg.hpp"

namespace koszul {

/// Symbolic description of a finite-dimensional space built from the
/// two-dimensional space U = k{1, x}. Negative degrees give the zero space.
class SpaceExpr {
 public:
  enum class Kind { SymU, DivU, WedgeOf, SymOf, Tensor, Sum };

  static SpaceExpr sym_u(int d);
  static SpaceExpr div_u(int d);
  static SpaceExpr wedge(int i, const SpaceExpr& inner);
  static SpaceExpr sym_of(int d, const SpaceExpr& inner);
  /// Nested tensor products are flattened; a single factor is returned as is.
  static SpaceExpr tensor(const std::vector<SpaceExpr>& factors);
  static SpaceExpr sum(const std::vector<SpaceExpr>& parts);

  Kind kind() const { return node_->kind; }
  int degree() const { return node_->degree; }
  /// Inner space for WedgeOf/SymOf, factors for Tensor, summands for Sum.
  const std::vector<SpaceExpr>& parts() const { return node_->parts; }
  std::size_t dim() const { return node_->dim; }
  std::string to_string() const;

  friend bool operator==(const SpaceExpr& a, const SpaceExpr& b);

 private:
  struct Node {
    Kind kind;
    int degree = 0;
    std::vector<SpaceExpr> parts;
    std::size_t dim = 0;
  };
  explicit SpaceExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Label of one basis vector:
///  SymU/DivU: ints = {k} for x^k resp. x^(k);
///  WedgeOf: ints = strictly increasing indices into the inner basis;
///  SymOf: ints = nondecreasing indices into the inner basis;
///  Tensor: parts = one label per factor;
///  Sum: tag = summand number, parts = {label inside the summand}.
struct BasisIndex {
  int tag = -1;
  std::vector<int> ints;
  std::vector<BasisIndex> parts;

  std::string to_string() const;
  friend bool operator==(const BasisIndex& a, const BasisIndex& b);
  friend bool operator<(const BasisIndex& a, const BasisIndex& b);
};

/// Canonical ordered basis.
///  SymU/DivU: exponents ascending. WedgeOf: index sets in lexicographic
///  order, except that a wedge power of a Sum is enumerated summand-block by
///  summand-block as the sum over (u_1, ..., u_r) of the tensor products of
///  the wedge powers of the summands, compositions in increasing
///  lexicographic order. SymOf: multisets in lexicographic order. Tensor:
///  left-major. Sum: summands in order.
std::vector<BasisIndex> enumerate_basis(const SpaceExpr& s);

/// An enumerated basis with reverse lookup.
class Basis {
 public:
  explicit Basis(const SpaceExpr& s);
  std::size_t size() const { return labels_.size(); }
  const BasisIndex& operator[](std::size_t i) const { return labels_[i]; }
  /// Throws InvariantViolation for unknown labels.
  std::size_t index(const BasisIndex& b) const;
  std::optional<std::size_t> find(const BasisIndex& b) const;

 private:
  std::vector<BasisIndex> labels_;
  std::map<BasisIndex, std::size_t> lookup_;
};

/// A matrix together with the spaces it maps between (columns index the
/// domain basis, rows the codomain basis).
struct LinMap {
  SpaceExpr domain;
  SpaceExpr codomain;
  Matrix matrix;

  LinMap(SpaceExpr dom, SpaceExpr cod, Matrix m);
  FieldSpec field() const { return matrix.field(); }
};

/// g after f. Throws InputError when f's codomain is not g's domain.
LinMap compose(const LinMap& g, const LinMap& f);
/// f (x) g on the tensor product of domains.
LinMap tensor(const LinMap& f, const LinMap& g);
LinMap identity_map(const SpaceExpr& s, FieldSpec f);
/// Reorders tensor factors: factor k of the result is factor perm[k] of the
/// input.
LinMap permute_factors(const std::vector<SpaceExpr>& factors, const std::vector<std::size_t>& perm,
                       FieldSpec f);

/// x^i (x) x^j -> x^(i+j) : Sym^u U (x) Sym^v U -> Sym^(u+v) U.
LinMap mult_sym(int u, int v, FieldSpec f);
/// x^(k) -> sum_(a+b=k) x^(a) (x) x^(b) : D^(u+v) U -> D^u U (x) D^v U.
LinMap comult_div(int u, int v, FieldSpec f);
/// Exterior comultiplication Wedge^(u+v) E -> Wedge^u E (x) Wedge^v E,
/// e_S -> sum over S = S1 u S2, |S1| = u, of sign(S1, S2) e_S1 (x) e_S2.
LinMap comult_wedge(int u, int v, const SpaceExpr& e, FieldSpec f);
/// f (x) g -> sum_i (-1)^i C(t,i) x^i f (x) x^(t-i) g :
/// Sym^(u-t) U (x) Sym^(v-t) U -> Sym^u U (x) Sym^v U.
LinMap iota_power(int u, int v, int t, FieldSpec f);
/// x^(i) (x) x^(j) -> x^(i-1) (x) x^(j) - x^(i) (x) x^(j-1) :
/// D^u U (x) D^v U -> D^(u-1) U (x) D^(v-1) U. This is minus the transpose of
/// iota_power(u, v, 1) under the pairing <x^(k), x^j> = delta_kj.
LinMap iota_dual(int u, int v, FieldSpec f);
/// Image of iota_power(u, v, 2) inside Sym^u U (x) Sym^v U.
Subspace psi_kernel(int u, int v, FieldSpec f);
/// Kernel of iota_dual(u-1, v-1) o iota_dual(u, v) inside D^u U (x) D^v U.
Subspace weyman_K(int u, int v, FieldSpec f);
/// nu : D^d U (x) Wedge^d(Sym^e U) -> Wedge^d(Sym^(e+1) U),
/// x^(j) (x) x^k1 ^ ... ^ x^kd -> sum over j-subsets P of positions of
/// the wedge of x^(k_r + [r in P]).
LinMap nu(int d, int e, FieldSpec f);
/// Hermite reciprocity Sym^d(D^i U) -> Wedge^i(Sym^(d+i-1) U), sending
/// w_1 ... w_d to nu(w_1, nu(w_2, ..., nu(w_d, 1 ^ x ^ ... ^ x^(i-1)))).
LinMap hermite_iso(int d, int i, FieldSpec f);

/// Matrices of the substitution x -> x + 1 (1 -> 1) on the basic spaces and
/// on Sym/Wedge powers of them, used to test equivariance.
Matrix unipotent_action(const SpaceExpr& s, FieldSpec f);
/// Total x-degree of a basis vector (the torus weight up to a shift).
int x_weight(const SpaceExpr& s, const BasisIndex& b);

/// Minimum matrix rank of a nonzero vector of t reshaped as w1 x w2
/// (row-major), or nullopt for the zero subspace. Requires a prime field;
/// throws BudgetExceeded when p^dim(t) exceeds `budget`.
std::optional<std::size_t> min_nonzero_rank(const Subspace& t, std::size_t w1, std::size_t w2,
                                            std::uint64_t budget = 10'000'000);

}  // namespace koszul
