#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "koszul/linalg.hpp"

namespace koszul {

/// Input of the W(V, K) engine: V1 = k^n1, V2 = k^n2 with bases a_i, b_j,
/// and K a subspace of V1 (x) V2 in the basis a_i (x) b_j (i-major).
struct KoszulInstance {
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  FieldSpec field;
  Subspace K;
  std::string label;
  /// Number of rejected draws when the instance came from random_K.
  std::size_t redraws = 0;

  /// Checks n1, n2 >= 2 and the ambient dimension of K (InputError).
  KoszulInstance(std::size_t n1, std::size_t n2, Subspace K, std::string label = {});
  std::size_t m() const { return K.dim(); }
};

struct BiDegree {
  int d = 0;
  int e = 0;
  friend bool operator==(const BiDegree&, const BiDegree&) = default;
  friend auto operator<=>(const BiDegree&, const BiDegree&) = default;
};

struct CellResult {
  BiDegree bidegree;
  std::size_t w_dim = 0;
  long long chi = 0;
  std::size_t rank_alpha = 0;
  std::size_t nullity_beta = 0;
};

/// dim Sym^d(k^n).
std::size_t sym_dim(std::size_t n, int d);

/// K (x) S_{d,e} -> V1 (x) S_{d,e+1} + V2 (x) S_{d+1,e}. The domain basis is
/// (basis row of K) x monomial, the codomain lists the V1 block first.
Matrix alpha_matrix(const KoszulInstance& inst, BiDegree b);
/// V1 (x) S_{d,e+1} + V2 (x) S_{d+1,e} -> S_{d+1,e+1}, multiplication.
Matrix beta_matrix(const KoszulInstance& inst, BiDegree b);

CellResult w_dim(const KoszulInstance& inst, BiDegree b);
/// Signed dimension count of the bidegree (d, e) complex.
long long euler_chi(const KoszulInstance& inst, BiDegree b);
long long euler_chi(std::size_t n1, std::size_t n2, std::size_t m, BiDegree b);

/// Literal evaluation of the closed formula for the Hilbert function when
/// m = 2n - 4, for d <= n2 - 2 and e <= n1 - 2 (RangeError otherwise).
struct ClosedFormChi {
  mpq_class value;
  bool integral = false;
  long long euler_chi = 0;
  /// Set when the value is not an integer or differs from euler_chi.
  bool anomaly = false;
};
ClosedFormChi closed_form_chi(std::size_t n1, std::size_t n2, BiDegree b);

struct VanishingCheck {
  bool corner_zero = false;
  BiDegree corner;
  std::size_t corner_dim = 0;
};
/// Evaluates W at the corner (n2 - 2, n1 - 2).
VanishingCheck vanishing_check(const KoszulInstance& inst);

/// K^perp inside V1^* (x) V2^* in the dual basis.
Subspace k_perp(const KoszulInstance& inst);

struct SecantResult {
  bool holds = false;
  /// "dimension" when m < 2n - 4 decides the answer, else "enumeration".
  std::string method;
  /// Minimum rank found in K^perp by enumeration, if any.
  std::optional<std::size_t> min_rank;
};
/// Whether K^perp avoids all nonzero tensors of rank <= 2. Requires a prime
/// field; throws BudgetExceeded when p^(n1 n2 - m) exceeds `budget`.
SecantResult secant_condition(const KoszulInstance& inst, std::uint64_t budget = 10'000'000);

/// Seeded instance with entries uniform in [0, p) or in {-9..9} over QQ;
/// redraws until the span has dimension m.
KoszulInstance random_K(std::size_t n1, std::size_t n2, std::size_t m, FieldSpec field,
                        std::uint64_t seed);

/// K^perp spanned by the trace form sum_i a_i^* (x) b_i^* (n1 = n2).
KoszulInstance trace_kernel_instance(std::size_t n, FieldSpec field);
/// K^perp spanned by the rank-one tensor a_0^* (x) b_0^*.
KoszulInstance rank_one_perp_instance(std::size_t n1, std::size_t n2, FieldSpec field);

/// Parses "n1 n2 p m" followed by m rows of n1*n2 integers.
KoszulInstance parse_k_file(std::istream& in);

/// Cohomology of O(i, j) on P^(n1-1) x P^(n2-1) for the line bundles making
/// up Sym^r(V) (x) O(-1,-1) and Sym^(r-1)(V) (x) O(-2,-2), where
/// V = V1^* (x) O(0,-1) + V2^* (x) O(-1,0).
struct BottWitness {
  int i = 0;
  int j = 0;
  int q = 0;
  std::uint64_t dim = 0;
  std::uint64_t multiplicity = 0;
};
struct BottCheck {
  bool all_vanish = true;
  std::vector<BottWitness> witnesses;
};
/// h^q(P^n, O(t)).
std::uint64_t projective_cohomology(int n, int t, int q);
BottCheck bott_vanishing_check(std::size_t n1, std::size_t n2, int r);

}  // namespace koszul
