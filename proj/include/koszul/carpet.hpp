#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "koszul/koszul_module.hpp"

namespace koszul {

/// R = Sym(Sym^a U (+) Sym^b U) with variables y_0..y_a of bidegree (1,0) and
/// z_0..z_b of bidegree (0,1); y_s and z_t evaluate to x^s and x^t. B = R/I is
/// the scroll ring with B_(d,e) = Sym^(da+eb) U and Omega is its canonical
/// module, Omega_(d,e) = Sym^(da+eb-2) U for d, e >= 1 and zero otherwise.
struct CarpetInstance {
  int a = 1;
  int b = 1;
  FieldSpec field;

  /// Throws InputError unless a, b >= 1.
  CarpetInstance(int a, int b, FieldSpec field);
};

enum class ModuleKind { R, B, I, Omega };
const char* to_string(ModuleKind kind);

/// Variables are numbered y_0..y_a, then z_0..z_b.
enum class VariableBlock { First, Second };

struct TorCell {
  ModuleKind kind = ModuleKind::R;
  int i = 0;
  BiDegree bidegree;
  std::size_t dim = 0;
  /// Dimension of the Koszul chain group at position i.
  std::size_t chain_dim = 0;
  /// Ranks of the incoming and outgoing differentials.
  std::size_t rank_in = 0;
  std::size_t rank_out = 0;
};

/// The map Tor_i(I)_b -> Tor_i(Omega)_b induced by phi.
struct TorMap {
  std::size_t source_dim = 0;
  std::size_t target_dim = 0;
  std::size_t rank = 0;
  std::size_t kernel_dim() const { return source_dim - rank; }
  std::size_t cokernel_dim() const { return target_dim - rank; }
};

struct BettiEntry {
  int i = 0;
  int j = 0;
  std::size_t dim = 0;
  /// (d, e) with d + e = j and a nonzero contribution, in lex order.
  std::vector<std::pair<BiDegree, std::size_t>> bigraded;
};

struct ScrollTorCheck {
  std::size_t linear = 0;     // dim Tor_i(B)_(i+1)
  std::size_t quadratic = 0;  // dim Tor_i(B)_(i+2)
  std::uint64_t expected_linear = 0;
  bool holds = false;
};

struct WeymanCrossCheck {
  std::size_t carpet = 0;
  std::size_t weyman = 0;
  bool agree() const { return carpet == weyman; }
};

/// Computation of Tor over R of B, I, Omega and of the carpet A, an extension
/// of B by Omega classified by phi : I -> Omega. Results are cached; all
/// methods are safe to call concurrently.
class Carpet {
 public:
  explicit Carpet(CarpetInstance inst);
  ~Carpet();
  Carpet(const Carpet&) = delete;
  Carpet& operator=(const Carpet&) = delete;

  const CarpetInstance& instance() const { return inst_; }
  std::size_t num_variables() const { return static_cast<std::size_t>(inst_.a + inst_.b + 2); }

  std::size_t module_dim(ModuleKind kind, BiDegree b) const;
  /// R_(d,e) -> B_(d,e): monomial to x^(sum of indices).
  Matrix eval_map(BiDegree b) const;
  /// I_(d,e) inside R_(d,e), in reduced echelon form.
  const Subspace& ideal_piece(BiDegree b) const;
  /// Multiplication by variable `var` : M_(d,e) -> M_(d+1,e) or M_(d,e+1).
  Matrix variable_action(ModuleKind kind, std::size_t var, BiDegree b) const;
  /// Sym^a U (x) M_(d,e) -> M_(d+1,e) (First) or Sym^b U (x) M_(d,e) ->
  /// M_(d,e+1) (Second); the domain is variable-major.
  Matrix module_action(ModuleKind kind, VariableBlock block, BiDegree b) const;

  /// The 2x2 minors of the 2 x (a+b) matrix with columns (y_s, y_(s+1)),
  /// s < a, then (z_t, z_(t+1)), t < b: the pure y minors in R_(2,0), the
  /// mixed minors y_s z_(t+1) - y_(s+1) z_t in R_(1,1) ((s,t) left-major),
  /// the pure z minors in R_(0,2). Each is a row of the returned matrix over
  /// the respective piece.
  Matrix generators(BiDegree b) const;
  /// phi on the generator space Wedge^2 Sym^(a-1) U (+) Sym^(a-1) U (x)
  /// Sym^(b-1) U (+) Wedge^2 Sym^(b-1) U -> Sym^(a+b-2) U: zero on the pure
  /// minors, x^s (x) x^t -> x^(s+t) on the mixed ones.
  Matrix phi_on_generators() const;
  /// phi : I_(d,e) -> Omega_(d,e) in the echelon basis of I_(d,e). Throws
  /// LiftError if a basis vector is not a combination of generator multiples.
  const Matrix& phi_at(BiDegree b) const;
  /// phi_at computed from a lift over generators taken in `order` (a
  /// permutation of the generator list); used to test independence of the lift.
  Matrix phi_at_with_order(BiDegree b, const std::vector<std::size_t>& order) const;
  std::size_t num_generators() const;

  /// Koszul differential Wedge^j(R_1) (x) M -> Wedge^(j-1)(R_1) (x) M in
  /// internal bidegree b. Terms are indexed by (s, t) = (#y, #z), then by the
  /// y-subset, the z-subset and the basis of M_(d-s,e-t).
  Matrix koszul_differential(ModuleKind kind, int j, BiDegree b) const;
  std::size_t koszul_term_dim(ModuleKind kind, int j, BiDegree b) const;
  /// Tor_i^R(M, k)_b as Koszul homology. Throws ComplexError if the
  /// differentials do not compose to zero.
  TorCell koszul_tor(ModuleKind kind, int i, BiDegree b) const;
  /// Sum over all bidegrees of total degree `total`.
  std::size_t koszul_tor_total(ModuleKind kind, int i, int total) const;
  /// Chain map id (x) phi_at between the Koszul complexes of I and Omega.
  Matrix chain_map(int i, BiDegree b) const;
  TorMap tor_map_phi(int i, BiDegree b) const;

  /// dim Tor_i^R(A, k)_b from the long exact sequence of 0 -> Omega -> A -> B -> 0.
  std::size_t tor_A(int i, BiDegree b) const;
  std::size_t tor_A_total(int i, int total) const;
  /// Strands j = i+1 and j = i+2 for 1 <= i <= imax.
  std::vector<BettiEntry> betti_table(int imax) const;

  /// dim Tor_i(B)_(i+1) = i C(a+b, i+1) and Tor_i(B)_(i+2) = 0.
  ScrollTorCheck scroll_tor_check(int i) const;
  /// tor_A(u+v, (u+1, v+1)) against the Weyman module W^(u+1,v+1) at
  /// (a-1-u, b-1-v). Requires u <= a-1 and v <= b-1 (RangeError).
  WeymanCrossCheck cross_check_weyman(int u, int v) const;

 private:
  struct Layout;
  struct Caches;

  const Layout& layout(ModuleKind kind, int j, BiDegree b) const;
  Matrix phi_lift(BiDegree b, const std::vector<std::size_t>& order) const;

  CarpetInstance inst_;
  std::unique_ptr<Caches> caches_;
};

/// i C(a+b, i+1).
std::uint64_t scroll_tor_dim(int a, int b, int i);
/// (a+b-1-u-v) C(a, u) C(b, v): dim Tor_(u+v)(Omega)_(u+1,v+1).
std::uint64_t canonical_tor_dim(int a, int b, int u, int v);
/// (u+v+1) C(a, u+1) C(b, v+1): dim Tor_(u+v)(I)_(u+1,v+1).
std::uint64_t ideal_tor_dim(int a, int b, int u, int v);

struct HilbertA {
  /// dim A_n for n = 0..nmax, summed from dim B_(i,j) + dim Omega_(i,j).
  std::vector<std::uint64_t> dims;
  /// Coefficients of (1-t)^3 sum dim A_n t^n up to t^nmax.
  std::vector<long long> numerator;
};
/// Throws InvariantViolation unless dim A_n = n^2 (a+b) + 2 for n >= 1 and the
/// numerator is 1 + (a+b-1) t + (a+b-1) t^2 + t^3.
HilbertA hilbert_A(int a, int b, int nmax);

}  // namespace koszul
