#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "koszul/koszul_module.hpp"
#include "koszul/multilinear.hpp"

namespace koszul {

/// The bi-graded Weyman module W^(u+1,v+1) as a Koszul instance:
/// V1 = D^(u+1) U, V2 = D^(v+1) U (n1 = u+2, n2 = v+2) and K the kernel of
/// the dual of iota^2.
struct WeymanInstance {
  int u = 0;
  int v = 0;
  KoszulInstance inst;
};

/// Throws InvariantViolation if dim K != 2(n1+n2) - 4 or the image of the
/// comultiplication D^(u+v+2) U -> V1 (x) V2 is not inside K.
WeymanInstance weyman_instance(int u, int v, FieldSpec field);

/// The instance with K replaced by the image of that comultiplication.
KoszulInstance delta_instance(int u, int v, FieldSpec field);

std::size_t weyman_dim(int u, int v, FieldSpec field, BiDegree b);
CellResult weyman_cell(const WeymanInstance& w, BiDegree b);

struct TwoStepCheck {
  bool contained = false;
  std::size_t image_dim = 0;
  std::size_t quotient_dim = 0;
  /// contained, image_dim = u+v+3 and quotient_dim = u+v+1.
  bool holds = false;
};
TwoStepCheck two_step_check(int u, int v, FieldSpec field);

struct KerPsiCheck {
  std::optional<std::size_t> min_rank;
  /// False only when p > min(u, v) and a nonzero tensor of rank <= 2 exists.
  bool theorem_consistent = true;
};
/// Minimum rank over the image of iota^2 in Sym^u U (x) Sym^v U over GF(p).
KerPsiCheck ker_psi_rank_check(int u, int v, std::uint32_t p, std::uint64_t budget = 10'000'000);

/// 1 (x) x^p - x^p (x) 1 in Sym^u U (x) Sym^v U over GF(p). Throws RangeError
/// if u < p or v < p and InvariantViolation unless it lies in the image of
/// iota^2 and has rank 2.
Vector char_p_witness(int u, int v, std::uint32_t p);

/// Rank of a vector of Sym^u U (x) Sym^v U read as a (u+1) x (v+1) matrix.
std::size_t tensor_rank(const Vector& t, std::size_t w1, std::size_t w2, FieldSpec field);

struct WeymanCell {
  BiDegree bidegree;
  std::size_t dim = 0;
  /// Inside d >= n2-2, e >= n1-2 with char 0 or char >= n1+n2-3.
  bool predicted_zero = false;
};
/// All cells with d <= dmax, e <= emax in (d, e) lex order.
std::vector<WeymanCell> vanishing_table(int u, int v, FieldSpec field, int dmax, int emax);

/// Whether the vanishing theorem covers this characteristic.
bool weyman_theorem_applies(int u, int v, FieldSpec field);

}  // namespace koszul
