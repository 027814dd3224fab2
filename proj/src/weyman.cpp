#include "koszul/weyman.hpp"

#include <algorithm>
#include <string>

#include "koszul/errors.hpp"

namespace koszul {

namespace {

void check_uv(int u, int v) {
  if (u < 0 || v < 0) throw InputError("Weyman module needs u, v >= 0");
}

std::string uv_label(const char* what, int u, int v) {
  return std::string(what) + "(" + std::to_string(u) + "," + std::to_string(v) + ")";
}

Subspace delta_image(int u, int v, FieldSpec field) {
  return Subspace::column_span(comult_div(u + 1, v + 1, field).matrix);
}

}  // namespace

WeymanInstance weyman_instance(int u, int v, FieldSpec field) {
  check_uv(u, v);
  const std::size_t n1 = static_cast<std::size_t>(u) + 2, n2 = static_cast<std::size_t>(v) + 2;
  Subspace K = weyman_K(u + 1, v + 1, field);
  if (K.dim() != 2 * (n1 + n2) - 4) {
    throw InvariantViolation("weyman_K(" + std::to_string(u + 1) + "," + std::to_string(v + 1) +
                             ") has dimension " + std::to_string(K.dim()) + ", expected " +
                             std::to_string(2 * (n1 + n2) - 4));
  }
  if (!K.contains(delta_image(u, v, field))) {
    throw InvariantViolation("image of the comultiplication is not contained in weyman_K");
  }
  return WeymanInstance{u, v, KoszulInstance(n1, n2, std::move(K), uv_label("weyman", u, v))};
}

KoszulInstance delta_instance(int u, int v, FieldSpec field) {
  check_uv(u, v);
  return KoszulInstance(static_cast<std::size_t>(u) + 2, static_cast<std::size_t>(v) + 2,
                        delta_image(u, v, field), uv_label("delta", u, v));
}

CellResult weyman_cell(const WeymanInstance& w, BiDegree b) { return w_dim(w.inst, b); }

std::size_t weyman_dim(int u, int v, FieldSpec field, BiDegree b) {
  return w_dim(weyman_instance(u, v, field).inst, b).w_dim;
}

TwoStepCheck two_step_check(int u, int v, FieldSpec field) {
  check_uv(u, v);
  const Subspace K = weyman_K(u + 1, v + 1, field);
  const Subspace image = delta_image(u, v, field);
  TwoStepCheck out;
  out.contained = K.contains(image);
  out.image_dim = image.dim();
  out.quotient_dim = K.dim() - std::min(K.dim(), image.dim());
  const auto uv = static_cast<std::size_t>(u + v);
  out.holds = out.contained && out.image_dim == uv + 3 && out.quotient_dim == uv + 1;
  return out;
}

KerPsiCheck ker_psi_rank_check(int u, int v, std::uint32_t p, std::uint64_t budget) {
  if (u < 0 || v < 0) throw InputError("ker_psi_rank_check needs u, v >= 0");
  const FieldSpec field(p);
  if (field.is_rational()) throw InputError("ker_psi_rank_check needs a prime field");
  KerPsiCheck out;
  out.min_rank = min_nonzero_rank(psi_kernel(u, v, field), static_cast<std::size_t>(u) + 1,
                                  static_cast<std::size_t>(v) + 1, budget);
  if (p > static_cast<std::uint32_t>(std::min(u, v))) {
    out.theorem_consistent = !out.min_rank || *out.min_rank >= 3;
  }
  return out;
}

std::size_t tensor_rank(const Vector& t, std::size_t w1, std::size_t w2, FieldSpec field) {
  if (t.size() != w1 * w2) throw InputError("tensor_rank: vector length is not w1 * w2");
  MatrixBuilder b(field, w1, w2);
  for (std::size_t k = 0; k < t.size(); ++k) b.add(k / w2, k % w2, t[k]);
  return rank(b.build());
}

Vector char_p_witness(int u, int v, std::uint32_t p) {
  const FieldSpec field(p);
  if (field.is_rational()) throw InputError("char_p_witness needs a prime field");
  if (u < static_cast<int>(p) || v < static_cast<int>(p)) {
    throw RangeError("char_p_witness needs u, v >= p");
  }
  const LinMap iota = iota_power(u, v, static_cast<int>(p), field);
  Vector w(iota.matrix.rows());
  for (std::size_t r = 0; r < iota.matrix.rows(); ++r) w[r] = iota.matrix.at(r, 0);
  if (!psi_kernel(u, v, field).contains(w)) {
    throw InvariantViolation("char_p_witness is not in the image of iota^2");
  }
  const std::size_t r = tensor_rank(w, static_cast<std::size_t>(u) + 1, static_cast<std::size_t>(v) + 1, field);
  if (r != 2) throw InvariantViolation("char_p_witness has rank " + std::to_string(r));
  return w;
}

bool weyman_theorem_applies(int u, int v, FieldSpec field) {
  const auto n1 = static_cast<std::uint32_t>(u + 2), n2 = static_cast<std::uint32_t>(v + 2);
  return field.is_rational() || field.characteristic() >= n1 + n2 - 3;
}

std::vector<WeymanCell> vanishing_table(int u, int v, FieldSpec field, int dmax, int emax) {
  const WeymanInstance w = weyman_instance(u, v, field);
  const bool applies = weyman_theorem_applies(u, v, field);
  std::vector<WeymanCell> out;
  for (int d = 0; d <= dmax; ++d) {
    for (int e = 0; e <= emax; ++e) {
      WeymanCell c;
      c.bidegree = {d, e};
      c.dim = w_dim(w.inst, c.bidegree).w_dim;
      c.predicted_zero = applies && d >= v && e >= u;
      out.push_back(c);
    }
  }
  return out;
}

}  // namespace koszul
