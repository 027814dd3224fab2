#include "koszul/koszul_module.hpp"

#include <limits>
#include <random>
#include <sstream>

#include "combinatorics.hpp"
#include "koszul/errors.hpp"
#include "koszul/multilinear.hpp"

namespace koszul {

using detail::SeqIndex;

KoszulInstance::KoszulInstance(std::size_t n1_, std::size_t n2_, Subspace K_, std::string label_)
    : n1(n1_), n2(n2_), field(K_.field()), K(std::move(K_)), label(std::move(label_)) {
  if (n1 < 2 || n2 < 2) throw InputError("Koszul instance needs n1, n2 >= 2");
  if (K.ambient_dim() != n1 * n2) {
    throw InputError("K has ambient dimension " + std::to_string(K.ambient_dim()) + ", expected " +
                     std::to_string(n1 * n2));
  }
}

std::size_t sym_dim(std::size_t n, int d) {
  if (d < 0) return 0;
  if (d == 0) return 1;
  if (n == 0) return 0;
  return binomial(static_cast<long long>(n + static_cast<std::size_t>(d) - 1), d).get_ui();
}

namespace {

// Monomials of Sym^k(k^n) with multiplication tables by the variables.
struct MonomialTable {
  SeqIndex mono;
  // next[s * n + v] = index of (monomial s) * x_v in degree k + 1.
  std::vector<std::size_t> next;
};

MonomialTable monomials(std::size_t n, int k) {
  MonomialTable t;
  t.mono = SeqIndex(detail::multisets(static_cast<int>(n), k));
  if (k < 0) return t;
  const SeqIndex up(detail::multisets(static_cast<int>(n), k + 1));
  t.next.resize(t.mono.size() * n);
  for (std::size_t s = 0; s < t.mono.size(); ++s)
    for (std::size_t v = 0; v < n; ++v) t.next[s * n + v] = up.find(detail::insert_sorted(t.mono[s], static_cast<int>(v)));
  return t;
}

}  // namespace

Matrix alpha_matrix(const KoszulInstance& inst, BiDegree b) {
  const std::size_t n1 = inst.n1, n2 = inst.n2;
  const MonomialTable s1 = monomials(n1, b.d), s2 = monomials(n2, b.e);
  const std::size_t dom_s = s1.mono.size() * s2.mono.size();
  const std::size_t s2_up = sym_dim(n2, b.e + 1), s1_up = sym_dim(n1, b.d + 1);
  const std::size_t block1 = s1.mono.size() * s2_up;  // dim S_{d,e+1}
  const std::size_t block2 = s1_up * s2.mono.size();  // dim S_{d+1,e}
  MatrixBuilder out(inst.field, n1 * block1 + n2 * block2, inst.m() * dom_s);
  const Matrix& span = inst.K.span();
  for (std::size_t k = 0; k < span.rows(); ++k) {
    auto cols = span.row_cols(k);
    auto vals = span.row_values(k);
    for (std::size_t q = 0; q < cols.size(); ++q) {
      const std::size_t i = cols[q] / n2, j = cols[q] % n2;
      const mpq_class neg = -vals[q];
      for (std::size_t m1 = 0; m1 < s1.mono.size(); ++m1) {
        for (std::size_t m2 = 0; m2 < s2.mono.size(); ++m2) {
          const std::size_t col = k * dom_s + m1 * s2.mono.size() + m2;
          // a_i (x) b_j s
          out.add(i * block1 + m1 * s2_up + s2.next[m2 * n2 + j], col, vals[q]);
          // - b_j (x) a_i s
          out.add(n1 * block1 + j * block2 + s1.next[m1 * n1 + i] * s2.mono.size() + m2, col, neg);
        }
      }
    }
  }
  return out.build();
}

Matrix beta_matrix(const KoszulInstance& inst, BiDegree b) {
  const std::size_t n1 = inst.n1, n2 = inst.n2;
  // V1 (x) S_{d,e+1} -> S_{d+1,e+1}
  const MonomialTable s1 = monomials(n1, b.d), s2u = monomials(n2, b.e + 1);
  // V2 (x) S_{d+1,e} -> S_{d+1,e+1}
  const MonomialTable s1u = monomials(n1, b.d + 1), s2 = monomials(n2, b.e);
  const std::size_t block1 = s1.mono.size() * s2u.mono.size();
  const std::size_t block2 = s1u.mono.size() * s2.mono.size();
  const std::size_t target_s2 = sym_dim(n2, b.e + 1);
  MatrixBuilder out(inst.field, sym_dim(n1, b.d + 1) * target_s2, n1 * block1 + n2 * block2);
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t m1 = 0; m1 < s1.mono.size(); ++m1)
      for (std::size_t m2 = 0; m2 < s2u.mono.size(); ++m2)
        out.add(s1.next[m1 * n1 + i] * target_s2 + m2, i * block1 + m1 * s2u.mono.size() + m2, 1LL);
  for (std::size_t j = 0; j < n2; ++j)
    for (std::size_t m1 = 0; m1 < s1u.mono.size(); ++m1)
      for (std::size_t m2 = 0; m2 < s2.mono.size(); ++m2)
        out.add(m1 * target_s2 + s2.next[m2 * n2 + j], n1 * block1 + j * block2 + m1 * s2.mono.size() + m2, 1LL);
  return out.build();
}

CellResult w_dim(const KoszulInstance& inst, BiDegree b) {
  if (b.d < 0 || b.e < 0) throw InputError("bidegree must be non-negative");
  const Matrix alpha = alpha_matrix(inst, b);
  const Matrix beta = beta_matrix(inst, b);
  if (!(beta * alpha).is_zero()) throw ComplexError("beta * alpha is not zero");
  const ComplexRanks r = complex_ranks(alpha, beta);
  CellResult c;
  c.bidegree = b;
  c.rank_alpha = r.rank_f;
  c.nullity_beta = beta.cols() - r.rank_g;
  c.w_dim = c.nullity_beta - c.rank_alpha;
  c.chi = euler_chi(inst, b);
  return c;
}

long long euler_chi(std::size_t n1, std::size_t n2, std::size_t m, BiDegree b) {
  auto S = [&](int d, int e) -> mpz_class { return mpz_class(sym_dim(n1, d)) * mpz_class(sym_dim(n2, e)); };
  const mpz_class chi = mpz_class(n1) * S(b.d, b.e + 1) + mpz_class(n2) * S(b.d + 1, b.e) -
                        S(b.d + 1, b.e + 1) - mpz_class(m) * S(b.d, b.e);
  return chi.get_si();
}

long long euler_chi(const KoszulInstance& inst, BiDegree b) {
  return euler_chi(inst.n1, inst.n2, inst.m(), b);
}

ClosedFormChi closed_form_chi(std::size_t n1, std::size_t n2, BiDegree b) {
  if (n1 < 2 || n2 < 2) throw InputError("closed_form_chi needs n1, n2 >= 2");
  if (b.d < 0 || b.e < 0 || b.d > static_cast<int>(n2) - 2 || b.e > static_cast<int>(n1) - 2) {
    throw RangeError("closed_form_chi is stated for 0 <= d <= n2 - 2 and 0 <= e <= n1 - 2");
  }
  const long long N1 = static_cast<long long>(n1), N2 = static_cast<long long>(n2);
  const long long n = N1 + N2;
  const mpz_class delta1(static_cast<long>(N1 - 2 - b.e)), delta2(static_cast<long>(N2 - 2 - b.d));
  const mpz_class numerator = 2 * binomial(b.d + N1 - 1, b.d) * binomial(b.e + N2 - 1, b.e) *
                              (binomial(N1 - 1, 2) * delta2 + binomial(N2 - 1, 2) * delta1 -
                               mpz_class(static_cast<long>(n - 3)) * delta1 * delta2);
  ClosedFormChi out;
  out.value = mpq_class(numerator, mpz_class((b.d + 1) * (b.e + 1)));
  out.value.canonicalize();
  out.integral = out.value.get_den() == 1;
  out.euler_chi = euler_chi(n1, n2, 2 * (n1 + n2) - 4, b);
  out.anomaly = !out.integral || out.value != mpq_class(static_cast<long>(out.euler_chi));
  return out;
}

VanishingCheck vanishing_check(const KoszulInstance& inst) {
  VanishingCheck v;
  v.corner = BiDegree{static_cast<int>(inst.n2) - 2, static_cast<int>(inst.n1) - 2};
  v.corner_dim = w_dim(inst, v.corner).w_dim;
  v.corner_zero = v.corner_dim == 0;
  return v;
}

Subspace k_perp(const KoszulInstance& inst) { return inst.K.annihilator(); }

SecantResult secant_condition(const KoszulInstance& inst, std::uint64_t budget) {
  if (inst.field.is_rational()) throw InputError("secant_condition needs a prime field");
  SecantResult r;
  if (inst.m() + 4 < 2 * (inst.n1 + inst.n2)) {
    r.method = "dimension";
    r.holds = false;
    return r;
  }
  r.method = "enumeration";
  r.min_rank = min_nonzero_rank(k_perp(inst), inst.n1, inst.n2, budget);
  r.holds = !r.min_rank || *r.min_rank >= 3;
  return r;
}

namespace {

// Uniform integer in [lo, hi] from a 64-bit Mersenne twister by rejection,
// so that draws do not depend on the standard library's distributions.
long long uniform(std::mt19937_64& rng, long long lo, long long hi) {
  const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return lo + static_cast<long long>(x % range);
}

}  // namespace

KoszulInstance random_K(std::size_t n1, std::size_t n2, std::size_t m, FieldSpec field,
                        std::uint64_t seed) {
  if (m > n1 * n2) throw InputError("m exceeds n1 * n2");
  std::mt19937_64 rng(seed);
  const long long lo = field.is_rational() ? -9 : 0;
  const long long hi = field.is_rational() ? 9 : static_cast<long long>(field.characteristic()) - 1;
  for (std::size_t attempt = 0; attempt < 1000; ++attempt) {
    MatrixBuilder b(field, m, n1 * n2);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < n1 * n2; ++c) b.add(r, c, uniform(rng, lo, hi));
    Subspace K = Subspace::row_span(b.build());
    if (K.dim() == m) {
      std::ostringstream label;
      label << "random(" << n1 << "," << n2 << "," << m << "," << field.name() << ",seed=" << seed << ")";
      KoszulInstance inst(n1, n2, std::move(K), label.str());
      inst.redraws = attempt;
      return inst;
    }
  }
  throw InvariantViolation("random_K: no draw of full rank after 1000 attempts");
}

KoszulInstance trace_kernel_instance(std::size_t n, FieldSpec field) {
  MatrixBuilder t(field, 1, n * n);
  for (std::size_t i = 0; i < n; ++i) t.add(0, i * n + i, 1LL);
  return KoszulInstance(n, n, Subspace::row_span(t.build()).annihilator(), "trace-kernel");
}

KoszulInstance rank_one_perp_instance(std::size_t n1, std::size_t n2, FieldSpec field) {
  MatrixBuilder t(field, 1, n1 * n2);
  t.add(0, 0, 1LL);
  return KoszulInstance(n1, n2, Subspace::row_span(t.build()).annihilator(), "rank-one-perp");
}

KoszulInstance parse_k_file(std::istream& in) {
  long long n1, n2, p, m;
  if (!(in >> n1 >> n2 >> p >> m)) throw InputError("K file: expected header 'n1 n2 p m'");
  if (n1 < 2 || n2 < 2 || p < 0 || m < 0) throw InputError("K file: invalid header values");
  if (p > std::numeric_limits<std::uint32_t>::max()) throw InputError("K file: characteristic too large");
  const FieldSpec field(static_cast<std::uint32_t>(p));
  const std::size_t cols = static_cast<std::size_t>(n1 * n2);
  MatrixBuilder b(field, static_cast<std::size_t>(m), cols);
  for (long long r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      long long v;
      if (!(in >> v)) {
        throw InputError("K file: row " + std::to_string(r + 1) + " has fewer than " + std::to_string(cols) +
                         " entries");
      }
      b.add(static_cast<std::size_t>(r), c, v);
    }
  }
  std::string extra;
  if (in >> extra) throw InputError("K file: unexpected trailing data '" + extra + "'");
  Subspace K = Subspace::row_span(b.build());
  if (K.dim() != static_cast<std::size_t>(m)) throw InputError("K file: rows are linearly dependent");
  return KoszulInstance(static_cast<std::size_t>(n1), static_cast<std::size_t>(n2), std::move(K), "k-file");
}

std::uint64_t projective_cohomology(int n, int t, int q) {
  if (n < 0) throw InputError("projective space of negative dimension");
  if (q == 0 && t >= 0) return binomial(n + t, n).get_ui();
  if (q == n && t <= -n - 1) return binomial(-t - 1, n).get_ui();
  return 0;
}

BottCheck bott_vanishing_check(std::size_t n1, std::size_t n2, int r) {
  if (n1 < 2 || n2 < 2) throw InputError("bott_vanishing_check needs n1, n2 >= 2");
  const int N1 = static_cast<int>(n1) - 1, N2 = static_cast<int>(n2) - 1;
  BottCheck out;
  // Sym^s(V) (x) O(-t, -t): summands O(-(s-k) - t, -k - t).
  auto family = [&](int s, int t) {
    if (s < 0) return;
    for (int k = 0; k <= s; ++k) {
      const int i = -(s - k) - t, j = -k - t;
      const mpz_class mult_z = binomial(N1 + k, k) * binomial(N2 + s - k, s - k);
      const std::uint64_t mult = mult_z.get_ui();
      for (int q = 0; q <= N1 + N2; ++q) {
        std::uint64_t h = 0;
        for (int q1 = 0; q1 <= q; ++q1) h += projective_cohomology(N1, i, q1) * projective_cohomology(N2, j, q - q1);
        if (h) {
          out.all_vanish = false;
          out.witnesses.push_back(BottWitness{i, j, q, h, mult});
        }
      }
    }
  };
  family(r, 1);
  family(r - 1, 2);
  return out;
}

}  // namespace koszul
