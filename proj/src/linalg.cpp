#include "koszul/linalg.hpp"

#include <algorithm>
#include <numeric>

#include "echelon.hpp"
#include "koszul/errors.hpp"

namespace koszul {

namespace {

using detail::ModP;
using detail::Rat;
using detail::SparseEchelon;
using detail::SparseRow;

// Prime used to certify full rank of rational matrices: the rank mod p of a
// matrix with p-integral entries never exceeds its rank over QQ.
constexpr std::uint32_t kCertPrime = 2147483647u;
// Components whose dense footprint stays below this many entries are
// eliminated densely mod p.
constexpr std::size_t kDenseArea = std::size_t{4} << 20;

struct Component {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
};

struct Split {
  std::vector<Component> comps;
  // Position of each column inside its component.
  std::vector<std::size_t> local;
};

std::size_t find(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

// Connected components of the bipartite row/column incidence graph. Rows
// and columns without entries are omitted.
Split split_components(const Matrix& m) {
  const std::size_t nr = m.rows(), nc = m.cols();
  std::vector<std::size_t> parent(nr + nc);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  std::vector<char> col_used(nc, 0);
  for (std::size_t r = 0; r < nr; ++r) {
    for (std::size_t c : m.row_cols(r)) {
      col_used[c] = 1;
      std::size_t a = find(parent, r), b = find(parent, nr + c);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<std::size_t> index(nr + nc, SIZE_MAX);
  std::vector<Component> comps;
  auto slot = [&](std::size_t node) -> Component& {
    const std::size_t root = find(parent, node);
    if (index[root] == SIZE_MAX) {
      index[root] = comps.size();
      comps.emplace_back();
    }
    return comps[index[root]];
  };
  for (std::size_t r = 0; r < nr; ++r) {
    if (!m.row_cols(r).empty()) slot(r).rows.push_back(r);
  }
  std::vector<std::size_t> local(nc, 0);
  for (std::size_t c = 0; c < nc; ++c) {
    if (!col_used[c]) continue;
    Component& comp = slot(nr + c);
    local[c] = comp.cols.size();
    comp.cols.push_back(c);
  }
  return {std::move(comps), std::move(local)};
}

std::uint32_t to_residue(const mpq_class& v, std::uint32_t p, bool& ok) {
  if (v.get_den() == 1 && v.get_num().fits_ulong_p()) {
    return static_cast<std::uint32_t>(v.get_num().get_ui() % p);
  }
  mpz_class den;
  mpz_fdiv_r_ui(den.get_mpz_t(), v.get_den_mpz_t(), p);
  if (den == 0) {
    ok = false;
    return 0;
  }
  mpz_class num;
  mpz_fdiv_r_ui(num.get_mpz_t(), v.get_num_mpz_t(), p);
  const std::uint64_t d_inv = inverse_mod(static_cast<std::uint32_t>(den.get_ui()), p);
  return static_cast<std::uint32_t>(num.get_ui() * d_inv % p);
}

// A component restricted to local column indices.
class LocalView {
 public:
  LocalView(const Matrix& m, const Component& comp, const std::vector<std::size_t>& local)
      : m_(m), comp_(comp), local_(local) {}

  std::size_t nrows() const { return comp_.rows.size(); }
  std::size_t ncols() const { return comp_.cols.size(); }

  template <class Fn>
  void for_row(std::size_t i, Fn&& fn) const {
    const std::size_t r = comp_.rows[i];
    auto cs = m_.row_cols(r);
    auto vs = m_.row_values(r);
    for (std::size_t k = 0; k < cs.size(); ++k) fn(local_[cs[k]], vs[k]);
  }

  // Residues mod p; `ok` turns false if some denominator vanishes mod p.
  std::vector<SparseRow<std::uint32_t>> modp_rows(std::uint32_t p, bool& ok) const {
    std::vector<SparseRow<std::uint32_t>> out(nrows());
    for (std::size_t i = 0; i < nrows(); ++i) {
      for_row(i, [&](std::size_t c, const mpq_class& v) {
        const std::uint32_t x = to_residue(v, p, ok);
        if (x != 0) {
          out[i].cols.push_back(static_cast<std::uint32_t>(c));
          out[i].vals.push_back(x);
        }
      });
    }
    return out;
  }

  std::vector<SparseRow<mpq_class>> rational_rows() const {
    std::vector<SparseRow<mpq_class>> out(nrows());
    for (std::size_t i = 0; i < nrows(); ++i) {
      for_row(i, [&](std::size_t c, const mpq_class& v) {
        out[i].cols.push_back(static_cast<std::uint32_t>(c));
        out[i].vals.push_back(v);
      });
    }
    return out;
  }

 private:
  const Matrix& m_;
  const Component& comp_;
  const std::vector<std::size_t>& local_;
};

template <class T>
std::vector<std::size_t> sparsest_first(const std::vector<SparseRow<T>>& rows) {
  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return rows[a].size() < rows[b].size(); });
  return order;
}

std::vector<std::uint32_t> densify(const std::vector<SparseRow<std::uint32_t>>& rows,
                                   std::size_t ncols) {
  std::vector<std::uint32_t> a(rows.size() * ncols, 0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t k = 0; k < rows[i].size(); ++k) a[i * ncols + rows[i].cols[k]] = rows[i].vals[k];
  }
  return a;
}

std::size_t modp_rank(const std::vector<SparseRow<std::uint32_t>>& rows, std::size_t ncols,
                      std::uint32_t p) {
  if (rows.size() * ncols <= kDenseArea) {
    auto a = densify(rows, ncols);
    return detail::dense_eliminate(a, rows.size(), ncols, p, false).size();
  }
  SparseEchelon<ModP> ech(ModP{p}, ncols);
  for (std::size_t i : sparsest_first(rows)) {
    ech.insert(rows[i]);
    if (ech.rank() == ncols) break;
  }
  return ech.rank();
}

std::vector<SparseRow<std::uint32_t>> modp_rref(const std::vector<SparseRow<std::uint32_t>>& rows,
                                                std::size_t ncols, std::uint32_t p) {
  if (rows.size() * ncols <= kDenseArea) {
    auto a = densify(rows, ncols);
    const auto pivots = detail::dense_eliminate(a, rows.size(), ncols, p, true);
    std::vector<SparseRow<std::uint32_t>> out(pivots.size());
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      for (std::size_t c = pivots[i]; c < ncols; ++c) {
        const std::uint32_t v = a[i * ncols + c];
        if (v != 0) {
          out[i].cols.push_back(static_cast<std::uint32_t>(c));
          out[i].vals.push_back(v);
        }
      }
    }
    return out;
  }
  SparseEchelon<ModP> ech(ModP{p}, ncols);
  for (std::size_t i : sparsest_first(rows)) {
    ech.insert(rows[i]);
    if (ech.rank() == ncols) break;
  }
  return ech.reduced_rows();
}

std::size_t rational_rank(const std::vector<SparseRow<mpq_class>>& rows, std::size_t ncols) {
  SparseEchelon<Rat> ech(Rat{}, ncols);
  for (std::size_t i : sparsest_first(rows)) {
    ech.insert(rows[i]);
    if (ech.rank() == ncols) break;
  }
  return ech.rank();
}

std::vector<SparseRow<mpq_class>> rational_rref(const std::vector<SparseRow<mpq_class>>& rows,
                                                std::size_t ncols) {
  SparseEchelon<Rat> ech(Rat{}, ncols);
  for (std::size_t i : sparsest_first(rows)) {
    ech.insert(rows[i]);
    if (ech.rank() == ncols) break;
  }
  return ech.reduced_rows();
}

struct ComponentRank {
  std::size_t value;
  bool exact;
};

// Over GF(p) the rank is exact. Over QQ the rank mod kCertPrime is a lower
// bound which is exact when it reaches min(rows, cols).
ComponentRank component_rank_estimate(const LocalView& view, FieldSpec f) {
  if (!f.is_rational()) {
    bool ok = true;
    return {modp_rank(view.modp_rows(f.characteristic(), ok), view.ncols(), f.characteristic()),
            true};
  }
  bool ok = true;
  auto rows = view.modp_rows(kCertPrime, ok);
  if (!ok) return {0, false};
  const std::size_t r = modp_rank(rows, view.ncols(), kCertPrime);
  return {r, r == std::min(view.nrows(), view.ncols())};
}

std::size_t component_rank_exact(const LocalView& view) {
  return rational_rank(view.rational_rows(), view.ncols());
}

// Rank of m, given a proven upper bound on it. When the certified lower
// bounds already meet the upper bound no exact rational elimination is run.
std::size_t rank_with_bound(const Matrix& m, std::size_t upper) {
  if (m.is_zero()) return 0;
  const Split split = split_components(m);
  const auto& comps = split.comps;
  std::vector<LocalView> views;
  for (const auto& comp : comps) views.emplace_back(m, comp, split.local);
  std::vector<ComponentRank> est;
  est.reserve(comps.size());
  std::size_t lower = 0;
  bool all_exact = true;
  for (const auto& view : views) {
    est.push_back(component_rank_estimate(view, m.field()));
    lower += est.back().value;
    all_exact = all_exact && est.back().exact;
  }
  if (all_exact || lower == upper) return lower;
  std::size_t total = 0;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    total += est[i].exact ? est[i].value : component_rank_exact(views[i]);
  }
  return total;
}

}  // namespace

std::size_t rank(const Matrix& m) {
  return rank_with_bound(m, std::min(m.rows(), m.cols()));
}

Rref rref(const Matrix& m) {
  const FieldSpec f = m.field();
  struct Piece {
    std::size_t pivot;
    std::vector<std::size_t> cols;
    std::vector<mpq_class> vals;
  };
  std::vector<Piece> pieces;
  const Split split = split_components(m);
  for (const auto& comp : split.comps) {
    LocalView view(m, comp, split.local);
    auto emit = [&](const auto& sparse_rows, auto to_mpq) {
      for (const auto& row : sparse_rows) {
        Piece piece;
        for (std::size_t k = 0; k < row.size(); ++k) {
          piece.cols.push_back(comp.cols[row.cols[k]]);
          piece.vals.push_back(to_mpq(row.vals[k]));
        }
        piece.pivot = piece.cols.front();
        pieces.push_back(std::move(piece));
      }
    };
    if (f.is_rational()) {
      emit(rational_rref(view.rational_rows(), view.ncols()),
           [](const mpq_class& v) { return v; });
    } else {
      bool ok = true;
      const std::uint32_t p = f.characteristic();
      emit(modp_rref(view.modp_rows(p, ok), view.ncols(), p),
           [](std::uint32_t v) { return mpq_class(static_cast<unsigned long>(v)); });
    }
  }
  std::sort(pieces.begin(), pieces.end(),
            [](const Piece& a, const Piece& b) { return a.pivot < b.pivot; });
  MatrixBuilder b(f, pieces.size(), m.cols());
  Rref out;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    for (std::size_t k = 0; k < pieces[i].cols.size(); ++k) b.add(i, pieces[i].cols[k], pieces[i].vals[k]);
    out.pivots.push_back(pieces[i].pivot);
  }
  out.rows = b.build();
  return out;
}

Subspace::Subspace(FieldSpec field, std::size_t ambient_dim) : span_(field, 0, ambient_dim) {}

Subspace Subspace::row_span(const Matrix& m) { return Subspace(rref(m)); }

Subspace Subspace::column_span(const Matrix& m) { return row_span(m.transpose()); }

Subspace Subspace::full(FieldSpec field, std::size_t n) {
  return row_span(Matrix::identity(field, n));
}

std::optional<Vector> Subspace::coordinates(const Vector& v) const {
  if (v.size() != ambient_dim()) throw InputError("coordinates: length mismatch");
  const FieldSpec f = field();
  Vector coeffs(dim());
  Vector residual(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) residual[i] = f.normalize(v[i]);
  for (std::size_t i = 0; i < dim(); ++i) {
    coeffs[i] = residual[pivots_[i]];
    if (sgn(coeffs[i]) == 0) continue;
    auto cs = span_.row_cols(i);
    auto vs = span_.row_values(i);
    for (std::size_t k = 0; k < cs.size(); ++k) {
      residual[cs[k]] = f.normalize(residual[cs[k]] - coeffs[i] * vs[k]);
    }
  }
  for (const auto& x : residual) {
    if (sgn(x) != 0) return std::nullopt;
  }
  return coeffs;
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_dim() != ambient_dim()) return false;
  for (std::size_t i = 0; i < other.dim(); ++i) {
    if (!contains(other.span_.dense_row(i))) return false;
  }
  return true;
}

Subspace Subspace::annihilator() const { return kernel_basis(span_); }

Subspace Subspace::sum(const Subspace& other) const {
  return row_span(vstack({span_, other.span_}));
}

Subspace kernel_basis(const Matrix& m) {
  const Rref r = rref(m);
  std::vector<char> is_pivot(m.cols(), 0);
  for (std::size_t c : r.pivots) is_pivot[c] = 1;
  const Matrix rt = r.rows.transpose();
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (!is_pivot[c]) free_cols.push_back(c);
  }
  MatrixBuilder b(m.field(), free_cols.size(), m.cols());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const std::size_t fc = free_cols[k];
    b.add(k, fc, 1LL);
    auto rows = rt.row_cols(fc);
    auto vals = rt.row_values(fc);
    for (std::size_t q = 0; q < rows.size(); ++q) b.add(k, r.pivots[rows[q]], mpq_class(-vals[q]));
  }
  return Subspace::row_span(b.build());
}

SolveManyResult solve_many(const Matrix& m, const Matrix& rhs) {
  if (rhs.rows() != m.rows()) throw InputError("solve: right-hand side length mismatch");
  const std::size_t n = m.cols();
  const Rref r = rref(hstack({m, rhs}));
  SolveManyResult out{Matrix(), std::vector<bool>(rhs.cols(), true)};
  MatrixBuilder x(m.field(), n, rhs.cols());
  for (std::size_t i = 0; i < r.pivots.size(); ++i) {
    auto cs = r.rows.row_cols(i);
    auto vs = r.rows.row_values(i);
    const bool consistent_row = r.pivots[i] < n;
    for (std::size_t k = 0; k < cs.size(); ++k) {
      if (cs[k] < n) continue;
      if (consistent_row) {
        x.add(r.pivots[i], cs[k] - n, vs[k]);
      } else {
        out.solvable[cs[k] - n] = false;
      }
    }
  }
  Matrix sol = x.build();
  MatrixBuilder clean(m.field(), n, rhs.cols());
  for (const auto& e : sol.entries()) {
    if (out.solvable[e.col]) clean.add(e.row, e.col, e.value);
  }
  out.solutions = clean.build();
  return out;
}

std::optional<Vector> solve(const Matrix& m, const Vector& b) {
  if (b.size() != m.rows()) throw InputError("solve: right-hand side length mismatch");
  auto res = solve_many(m, column_matrix(m.field(), b));
  if (!res.solvable[0]) return std::nullopt;
  Vector x(m.cols());
  for (const auto& e : res.solutions.entries()) x[e.row] = e.value;
  return x;
}

ComplexRanks complex_ranks(const Matrix& f, const Matrix& g) {
  const std::size_t rank_g = rank(g);
  // im f lies in ker g, so rank f <= nullity g.
  const std::size_t bound = std::min({f.rows() - rank_g, f.rows(), f.cols()});
  return {rank_with_bound(f, bound), rank_g};
}

std::size_t homology_dim(const Matrix& f, const Matrix& g) {
  if (g.cols() != f.rows()) {
    throw InputError("homology_dim: cols(g) = " + std::to_string(g.cols()) +
                     " but rows(f) = " + std::to_string(f.rows()));
  }
  if (!(g * f).is_zero()) throw ComplexError("homology_dim: g * f is not zero");
  const auto r = complex_ranks(f, g);
  return f.rows() - r.rank_g - r.rank_f;
}

std::vector<std::size_t> extending_rows(const Matrix& base, const Matrix& candidates) {
  if (base.cols() != candidates.cols()) throw InputError("extending_rows: column mismatch");
  const FieldSpec f = base.field();
  const std::size_t n = base.cols();
  std::vector<std::size_t> out;
  auto run = [&](auto field, auto convert) {
    using F = decltype(field);
    SparseEchelon<F> ech(std::move(field), n);
    auto row_of = [&](const Matrix& m, std::size_t r) {
      SparseRow<typename F::T> row;
      auto cs = m.row_cols(r);
      auto vs = m.row_values(r);
      for (std::size_t k = 0; k < cs.size(); ++k) {
        row.cols.push_back(static_cast<std::uint32_t>(cs[k]));
        row.vals.push_back(convert(vs[k]));
      }
      return row;
    };
    for (std::size_t r = 0; r < base.rows(); ++r) ech.insert(row_of(base, r));
    for (std::size_t r = 0; r < candidates.rows(); ++r) {
      if (ech.insert(row_of(candidates, r))) out.push_back(r);
    }
  };
  if (f.is_rational()) {
    run(Rat{}, [](const mpq_class& v) { return v; });
  } else {
    run(ModP{f.characteristic()}, [](const mpq_class& v) {
      return static_cast<std::uint32_t>(v.get_num().get_ui());
    });
  }
  return out;
}

}  // namespace koszul
