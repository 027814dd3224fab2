#include "koszul/carpet.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <tuple>

#include "combinatorics.hpp"
#include "koszul/errors.hpp"
#include "koszul/weyman.hpp"

namespace koszul {

using detail::insert_sorted;
using detail::multisets;
using detail::SeqIndex;
using detail::subsets;

namespace {

struct Term {
  std::vector<int> y, z;
  long long coef;
};

struct Generator {
  BiDegree bidegree;
  std::vector<Term> terms;
  /// Exponent of phi(g) in Sym^(a+b-2) U, or -1 when phi(g) = 0.
  int phi_exponent = -1;
};

std::vector<int> merged(const std::vector<int>& p, const std::vector<int>& q) {
  std::vector<int> out(p.size() + q.size());
  std::merge(p.begin(), p.end(), q.begin(), q.end(), out.begin());
  return out;
}

int total(const std::vector<int>& s) { return std::accumulate(s.begin(), s.end(), 0); }

std::string bidegree_string(BiDegree b) {
  return "(" + std::to_string(b.d) + "," + std::to_string(b.e) + ")";
}

template <class Map, class Key, class Compute>
const typename Map::mapped_type::element_type& memo(std::mutex& mu, Map& map, const Key& key,
                                                    Compute compute) {
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = map.find(key);
    if (it != map.end()) return *it->second;
  }
  auto value = std::make_unique<typename Map::mapped_type::element_type>(compute());
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = map.emplace(key, std::move(value));
  return *it->second;
}

}  // namespace

CarpetInstance::CarpetInstance(int a_, int b_, FieldSpec field_) : a(a_), b(b_), field(field_) {
  if (a < 1 || b < 1) throw InputError("carpet needs a, b >= 1");
}

const char* to_string(ModuleKind kind) {
  switch (kind) {
    case ModuleKind::R: return "R";
    case ModuleKind::B: return "B";
    case ModuleKind::I: return "I";
    case ModuleKind::Omega: return "Omega";
  }
  return "?";
}

struct Carpet::Layout {
  struct Block {
    int s, t;
    std::size_t n_y, n_z, mdim, offset;
  };
  std::vector<Block> blocks;
  std::size_t dim = 0;

  const Block* find(int s, int t) const {
    for (const auto& b : blocks)
      if (b.s == s && b.t == t) return &b;
    return nullptr;
  }
};

struct Carpet::Caches {
  std::mutex mu;
  std::vector<Generator> gens;
  // subsets of the y and z variables by size
  std::vector<SeqIndex> y_subsets, z_subsets;
  std::map<int, std::unique_ptr<SeqIndex>> y_monos, z_monos;
  std::map<BiDegree, std::unique_ptr<Subspace>> ideal;
  std::map<BiDegree, std::unique_ptr<Matrix>> phi;
  std::map<std::tuple<int, int, int, int>, std::unique_ptr<Layout>> layouts;
  std::map<std::tuple<int, int, int, int>, std::unique_ptr<TorCell>> tor;
  std::map<std::tuple<int, int, int>, std::unique_ptr<TorMap>> tor_maps;
};

namespace {

const SeqIndex& monos(std::mutex& mu, std::map<int, std::unique_ptr<SeqIndex>>& cache, int nvars, int deg) {
  return memo(mu, cache, deg, [&] { return SeqIndex(multisets(nvars, deg)); });
}

}  // namespace

Carpet::Carpet(CarpetInstance inst) : inst_(inst), caches_(std::make_unique<Caches>()) {
  const int a = inst_.a, b = inst_.b;
  for (int k = 0; k <= a + 1; ++k) caches_->y_subsets.emplace_back(subsets(a + 1, k));
  for (int k = 0; k <= b + 1; ++k) caches_->z_subsets.emplace_back(subsets(b + 1, k));
  auto& gens = caches_->gens;
  for (int s = 0; s < a; ++s)
    for (int s2 = s + 1; s2 < a; ++s2) {
      gens.push_back({{2, 0}, {{{s, s2 + 1}, {}, 1}, {{s + 1, s2}, {}, -1}}, -1});
    }
  for (int s = 0; s < a; ++s)
    for (int t = 0; t < b; ++t) {
      gens.push_back({{1, 1}, {{{s}, {t + 1}, 1}, {{s + 1}, {t}, -1}}, s + t});
    }
  for (int t = 0; t < b; ++t)
    for (int t2 = t + 1; t2 < b; ++t2) {
      gens.push_back({{0, 2}, {{{}, {t, t2 + 1}, 1}, {{}, {t + 1, t2}, -1}}, -1});
    }
}

Carpet::~Carpet() = default;

std::size_t Carpet::num_generators() const { return caches_->gens.size(); }

std::size_t Carpet::module_dim(ModuleKind kind, BiDegree b) const {
  if (b.d < 0 || b.e < 0) return 0;
  const auto deg = static_cast<std::size_t>(b.d * inst_.a + b.e * inst_.b);
  const std::size_t r = binomial(inst_.a + b.d, b.d).get_ui() * binomial(inst_.b + b.e, b.e).get_ui();
  switch (kind) {
    case ModuleKind::R: return r;
    case ModuleKind::B: return deg + 1;
    case ModuleKind::I: return r - (deg + 1);
    case ModuleKind::Omega: return (b.d >= 1 && b.e >= 1) ? deg - 1 : 0;
  }
  return 0;
}

Matrix Carpet::eval_map(BiDegree b) const {
  const std::size_t rows = module_dim(ModuleKind::B, b), cols = module_dim(ModuleKind::R, b);
  MatrixBuilder out(inst_.field, rows, cols);
  if (cols == 0) return out.build();
  const SeqIndex& ym = monos(caches_->mu, caches_->y_monos, inst_.a + 1, b.d);
  const SeqIndex& zm = monos(caches_->mu, caches_->z_monos, inst_.b + 1, b.e);
  for (std::size_t iy = 0; iy < ym.size(); ++iy)
    for (std::size_t iz = 0; iz < zm.size(); ++iz) {
      out.add(static_cast<std::size_t>(total(ym[iy]) + total(zm[iz])), iy * zm.size() + iz, 1LL);
    }
  return out.build();
}

const Subspace& Carpet::ideal_piece(BiDegree b) const {
  return memo(caches_->mu, caches_->ideal, b, [&] {
    if (b.d < 0 || b.e < 0) return Subspace(inst_.field, 0);
    return kernel_basis(eval_map(b));
  });
}

Matrix Carpet::variable_action(ModuleKind kind, std::size_t var, BiDegree b) const {
  if (var >= num_variables()) throw InputError("variable index out of range");
  const auto ny = static_cast<std::size_t>(inst_.a + 1);
  const bool first = var < ny;
  const int local = static_cast<int>(first ? var : var - ny);
  const BiDegree target = first ? BiDegree{b.d + 1, b.e} : BiDegree{b.d, b.e + 1};
  const std::size_t rows = module_dim(kind, target), cols = module_dim(kind, b);
  MatrixBuilder out(inst_.field, rows, cols);
  if (rows == 0 || cols == 0) return out.build();
  switch (kind) {
    case ModuleKind::B:
    case ModuleKind::Omega:
      for (std::size_t k = 0; k < cols; ++k) out.add(k + static_cast<std::size_t>(local), k, 1LL);
      return out.build();
    case ModuleKind::R:
    case ModuleKind::I:
      break;
  }
  const SeqIndex& ym = monos(caches_->mu, caches_->y_monos, inst_.a + 1, b.d);
  const SeqIndex& zm = monos(caches_->mu, caches_->z_monos, inst_.b + 1, b.e);
  const SeqIndex& ym2 = monos(caches_->mu, caches_->y_monos, inst_.a + 1, target.d);
  const SeqIndex& zm2 = monos(caches_->mu, caches_->z_monos, inst_.b + 1, target.e);
  auto times = [&](std::size_t idx) {
    const std::size_t iy = idx / zm.size(), iz = idx % zm.size();
    if (first) return ym2.find(insert_sorted(ym[iy], local)) * zm2.size() + iz;
    return iy * zm2.size() + zm2.find(insert_sorted(zm[iz], local));
  };
  if (kind == ModuleKind::R) {
    for (std::size_t k = 0; k < cols; ++k) out.add(times(k), k, 1LL);
    return out.build();
  }
  const Subspace& src = ideal_piece(b);
  const Subspace& dst = ideal_piece(target);
  std::map<std::size_t, std::size_t> pivot_row;
  for (std::size_t r = 0; r < dst.pivots().size(); ++r) pivot_row.emplace(dst.pivots()[r], r);
  const Matrix& basis = src.span();
  for (std::size_t k = 0; k < basis.rows(); ++k) {
    auto cs = basis.row_cols(k);
    auto vs = basis.row_values(k);
    for (std::size_t q = 0; q < cs.size(); ++q) {
      auto it = pivot_row.find(times(cs[q]));
      if (it != pivot_row.end()) out.add(it->second, k, vs[q]);
    }
  }
  return out.build();
}

Matrix Carpet::module_action(ModuleKind kind, VariableBlock block, BiDegree b) const {
  const auto ny = static_cast<std::size_t>(inst_.a + 1);
  const std::size_t lo = block == VariableBlock::First ? 0 : ny;
  const std::size_t hi = block == VariableBlock::First ? ny : num_variables();
  std::vector<Matrix> parts;
  for (std::size_t v = lo; v < hi; ++v) parts.push_back(variable_action(kind, v, b));
  return hstack(parts);
}

Matrix Carpet::generators(BiDegree b) const {
  const std::size_t cols = module_dim(ModuleKind::R, b);
  std::vector<const Generator*> sel;
  for (const auto& g : caches_->gens)
    if (g.bidegree == b) sel.push_back(&g);
  MatrixBuilder out(inst_.field, sel.size(), cols);
  if (sel.empty()) return out.build();
  const SeqIndex& ym = monos(caches_->mu, caches_->y_monos, inst_.a + 1, b.d);
  const SeqIndex& zm = monos(caches_->mu, caches_->z_monos, inst_.b + 1, b.e);
  for (std::size_t r = 0; r < sel.size(); ++r)
    for (const auto& t : sel[r]->terms) out.add(r, ym.find(t.y) * zm.size() + zm.find(t.z), t.coef);
  return out.build();
}

Matrix Carpet::phi_on_generators() const {
  const auto& gens = caches_->gens;
  MatrixBuilder out(inst_.field, static_cast<std::size_t>(inst_.a + inst_.b - 1), gens.size());
  for (std::size_t k = 0; k < gens.size(); ++k)
    if (gens[k].phi_exponent >= 0) out.add(static_cast<std::size_t>(gens[k].phi_exponent), k, 1LL);
  return out.build();
}

Matrix Carpet::phi_lift(BiDegree b, const std::vector<std::size_t>& order) const {
  const Subspace& ideal = ideal_piece(b);
  const std::size_t omega = module_dim(ModuleKind::Omega, b);
  if (omega == 0 || ideal.dim() == 0) return Matrix(inst_.field, omega, ideal.dim());
  const auto& gens = caches_->gens;
  const SeqIndex& ym = monos(caches_->mu, caches_->y_monos, inst_.a + 1, b.d);
  const SeqIndex& zm = monos(caches_->mu, caches_->z_monos, inst_.b + 1, b.e);
  struct Col {
    std::size_t gen;
    std::vector<int> y, z;
  };
  std::vector<Col> cols;
  for (std::size_t g : order) {
    if (g >= gens.size()) throw InputError("generator order out of range");
    const BiDegree rest{b.d - gens[g].bidegree.d, b.e - gens[g].bidegree.e};
    if (rest.d < 0 || rest.e < 0) continue;
    const SeqIndex& ry = monos(caches_->mu, caches_->y_monos, inst_.a + 1, rest.d);
    const SeqIndex& rz = monos(caches_->mu, caches_->z_monos, inst_.b + 1, rest.e);
    for (std::size_t iy = 0; iy < ry.size(); ++iy)
      for (std::size_t iz = 0; iz < rz.size(); ++iz) cols.push_back({g, ry[iy], rz[iz]});
  }
  MatrixBuilder gm(inst_.field, module_dim(ModuleKind::R, b), cols.size());
  MatrixBuilder phi_cols(inst_.field, omega, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const Generator& g = gens[cols[c].gen];
    for (const auto& t : g.terms) {
      gm.add(ym.find(merged(cols[c].y, t.y)) * zm.size() + zm.find(merged(cols[c].z, t.z)), c, t.coef);
    }
    if (g.phi_exponent >= 0) {
      phi_cols.add(static_cast<std::size_t>(total(cols[c].y) + total(cols[c].z) + g.phi_exponent), c, 1LL);
    }
  }
  const auto sol = solve_many(gm.build(), ideal.span().transpose());
  for (bool ok : sol.solvable) {
    if (!ok) throw LiftError("element of I" + bidegree_string(b) + " is not in the span of generator multiples");
  }
  return phi_cols.build() * sol.solutions;
}

const Matrix& Carpet::phi_at(BiDegree b) const {
  return memo(caches_->mu, caches_->phi, b, [&] {
    std::vector<std::size_t> order(caches_->gens.size());
    std::iota(order.begin(), order.end(), 0);
    return phi_lift(b, order);
  });
}

Matrix Carpet::phi_at_with_order(BiDegree b, const std::vector<std::size_t>& order) const {
  std::vector<std::size_t> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  bool permutation = sorted.size() == caches_->gens.size();
  for (std::size_t k = 0; permutation && k < sorted.size(); ++k) permutation = sorted[k] == k;
  if (!permutation) throw InputError("phi_at_with_order: order is not a permutation of the generators");
  return phi_lift(b, order);
}

const Carpet::Layout& Carpet::layout(ModuleKind kind, int j, BiDegree b) const {
  return memo(caches_->mu, caches_->layouts, std::tuple{static_cast<int>(kind), j, b.d, b.e}, [&] {
    Layout l;
    for (int s = 0; s <= std::min(j, inst_.a + 1); ++s) {
      const int t = j - s;
      if (t > inst_.b + 1 || b.d - s < 0 || b.e - t < 0) continue;
      Layout::Block blk{s,
                        t,
                        caches_->y_subsets[static_cast<std::size_t>(s)].size(),
                        caches_->z_subsets[static_cast<std::size_t>(t)].size(),
                        module_dim(kind, {b.d - s, b.e - t}),
                        l.dim};
      l.dim += blk.n_y * blk.n_z * blk.mdim;
      l.blocks.push_back(blk);
    }
    return l;
  });
}

std::size_t Carpet::koszul_term_dim(ModuleKind kind, int j, BiDegree b) const {
  if (j < 0) return 0;
  return layout(kind, j, b).dim;
}

Matrix Carpet::koszul_differential(ModuleKind kind, int j, BiDegree b) const {
  const std::size_t cols = koszul_term_dim(kind, j, b);
  const std::size_t rows = koszul_term_dim(kind, j - 1, b);
  MatrixBuilder out(inst_.field, rows, cols);
  if (j <= 0 || rows == 0 || cols == 0) return out.build();
  const Layout& src = layout(kind, j, b);
  const Layout& dst = layout(kind, j - 1, b);
  const auto ny = static_cast<std::size_t>(inst_.a + 1);
  for (const auto& blk : src.blocks) {
    if (blk.mdim == 0) continue;
    const BiDegree mb{b.d - blk.s, b.e - blk.t};
    const SeqIndex& ys = caches_->y_subsets[static_cast<std::size_t>(blk.s)];
    const SeqIndex& zs = caches_->z_subsets[static_cast<std::size_t>(blk.t)];
    // columns of the action matrices, by variable
    std::map<std::size_t, Matrix> act;
    auto action_cols = [&](std::size_t var) -> const Matrix& {
      auto it = act.find(var);
      if (it == act.end()) it = act.emplace(var, variable_action(kind, var, mb).transpose()).first;
      return it->second;
    };
    for (std::size_t iy = 0; iy < ys.size(); ++iy)
      for (std::size_t iz = 0; iz < zs.size(); ++iz) {
        const std::vector<int>& S = ys[iy];
        const std::vector<int>& T = zs[iz];
        for (std::size_t pos = 0; pos < S.size() + T.size(); ++pos) {
          const bool in_y = pos < S.size();
          const std::size_t var = in_y ? static_cast<std::size_t>(S[pos]) : ny + static_cast<std::size_t>(T[pos - S.size()]);
          const Layout::Block* tb = dst.find(in_y ? blk.s - 1 : blk.s, in_y ? blk.t : blk.t - 1);
          if (tb == nullptr || tb->mdim == 0) continue;
          std::size_t ty = iy, tz = iz;
          if (in_y) {
            std::vector<int> S2 = S;
            S2.erase(S2.begin() + static_cast<std::ptrdiff_t>(pos));
            ty = caches_->y_subsets[S2.size()].find(S2);
          } else {
            std::vector<int> T2 = T;
            T2.erase(T2.begin() + static_cast<std::ptrdiff_t>(pos - S.size()));
            tz = caches_->z_subsets[T2.size()].find(T2);
          }
          const bool negative = pos % 2 == 1;
          const Matrix& a = action_cols(var);
          const std::size_t col0 = blk.offset + (iy * blk.n_z + iz) * blk.mdim;
          const std::size_t row0 = tb->offset + (ty * tb->n_z + tz) * tb->mdim;
          for (std::size_t k = 0; k < blk.mdim; ++k) {
            auto cs = a.row_cols(k);
            auto vs = a.row_values(k);
            for (std::size_t q = 0; q < cs.size(); ++q) {
              out.add(row0 + cs[q], col0 + k, negative ? mpq_class(-vs[q]) : vs[q]);
            }
          }
        }
      }
  }
  return out.build();
}

TorCell Carpet::koszul_tor(ModuleKind kind, int i, BiDegree b) const {
  if (i < 0 || b.d < 0 || b.e < 0) return TorCell{kind, i, b, 0, 0, 0, 0};
  return memo(caches_->mu, caches_->tor, std::tuple{static_cast<int>(kind), i, b.d, b.e}, [&] {
    TorCell cell{kind, i, b, 0, koszul_term_dim(kind, i, b), 0, 0};
    if (cell.chain_dim == 0) return cell;
    const Matrix f = koszul_differential(kind, i + 1, b);
    const Matrix g = koszul_differential(kind, i, b);
    if (!(g * f).is_zero()) {
      throw ComplexError(std::string("Koszul complex of ") + to_string(kind) + " at i=" + std::to_string(i) +
                         ", bidegree " + bidegree_string(b) + " does not square to zero");
    }
    const auto r = complex_ranks(f, g);
    cell.rank_in = r.rank_f;
    cell.rank_out = r.rank_g;
    cell.dim = cell.chain_dim - r.rank_f - r.rank_g;
    return cell;
  });
}

std::size_t Carpet::koszul_tor_total(ModuleKind kind, int i, int total_degree) const {
  std::size_t sum = 0;
  for (int d = 0; d <= total_degree; ++d) sum += koszul_tor(kind, i, {d, total_degree - d}).dim;
  return sum;
}

Matrix Carpet::chain_map(int i, BiDegree b) const {
  const Layout& li = layout(ModuleKind::I, i, b);
  const Layout& lo = layout(ModuleKind::Omega, i, b);
  MatrixBuilder out(inst_.field, lo.dim, li.dim);
  for (const auto& blk : li.blocks) {
    const Layout::Block* tb = lo.find(blk.s, blk.t);
    if (tb == nullptr || tb->mdim == 0 || blk.mdim == 0) continue;
    const Matrix& phi = phi_at({b.d - blk.s, b.e - blk.t});
    const auto entries = phi.entries();
    for (std::size_t k = 0; k < blk.n_y * blk.n_z; ++k)
      for (const auto& e : entries) out.add(tb->offset + k * tb->mdim + e.row, blk.offset + k * blk.mdim + e.col, e.value);
  }
  return out.build();
}

TorMap Carpet::tor_map_phi(int i, BiDegree b) const {
  if (i < 0 || b.d < 0 || b.e < 0) return TorMap{};
  return memo(caches_->mu, caches_->tor_maps, std::tuple{i, b.d, b.e}, [&] {
    const TorCell src = koszul_tor(ModuleKind::I, i, b);
    const TorCell dst = koszul_tor(ModuleKind::Omega, i, b);
    TorMap m{src.dim, dst.dim, 0};
    if (src.dim == 0 || dst.dim == 0) return m;
    const Subspace cycles = kernel_basis(koszul_differential(ModuleKind::I, i, b));
    const Matrix image = chain_map(i, b) * cycles.span().transpose();
    if (!(koszul_differential(ModuleKind::Omega, i, b) * image).is_zero()) {
      throw ComplexError("phi does not send cycles to cycles at i=" + std::to_string(i) + ", bidegree " +
                         bidegree_string(b));
    }
    const Matrix boundaries = koszul_differential(ModuleKind::Omega, i + 1, b);
    m.rank = rank(hstack({boundaries, image})) - dst.rank_in;
    return m;
  });
}

std::size_t Carpet::tor_A(int i, BiDegree b) const {
  if (i < 0 || b.d < 0 || b.e < 0) return 0;
  if (b.d == 0 && b.e == 0) return i == 0 ? 1 : 0;
  std::size_t out = tor_map_phi(i, b).cokernel_dim();
  if (i >= 1) out += tor_map_phi(i - 1, b).kernel_dim();
  return out;
}

std::size_t Carpet::tor_A_total(int i, int total_degree) const {
  std::size_t sum = 0;
  for (int d = 0; d <= total_degree; ++d) sum += tor_A(i, {d, total_degree - d});
  return sum;
}

std::vector<BettiEntry> Carpet::betti_table(int imax) const {
  if (imax > inst_.a + inst_.b - 1) {
    throw RangeError("betti_table: imax exceeds a + b - 1 = " + std::to_string(inst_.a + inst_.b - 1));
  }
  std::vector<BettiEntry> out;
  for (int i = 1; i <= imax; ++i)
    for (int j = i + 1; j <= i + 2; ++j) {
      BettiEntry entry{i, j, 0, {}};
      for (int d = 0; d <= j; ++d) {
        const std::size_t v = tor_A(i, {d, j - d});
        entry.dim += v;
        if (v != 0) entry.bigraded.emplace_back(BiDegree{d, j - d}, v);
      }
      out.push_back(std::move(entry));
    }
  return out;
}

ScrollTorCheck Carpet::scroll_tor_check(int i) const {
  if (i < 1 || i > inst_.a + inst_.b - 1) throw RangeError("scroll_tor_check needs 1 <= i <= a + b - 1");
  ScrollTorCheck c;
  c.linear = koszul_tor_total(ModuleKind::B, i, i + 1);
  c.quadratic = koszul_tor_total(ModuleKind::B, i, i + 2);
  c.expected_linear = scroll_tor_dim(inst_.a, inst_.b, i);
  c.holds = c.linear == c.expected_linear && c.quadratic == 0;
  return c;
}

WeymanCrossCheck Carpet::cross_check_weyman(int u, int v) const {
  if (u < 0 || v < 0 || u > inst_.a - 1 || v > inst_.b - 1) {
    throw RangeError("cross_check_weyman needs 0 <= u <= a - 1 and 0 <= v <= b - 1");
  }
  WeymanCrossCheck c;
  c.carpet = tor_A(u + v, {u + 1, v + 1});
  c.weyman = weyman_dim(u, v, inst_.field, {inst_.a - 1 - u, inst_.b - 1 - v});
  return c;
}

std::uint64_t scroll_tor_dim(int a, int b, int i) {
  return static_cast<std::uint64_t>(i) * binomial(a + b, i + 1).get_ui();
}

std::uint64_t canonical_tor_dim(int a, int b, int u, int v) {
  const int first = a + b - 1 - u - v;
  if (first <= 0) return 0;
  return static_cast<std::uint64_t>(first) * binomial(a, u).get_ui() * binomial(b, v).get_ui();
}

std::uint64_t ideal_tor_dim(int a, int b, int u, int v) {
  return static_cast<std::uint64_t>(u + v + 1) * binomial(a, u + 1).get_ui() * binomial(b, v + 1).get_ui();
}

HilbertA hilbert_A(int a, int b, int nmax) {
  if (nmax < 0) throw InputError("hilbert_A needs nmax >= 0");
  const Carpet carpet(CarpetInstance(a, b, FieldSpec::rationals()));
  HilbertA h;
  for (int n = 0; n <= nmax; ++n) {
    std::uint64_t dim = 0;
    for (int i = 0; i <= n; ++i) {
      const BiDegree bd{i, n - i};
      dim += rank(carpet.eval_map(bd)) + carpet.module_dim(ModuleKind::Omega, bd);
    }
    h.dims.push_back(dim);
    const auto expected = n == 0 ? 1 : static_cast<std::uint64_t>(n * n * (a + b) + 2);
    if (dim != expected) {
      throw InvariantViolation("dim A_" + std::to_string(n) + " = " + std::to_string(dim) + ", expected " +
                               std::to_string(expected));
    }
  }
  const long long c3[4] = {1, -3, 3, -1};
  for (int n = 0; n <= nmax; ++n) {
    long long c = 0;
    for (int k = 0; k <= 3 && k <= n; ++k) c += c3[k] * static_cast<long long>(h.dims[static_cast<std::size_t>(n - k)]);
    h.numerator.push_back(c);
  }
  const long long expected_num[4] = {1, a + b - 1, a + b - 1, 1};
  for (int n = 0; n <= nmax; ++n) {
    const long long want = n <= 3 ? expected_num[n] : 0;
    if (h.numerator[static_cast<std::size_t>(n)] != want) {
      throw InvariantViolation("Hilbert numerator coefficient " + std::to_string(n) + " is " +
                               std::to_string(h.numerator[static_cast<std::size_t>(n)]) + ", expected " +
                               std::to_string(want));
    }
  }
  return h;
}

}  // namespace koszul
