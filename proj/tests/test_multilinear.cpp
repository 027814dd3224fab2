#include <catch_amalgamated.hpp>

#include "koszul/errors.hpp"
#include "koszul/multilinear.hpp"
#include "oracle.hpp"

using namespace koszul;

namespace {

const FieldSpec QQ = FieldSpec::rationals();

std::size_t choose(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

BasisIndex label(std::vector<int> ints) { return BasisIndex{-1, std::move(ints), {}}; }

}  // namespace

TEST_CASE("dimensions of basic spaces") {
  CHECK(SpaceExpr::sym_u(4).dim() == 5);
  CHECK(SpaceExpr::div_u(-1).dim() == 0);
  for (int e = 0; e <= 6; ++e)
    for (int i = 0; i <= e + 2; ++i)
      CHECK(SpaceExpr::wedge(i, SpaceExpr::sym_u(e)).dim() == choose(static_cast<std::size_t>(e) + 1, static_cast<std::size_t>(i)));
  CHECK(SpaceExpr::sym_of(3, SpaceExpr::div_u(2)).dim() == 10);
  CHECK(SpaceExpr::sym_of(0, SpaceExpr::div_u(-1)).dim() == 1);
  const auto t = SpaceExpr::tensor({SpaceExpr::sym_u(1), SpaceExpr::tensor({SpaceExpr::div_u(2), SpaceExpr::sym_u(0)})});
  CHECK(t.parts().size() == 3);
  CHECK(t.dim() == 6);
  for (const auto& s : {t, SpaceExpr::wedge(3, SpaceExpr::sym_u(5)), SpaceExpr::sym_of(2, SpaceExpr::sym_u(3))})
    CHECK(enumerate_basis(s).size() == s.dim());
}

TEST_CASE("basis orderings") {
  const auto w = enumerate_basis(SpaceExpr::wedge(2, SpaceExpr::sym_u(2)));
  REQUIRE(w.size() == 3);
  CHECK(w[0] == label({0, 1}));
  CHECK(w[1] == label({0, 2}));
  CHECK(w[2] == label({1, 2}));

  const auto m = enumerate_basis(SpaceExpr::sym_of(2, SpaceExpr::sym_u(1)));
  REQUIRE(m.size() == 3);
  CHECK(m[1] == label({0, 1}));

  // Wedge of a sum runs over compositions, then blockwise.
  const auto sum = SpaceExpr::sum({SpaceExpr::sym_u(1), SpaceExpr::sym_u(0)});
  const auto ws = enumerate_basis(SpaceExpr::wedge(2, sum));
  REQUIRE(ws.size() == 3);
  CHECK(ws[0] == label({0, 2}));
  CHECK(ws[1] == label({1, 2}));
  CHECK(ws[2] == label({0, 1}));

  const Basis tb(SpaceExpr::tensor({SpaceExpr::sym_u(1), SpaceExpr::sym_u(2)}));
  CHECK(tb.index(BasisIndex{-1, {}, {label({1}), label({0})}}) == 3);
  CHECK_THROWS_AS(tb.index(label({7})), InvariantViolation);
}

TEST_CASE("LinMap checks shapes and composition") {
  CHECK_THROWS_AS(LinMap(SpaceExpr::sym_u(1), SpaceExpr::sym_u(1), Matrix(QQ, 3, 2)), InvariantViolation);
  CHECK_THROWS_AS(compose(mult_sym(1, 1, QQ), mult_sym(1, 1, QQ)), InputError);
}

TEST_CASE("permute_factors swaps tensor positions") {
  const auto a = SpaceExpr::sym_u(1), b = SpaceExpr::sym_u(2);
  const LinMap sw = permute_factors({a, b}, {1, 0}, QQ);
  CHECK(sw.codomain == SpaceExpr::tensor({b, a}));
  // x^1 (x) x^2 -> x^2 (x) x^1
  CHECK(sw.matrix.at(2 * 2 + 1, 1 * 3 + 2) == 1);
  const LinMap back = permute_factors({b, a}, {1, 0}, QQ);
  CHECK(compose(back, sw).matrix == Matrix::identity(QQ, 6));
}

TEST_CASE("structure map examples") {
  // x^(2) -> x^(1) (x) x^(1) and x^(1) -> 1 (x) x^(1) + x^(1) (x) 1.
  const Matrix d = comult_div(1, 1, QQ).matrix;
  CHECK(d.at(3, 2) == 1);
  CHECK(d.at(1, 1) == 1);
  CHECK(d.at(2, 1) == 1);

  // e_{0,1} -> e_0 (x) e_1 - e_1 (x) e_0.
  const Matrix w = comult_wedge(1, 1, SpaceExpr::sym_u(1), QQ).matrix;
  CHECK(w.at(1, 0) == 1);
  CHECK(w.at(2, 0) == -1);

  // 1 (x) 1 -> 1 (x) x^2 - 2 x (x) x + x^2 (x) 1.
  const Matrix i2 = iota_power(2, 2, 2, QQ).matrix;
  CHECK(i2.at(0 * 3 + 2, 0) == 1);
  CHECK(i2.at(1 * 3 + 1, 0) == -2);
  CHECK(i2.at(2 * 3 + 0, 0) == 1);
}

TEST_CASE("coassociativity") {
  for (FieldSpec f : {QQ, FieldSpec(3)}) {
    for (int u = 0; u <= 3; ++u)
      for (int v = 0; v <= 3; ++v)
        for (int w = 0; w <= 3; ++w) {
          const auto lhs = compose(tensor(comult_div(u, v, f), identity_map(SpaceExpr::div_u(w), f)),
                                   comult_div(u + v, w, f));
          const auto rhs = compose(tensor(identity_map(SpaceExpr::div_u(u), f), comult_div(v, w, f)),
                                   comult_div(u, v + w, f));
          CHECK(lhs.matrix == rhs.matrix);

          const auto e = SpaceExpr::sym_u(5);
          const auto lw = compose(tensor(comult_wedge(u, v, e, f), identity_map(SpaceExpr::wedge(w, e), f)),
                                  comult_wedge(u + v, w, e, f));
          const auto rw = compose(tensor(identity_map(SpaceExpr::wedge(u, e), f), comult_wedge(v, w, e, f)),
                                  comult_wedge(u, v + w, e, f));
          CHECK(lw.matrix == rw.matrix);
        }
  }
}

TEST_CASE("multiplication and comultiplication are dual") {
  for (int u = 0; u <= 4; ++u)
    for (int v = 0; v <= 4; ++v) CHECK(comult_div(u, v, QQ).matrix == mult_sym(u, v, QQ).matrix.transpose());
}

TEST_CASE("iota relations") {
  for (FieldSpec f : {QQ, FieldSpec(2), FieldSpec(5)}) {
    for (int u = 2; u <= 6; ++u)
      for (int v = 2; v <= 6; ++v) {
        INFO("u=" << u << " v=" << v << " p=" << f.characteristic());
        for (int t = 1; t <= 2; ++t)
          CHECK((mult_sym(u, v, f).matrix * iota_power(u, v, t, f).matrix).is_zero());
        CHECK(iota_power(u, v, 1, f).matrix * iota_power(u - 1, v - 1, 1, f).matrix ==
              iota_power(u, v, 2, f).matrix);
        CHECK(iota_power(u, v, 1, f).matrix.transpose() == -iota_dual(u, v, f).matrix);
        CHECK(weyman_K(u, v, f) == psi_kernel(u, v, f).annihilator());
        // iota_power(u, v, 2) is injective: dim psi_kernel = (u-1)(v-1).
        CHECK(psi_kernel(u, v, f).dim() == static_cast<std::size_t>((u - 1) * (v - 1)));
      }
  }
  CHECK_THROWS_AS(weyman_K(0, 3, QQ), RangeError);
}

TEST_CASE("nu examples") {
  // x^(1) (x) (1 ^ x) = 1 ^ x^2 (the x ^ x term vanishes).
  const Matrix n = nu(2, 1, QQ).matrix;
  const Basis cod(SpaceExpr::wedge(2, SpaceExpr::sym_u(2)));
  CHECK(n.at(cod.index(label({0, 2})), 1) == 1);
  CHECK(n.at(cod.index(label({0, 1})), 1) == 0);
  CHECK(n.at(cod.index(label({1, 2})), 2) == 1);
  CHECK(nu(0, 3, QQ).matrix == Matrix::identity(QQ, 1));
}

TEST_CASE("hermite reciprocity is an equivariant isomorphism") {
  for (FieldSpec f : {QQ, FieldSpec(2), FieldSpec(3), FieldSpec(7)}) {
    for (int d = 1; d <= 4; ++d)
      for (int i = 1; i <= 4; ++i) {
        INFO("d=" << d << " i=" << i << " p=" << f.characteristic());
        const LinMap h = hermite_iso(d, i, f);
        REQUIRE(h.domain.dim() == h.codomain.dim());
        CHECK(rank(h.matrix) == h.domain.dim());
        CHECK(h.matrix * unipotent_action(h.domain, f) == unipotent_action(h.codomain, f) * h.matrix);
        const Basis bd(h.domain), bc(h.codomain);
        bool weights_ok = true;
        for (const auto& e : h.matrix.entries())
          weights_ok = weights_ok && x_weight(h.codomain, bc[e.row]) == x_weight(h.domain, bd[e.col]) + i * (i - 1) / 2;
        CHECK(weights_ok);
      }
  }
  CHECK_THROWS_AS(hermite_iso(0, 2, QQ), RangeError);
}

TEST_CASE("hermite for i = 1 is the identity on Sym^d") {
  CHECK(hermite_iso(3, 1, QQ).matrix == Matrix::identity(QQ, 4));
}

TEST_CASE("nu intertwines the comultiplications") {
  for (FieldSpec f : {QQ, FieldSpec(7)}) {
    for (int d = 2; d <= 3; ++d)
      for (int e = 0; e <= 5; ++e) {
        INFO("d=" << d << " e=" << e << " p=" << f.characteristic());
        const auto E = SpaceExpr::sym_u(e);
        const auto split = tensor(comult_div(d - 1, 1, f), comult_wedge(d - 1, 1, E, f));
        const auto reorder = permute_factors(
            {SpaceExpr::div_u(d - 1), SpaceExpr::div_u(1), SpaceExpr::wedge(d - 1, E), SpaceExpr::wedge(1, E)},
            {0, 2, 1, 3}, f);
        // D^1 and Wedge^1 E share the bases of Sym^1 U and E.
        const Matrix mult = kron(Matrix::identity(f, SpaceExpr::div_u(d - 1).dim() * SpaceExpr::wedge(d - 1, E).dim()),
                                 mult_sym(1, e, f).matrix);
        const Matrix lhs = kron(nu(d - 1, e, f).matrix, Matrix::identity(f, static_cast<std::size_t>(e) + 2)) *
                           mult * reorder.matrix * split.matrix;
        const Matrix rhs = comult_wedge(d - 1, 1, SpaceExpr::sym_u(e + 1), f).matrix * nu(d, e, f).matrix;
        CHECK(lhs == rhs);
      }
  }
}

TEST_CASE("unipotent action is multiplicative on wedge and sym powers") {
  const auto s = SpaceExpr::sym_u(2);
  const Matrix g = unipotent_action(s, QQ);
  CHECK(g == Matrix::from_rows(QQ, 3, {{1, 1, 1}, {0, 1, 2}, {0, 0, 1}}));
  const Matrix w = unipotent_action(SpaceExpr::wedge(2, s), QQ);
  // x ^ x^2 -> (1 + x) ^ (1 + 2x + x^2) = e_{0,1} + e_{0,2} + e_{1,2}.
  CHECK(w.at(0, 2) == 1);
  CHECK(w.at(1, 2) == 1);
  CHECK(w.at(2, 2) == 1);
  const Matrix sym2 = unipotent_action(SpaceExpr::sym_of(2, SpaceExpr::div_u(1)), QQ);
  // (x^(1))^2 -> (1 + x^(1))^2.
  CHECK(sym2.at(0, 2) == 1);
  CHECK(sym2.at(1, 2) == 2);
  CHECK(sym2.at(2, 2) == 1);
  // Composition of actions on a tensor product.
  const auto t = SpaceExpr::tensor({s, SpaceExpr::div_u(2)});
  CHECK(unipotent_action(t, QQ) == kron(g, unipotent_action(SpaceExpr::div_u(2), QQ)));
}

TEST_CASE("min_nonzero_rank") {
  const FieldSpec f(3);
  CHECK(min_nonzero_rank(Subspace::row_span(Matrix::from_rows(f, 4, {{1, 0, 0, 1}})), 2, 2) == 2u);
  CHECK(min_nonzero_rank(Subspace::row_span(Matrix::from_rows(f, 4, {{1, 0, 0, 1}, {0, 1, 0, 0}})), 2, 2) == 1u);
  CHECK(min_nonzero_rank(Subspace::full(f, 4), 2, 2) == 1u);
  CHECK_FALSE(min_nonzero_rank(Subspace::row_span(Matrix(f, 0, 4)), 2, 2).has_value());
  // Diagonal matrices diag(a, b, a + b) over GF(2) all have rank 2 when nonzero.
  const FieldSpec f2(2);
  CHECK(min_nonzero_rank(Subspace::row_span(Matrix::from_rows(f2, 9, {{1, 0, 0, 0, 0, 0, 0, 0, 1},
                                                                       {0, 0, 0, 0, 1, 0, 0, 0, 1}})),
                         3, 3) == 2u);
  CHECK_THROWS_AS(min_nonzero_rank(Subspace::full(f, 4), 2, 2, 10), BudgetExceeded);
  CHECK_THROWS_AS(min_nonzero_rank(Subspace::full(QQ, 4), 2, 2), InputError);
}

TEST_CASE("ker psi rank examples") {
  CHECK(min_nonzero_rank(psi_kernel(2, 2, FieldSpec(5)), 3, 3) == 3u);
  CHECK(min_nonzero_rank(psi_kernel(2, 2, FieldSpec(2)), 3, 3) == 2u);
  CHECK(psi_kernel(1, 1, QQ).dim() == 0);
  CHECK(weyman_K(1, 1, QQ).dim() == 4);
  CHECK(weyman_K(3, 2, QQ).dim() == 10);
  CHECK(rank(iota_power(3, 2, 2, QQ).matrix) == 2);
  // Over GF(2) the middle term of iota^2 vanishes.
  const Matrix i2 = iota_power(2, 2, 2, FieldSpec(2)).matrix;
  CHECK(i2.at(1 * 3 + 1, 0) == 0);
  CHECK(i2.at(0 * 3 + 2, 0) == 1);
  CHECK(i2.at(2 * 3 + 0, 0) == 1);
  // iota^t with t beyond the degrees has an empty domain.
  CHECK(iota_power(1, 3, 2, QQ).domain.dim() == 0);
}

TEST_CASE("nu for d = 1 is multiplication") {
  for (int e = 0; e <= 5; ++e) CHECK(nu(1, e, QQ).matrix == mult_sym(1, e, QQ).matrix);
}

TEST_CASE("hermite reciprocity over QQ for d + i <= 9") {
  for (int d = 1; d <= 8; ++d)
    for (int i = 1; d + i <= 9; ++i) {
      INFO("d=" << d << " i=" << i);
      const LinMap h = hermite_iso(d, i, QQ);
      CHECK(h.domain.dim() == choose(static_cast<std::size_t>(d + i), static_cast<std::size_t>(i)));
      CHECK(h.codomain.dim() == h.domain.dim());
      CHECK(rank(h.matrix) == h.domain.dim());
      if (d + i <= 7) CHECK(h.matrix * unipotent_action(h.domain, QQ) == unipotent_action(h.codomain, QQ) * h.matrix);
    }
}

TEST_CASE("nu is equivariant") {
  for (int d = 1; d <= 3; ++d)
    for (int e = d - 1; e <= 5; ++e) {
      const LinMap n = nu(d, e, QQ);
      CHECK(n.matrix * unipotent_action(n.domain, QQ) == unipotent_action(n.codomain, QQ) * n.matrix);
      const Basis bd(n.domain), bc(n.codomain);
      bool ok = true;
      for (const auto& en : n.matrix.entries()) ok = ok && x_weight(n.codomain, bc[en.row]) == x_weight(n.domain, bd[en.col]);
      CHECK(ok);
    }
}
