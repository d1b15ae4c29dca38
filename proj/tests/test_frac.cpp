#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qgd/hierarchy.hpp"
#include "qgd/rng.hpp"

using namespace qgd;

namespace {
using LP = LaurentPoly<Rational>;
using Op = QOp<Rational>;
const Context<Rational> ctx{};
}  // namespace

TEST_CASE("first root of D is D") {
  MonicQDiff<Rational> L(1, {LP()});
  Op P = nth_root(L, ctx);
  CHECK(equal_on_trusted(P, Op::d_power(1).with_floor(P.floor())));
}

TEST_CASE("square root of D^2 + zD starts with p0 = (2/3) z") {
  MonicQDiff<Rational> L(2, {LP(), LP::z(1)});
  Op P = nth_root(L, ctx);
  CHECK(P.coeff(0) == LP::monomial(1, Rational(2, 3)));
  Op sq = mul(P, P, ctx);
  CHECK(equal_on_trusted(sq, L.op()));
}

TEST_CASE("P^n = L on trusted degrees for random L") {
  Rng rng(Rng::derive(1, "frac", "rootpow"));
  for (int n : {2, 3, 4}) {
    for (int k = 0; k < 20; ++k) {
      auto L = random_monic(rng, n);
      Op P = nth_root(L, ctx, 8);
      Op Pn = pow_int(P, n, ctx);
      CHECK(equal_on_trusted(Pn, L.op()));
      CHECK(Pn.floor() == n - 8);
    }
  }
}

TEST_CASE("monicity is enforced") {
  Op bad = Op::term(2, LP::monomial(0, Rational(2))) + Op::term(0, LP::z(1));
  CHECK_THROWS_WITH_AS(MonicQDiff<Rational>::from_op(bad, 2), "not monic",
                       std::invalid_argument);
  MonicQDiff<Rational> L(2, {LP::z(1), LP()});
  CHECK_THROWS_AS(nth_root(L, ctx, 0), std::invalid_argument);
}

TEST_CASE("perturbing a computed root coefficient breaks P^n = L") {
  Rng rng(Rng::derive(1, "frac", "perturb"));
  auto L = random_monic(rng, 2);
  Op P = nth_root(L, ctx, 6);
  Op Pbad = P;
  Pbad.set_coeff(-2, P.coeff(-2) + LP::monomial(0, Rational(1, 7)));
  CHECK(!equal_on_trusted(pow_int(Pbad, 2, ctx), L.op()));
}

TEST_CASE("fractional power bookkeeping") {
  Rng rng(Rng::derive(1, "frac", "power"));
  auto L = random_monic(rng, 2);
  CHECK(equal_on_trusted(frac_power(L, 2, ctx), L.op()));
  MonicQDiff<Rational> L1(1, {random_laurent(rng)});
  CHECK(equal_on_trusted(frac_power(L1, 1, ctx), L1.op()));
  // additivity: L^{2/2} * L^{3/2} = L^{5/2}
  Op a = frac_power(L, 2, ctx), b = frac_power(L, 3, ctx), c = frac_power(L, 5, ctx);
  CHECK(equal_on_trusted(mul(a, b, ctx), c));
}

TEST_CASE("fractional powers commute") {
  Rng rng(Rng::derive(1, "frac", "commute"));
  for (int n : {2, 3}) {
    auto L = random_monic(rng, n);
    for (auto [a, b] : {std::pair{1, 2}, {1, 3}, {2, 3}}) {
      Op A = frac_power(L, a, ctx), B = frac_power(L, b, ctx);
      CHECK(zero_on_trusted(commutator(A, B, ctx)));
    }
  }
}

TEST_CASE("negative powers via first-order inversion") {
  Rng rng(Rng::derive(1, "frac", "invert"));
  for (int n : {1, 2, 3}) {
    auto L = random_monic(rng, n);
    Op P = nth_root(L, ctx);
    Op Q = invert_first_order(P, ctx);
    CHECK(equal_on_trusted(mul(P, Q, ctx), Op::one().with_floor(mul(P, Q, ctx).floor())));
    CHECK(equal_on_trusted(mul(Q, P, ctx), Op::one().with_floor(mul(Q, P, ctx).floor())));
    // L^{-1/n} * L^{1/n} = 1 and L^{(m-n)/n} * L = L^{m/n}
    Op m1 = frac_power(L, -1, ctx);
    CHECK(equal_on_trusted(mul(m1, P, ctx), Op::one().with_floor(mul(m1, P, ctx).floor())));
    Op dh = frac_power(L, 1 - n, ctx);
    CHECK(equal_on_trusted(mul(dh, L.op(), ctx), P));
  }
}

TEST_CASE("root over jet scalars = jet of root") {
  // jet-of-root: differentiate the defining identity P^n = L along a tangent
  // direction and check against the root computed over the jet backend.
  Rng rng(Rng::derive(1, "frac", "jetroot"));
  auto jctx = jet_context(ctx);
  for (int n : {2, 3}) {
    auto L = random_monic(rng, n);
    QOp<Rational> V = random_qop(rng, 0, n - 1, 2);
    auto LJ = jet_point(L, V);
    QOp<Jet<Rational>> PJ = nth_root(LJ, jctx);
    // value part is the base root
    CHECK(equal_on_trusted(jet_val(PJ), nth_root(L, ctx)));
    // P^n = L + eps V holds over the jet backend
    QOp<Jet<Rational>> PJn = pow_int(PJ, n, jctx);
    CHECK(equal_on_trusted(jet_val(PJn), L.op().with_floor(PJn.floor())));
    CHECK(equal_on_trusted(jet_der(PJn), V.with_floor(PJn.floor())));
  }
}
