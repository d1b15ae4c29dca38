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

TEST_CASE("m = n flow vanishes") {
  Rng rng(Rng::derive(1, "hier", "mn"));
  for (int n : {1, 2, 3}) {
    auto L = random_monic(rng, n);
    CHECK(lax_rhs(L, n, ctx).known_zero());
  }
}

TEST_CASE("n = 1 flows all vanish") {
  Rng rng(Rng::derive(1, "hier", "n1"));
  auto L = random_monic(rng, 1);
  for (int m = 1; m <= 5; ++m) CHECK(lax_rhs(L, m, ctx).known_zero());
}

TEST_CASE("lax rhs lands in the tangent space") {
  MonicQDiff<Rational> L(2, {LP(), LP::z(1)});
  Op V = lax_rhs(L, 1, ctx);
  CHECK(V.complete());
  CHECK(V.hi() <= 1);

  Rng rng(Rng::derive(1, "hier", "degree"));
  for (int n : {2, 3}) {
    for (int m : {1, 2, 3, 5}) {
      auto R = random_monic(rng, n);
      Op W = lax_rhs(R, m, ctx);
      CHECK(W.complete());
      CHECK(W.hi() <= n - 1);
    }
  }
}

TEST_CASE("insufficient depth is reported") {
  Rng rng(Rng::derive(1, "hier", "depth"));
  auto L = random_monic(rng, 2);
  CHECK_THROWS_AS(lax_rhs(L, 5, ctx, 3), TrustError);
}

TEST_CASE("hamiltonian values") {
  // H_n = trace(L) = z^0 coefficient of u_0
  Rng rng(Rng::derive(1, "hier", "ham"));
  for (int n : {2, 3}) {
    auto L = random_monic(rng, n);
    CHECK(hamiltonian(L, n, ctx) == formal_integral(L.u(0)));
  }
  // L = D^2: root is D, all H_m = 0 for m not divisible by 2... H_1 = 0
  MonicQDiff<Rational> D2(2, {LP(), LP()});
  CHECK(hamiltonian(D2, 1, ctx) == Rational(0));
}

TEST_CASE("conservation residuals vanish exactly") {
  Rng rng(Rng::derive(1, "hier", "cons"));
  for (int n : {2, 3}) {
    auto L = random_monic(rng, n);
    for (int m : {1, 2, 3}) {
      for (int r : {1, 2, 3, 4}) {
        CHECK(conservation_residual(L, m, r, ctx) == Rational(0));
      }
    }
  }
}

TEST_CASE("transport of fractional powers along the flow") {
  Rng rng(Rng::derive(1, "hier", "l14"));
  for (int n : {2, 3}) {
    auto L = random_monic(rng, n);
    for (auto [m, r] : {std::pair{1, 2}, {1, 3}, {2, 3}}) {
      CHECK(zero_on_trusted(frac_power_transport_residual(L, m, r, ctx)));
    }
  }
}

TEST_CASE("flows commute") {
  Rng rng(Rng::derive(1, "hier", "comm"));
  for (int n : {2, 3}) {
    auto L = random_monic(rng, n, 1);
    CHECK(flow_commutator_residual(L, 1, 1, ctx).known_zero());
    CHECK(zero_on_trusted(flow_commutator_residual(L, 1, 2, ctx)));
  }
}
