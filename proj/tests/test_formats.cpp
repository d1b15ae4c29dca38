#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qgd/io.hpp"
#include "qgd/rng.hpp"
#include "qgd/loopmat.hpp"
#include "qgd/suites.hpp"

using namespace qgd;

namespace {
using LP = LaurentPoly<Rational>;
using Op = QOp<Rational>;
const Context<Rational> ctx{};
}  // namespace

TEST_CASE("operator file format") {
  // the documented example encodes D^2 + zD
  json j = json::parse(R"({"q":"1/2","hi":2,"floor":"complete","coeffs":{"2":{"0":"1"},"1":{"1":"1"}}})");
  Op a = qop_from_json<Rational>(j);
  CHECK(a.complete());
  CHECK(a == Op::d_power(2) + Op::term(1, LP::z(1)));
  CHECK(q_from_json<Rational>(j) == Rational(1, 2));
  json back = qop_to_json(a, ctx);
  CHECK(back["floor"] == "complete");
  CHECK(back["hi"] == 2);
  CHECK(qop_from_json<Rational>(back) == a);
}

TEST_CASE("windowed operators round-trip with their floor") {
  Rng rng(Rng::derive(3, "fmt", "floor"));
  Op a = random_qop(rng, -2, 2).with_floor(-2);
  json j = qop_to_json(a, ctx);
  CHECK(j["floor"] == -2);
  CHECK(qop_from_json<Rational>(j) == a);
}

TEST_CASE("scalar strings") {
  CHECK(ScalarTraits<Rational>::str(Rational(-2, 3)) == "-2/3");
  CHECK(ScalarTraits<Rational>::parse("7/2") == Rational(7, 2));
  BigFloat::set_base_decimal_digits(30);
  Complex c = Complex::from_string("1.5-0.25i");
  CHECK(abs(c - Complex(BigFloat(3L) / BigFloat(2L), -(BigFloat(1L) / BigFloat(4L)))) <
        BigFloat::pow10(-25));
  Complex back = Complex::from_string(c.str());
  CHECK(abs(back - c) < BigFloat::pow10(-25));
}

TEST_CASE("laurent round trip over both backends") {
  Rng rng(Rng::derive(3, "fmt", "laurent"));
  for (int k = 0; k < 10; ++k) {
    LP p = random_laurent(rng);
    CHECK(laurent_from_json<Rational>(laurent_to_json(p)) == p);
  }
}

TEST_CASE("loop matrices serialize as nested arrays") {
  Rng rng(Rng::derive(3, "fmt", "loopmat"));
  LoopMat<Rational> m(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m.at(i, j) = random_laurent(rng, 2);
  json j = loopmat_to_json(m);
  CHECK(j.is_array());
  CHECK(j.size() == 3);
  CHECK(loopmat_from_json<Rational>(j) == m);
}

TEST_CASE("csymbol format") {
  BigFloat::set_base_decimal_digits(40);
  std::vector<LaurentPoly<Complex>> u(3);
  u[0] = LaurentPoly<Complex>::z(1);
  u[2] = LaurentPoly<Complex>::monomial(-2, Complex(3, 4));
  CSymbol L(Complex::from_string("0.7"), u);
  json j = csymbol_to_json(L);
  CSymbol back = csymbol_from_json(j);
  CHECK(abs(back.alpha() - L.alpha()) < BigFloat::pow10(-30));
  for (int i = 1; i <= 3; ++i) {
    for (auto& [m, c] : L.u(i).terms())
      CHECK(abs(back.u(i).coeff(m) - c) < BigFloat::pow10(-30));
  }
}

TEST_CASE("suite reports are deterministic and versioned") {
  suites::Config cfg;
  cfg.seed = 42;
  cfg.jobs = 2;
  BigFloat::set_base_decimal_digits(cfg.digits);
  auto r1 = suites::run_suite("algebra", cfg);
  auto r2 = suites::run_suite("algebra", cfg);
  CHECK(r1.to_json() == r2.to_json());
  CHECK(r1.to_json()["schema"] == "qgd-report-v1");
  CHECK(r1.all_pass());
  // a different seed still passes but is a different report object
  suites::Config cfg2 = cfg;
  cfg2.seed = 43;
  auto r3 = suites::run_suite("algebra", cfg2);
  CHECK(r3.all_pass());
  CHECK(r3.to_json()["seed"] == 43);
  CHECK_THROWS_AS(suites::run_suite("nope", cfg), std::invalid_argument);
}

TEST_CASE("identities are q-independent: bracket suite at q = 1/3") {
  suites::Config cfg;
  cfg.q = Rational(1, 3);
  cfg.jobs = 2;
  BigFloat::set_base_decimal_digits(cfg.digits);
  auto rep = suites::run_suite("bracket", cfg);
  CHECK(rep.all_pass());
}

TEST_CASE("random instances: shapes and determinism") {
  // same seed, same instance
  Rng a(991), b(991);
  CHECK(random_monic(a, 2) == random_monic(b, 2));
  CHECK(random_qop(a) == random_qop(b));
  // M_n shape: monic with degrees 0..n
  Rng rng(Rng::derive(3, "fmt", "shapes"));
  for (int n : {1, 2, 3}) {
    auto L = random_monic(rng, n);
    Op op = L.op();
    CHECK(op.coeff(n) == LP(1, 1));
    CHECK(op.hi() == n);
    CHECK(op.complete());
    // coefficients within the documented bounds
    for (int i = 0; i < n; ++i)
      for (auto& [m, c] : L.u(i).terms()) {
        CHECK(m >= -3);
        CHECK(m <= 3);
      }
  }
  // Y_n shape: superdiagonal ones, zero above
  auto yn = [&](int n) {
    LoopMat<Rational> m(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j <= i; ++j) m.at(i, j) = random_laurent(rng, 2);
      if (i + 1 < n) m.at(i, i + 1) = LP(1, 1);
    }
    return m;
  };
  CHECK(is_yn(yn(3)));
}
