#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "lfpoly/rational.hpp"

using namespace lfpoly;

TEST_CASE("rational formatting and parsing") {
  CHECK(format_rational(Rational(1, 2)) == "1/2");
  CHECK(format_rational(Rational(-3, 4)) == "-3/4");
  CHECK(format_rational(Rational(5)) == "5");
  CHECK(format_rational(Rational(0)) == "0");

  CHECK(parse_rational("1/2") == Rational(1, 2));
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK(parse_rational("-6/4") == Rational(-3, 2));
  CHECK_THROWS_AS(parse_rational(""), format_error);
  CHECK_THROWS_AS(parse_rational("1/0"), format_error);
  CHECK_THROWS_AS(parse_rational("abc"), format_error);
}

TEST_CASE("rationalize recovers small fractions exactly") {
  CHECK(rationalize(0.5) == Rational(1, 2));
  CHECK(rationalize(0.25) == Rational(1, 4));
  CHECK(rationalize(1.0 / 3.0) == Rational(1, 3));
  CHECK(rationalize(-2.0 / 7.0) == Rational(-2, 7));
  CHECK(rationalize(0.0) == 0);
  CHECK(rationalize(1.0) == 1);
  CHECK(rationalize(-1e-17) == 0);
}

TEST_CASE("rationalize respects the denominator cap") {
  const double pi = std::acos(-1.0);
  Rational r = rationalize(pi);
  CHECK(denominator(r) <= 1000000);
  CHECK(std::fabs(to_double(r) - pi) < 1e-11);
}

TEST_CASE("rationalize error bound under cap or tolerance") {
  std::mt19937 rng(20240817);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    double x = dist(rng);
    Rational r = rationalize(x);
    REQUIRE(denominator(r) <= 1000000);
    double err = std::fabs(to_double(r) - x);
    // Either within tolerance, or the cap truncated the continued fraction,
    // in which case the convergent quality bound 1/(q * q_next) applies
    // with q_next > 1e6.
    double cap_bound = 1.0 / (to_double(Rational(denominator(r))) * 1e6);
    CHECK(err <= std::max(1e-12, cap_bound * (1 + 1e-9)));
  }
}

TEST_CASE("normalize_integer clears denominators and common factors") {
  RVec v{Rational(1, 2), Rational(-1, 3), Rational(1, 6)};
  normalize_integer(v);
  CHECK(v == RVec{Rational(3), Rational(-2), Rational(1)});

  RVec w{Rational(-4), Rational(-8)};
  normalize_integer(w);
  CHECK(w == RVec{Rational(-1), Rational(-2)});  // orientation preserved

  RVec z{Rational(0), Rational(0)};
  normalize_integer(z);
  CHECK(z == RVec{Rational(0), Rational(0)});
}
