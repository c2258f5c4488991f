#include <doctest.h>

#include <cmath>

#include "cmrp/errors.hpp"
#include "cmrp/theta_expr.hpp"

using namespace cmrp;

TEST_CASE("expression parsing and evaluation") {
  const Theta t1{2.0, 0.0, 1};
  const Theta t2{3.0, 1.0, 2};

  CHECK(Expr::parse("theta").eval(t1) == 2.0);
  CHECK(Expr::parse("2*theta").eval(t1) == 4.0);
  CHECK(Expr::parse("1/theta").eval(t1) == 0.5);
  CHECK(Expr::parse("theta^2").eval(t1) == 4.0);
  CHECK(Expr::parse("exp(theta)").eval(t1) == doctest::Approx(std::exp(2.0)));
  CHECK(Expr::parse("ln(theta)").eval(t1) == doctest::Approx(std::log(2.0)));
  CHECK(Expr::parse("sqrt(theta)").eval(t1) == doctest::Approx(std::sqrt(2.0)));
  CHECK(Expr::parse("0.8*exp(theta)").eval(t1) == doctest::Approx(0.8 * std::exp(2.0)));
  CHECK(Expr::parse("theta1/(theta1+theta2)").eval(t2) == doctest::Approx(0.75));
  CHECK(Expr::parse("2 * theta - 1").eval(t1) == 3.0);
  CHECK(Expr::parse("-theta").eval(t1) == -2.0);
  CHECK(Expr::parse("1 - -theta").eval(t1) == 3.0);
  CHECK(Expr::parse("3.5").eval(t1) == 3.5);
  CHECK(Expr::constant(7.0).eval(t2) == 7.0);
  // precedence: power binds tighter than unary minus chains via the grammar
  CHECK(Expr::parse("2*theta^2").eval(t1) == 8.0);
  CHECK(Expr::parse("(2*theta)^2").eval(t1) == 16.0);
}

TEST_CASE("expression errors") {
  CHECK_THROWS_AS(Expr::parse("thetas"), ConfigError);
  CHECK_THROWS_AS(Expr::parse("2*"), ConfigError);
  CHECK_THROWS_AS(Expr::parse("exp theta"), ConfigError);
  CHECK_THROWS_AS(Expr::parse("(theta"), ConfigError);
  CHECK_THROWS_AS(Expr::parse(""), ConfigError);
  CHECK_THROWS_AS(Expr::parse("theta2").eval(Theta{1.0, 0.0, 1}), DomainError);
  CHECK_THROWS_AS(Expr().eval(Theta{}), ConfigError);
}
