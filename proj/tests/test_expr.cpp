#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <numbers>

#include "dequad/expr.hpp"

using namespace dequad::expr;

TEST(Expr, Arithmetic) {
  EXPECT_EQ(parse("2+3*4^2").eval(0), 50.0);
  EXPECT_EQ(parse("-2^2").eval(0), -4.0);
  EXPECT_EQ(parse("2^3^2").eval(0), 512.0);
  EXPECT_EQ(parse("(1+2)*3").eval(0), 9.0);
  EXPECT_EQ(parse("8/4/2").eval(0), 1.0);
  EXPECT_EQ(parse("10-4-3").eval(0), 3.0);
  EXPECT_EQ(parse("2^-1").eval(0), 0.5);
  EXPECT_EQ(parse("--3").eval(0), 3.0);
}

TEST(Expr, VariableConstantsAndNumbers) {
  EXPECT_EQ(parse("x").eval(2.5), 2.5);
  EXPECT_EQ(parse("pi").eval(0), std::numbers::pi);
  EXPECT_EQ(parse("e").eval(0), std::numbers::e);
  EXPECT_EQ(parse("1.5e2").eval(0), 150.0);
  EXPECT_EQ(parse("2.5E-1").eval(0), 0.25);
  EXPECT_EQ(parse(".5").eval(0), 0.5);
  EXPECT_EQ(parse("2*e").eval(0), 2 * std::numbers::e);
}

TEST(Expr, Functions) {
  EXPECT_DOUBLE_EQ(parse("x^(-1/4)*log(1/x)").eval(0.5), std::pow(0.5, -0.25) * std::log(2.0));
  EXPECT_DOUBLE_EQ(parse("exp(20*(x-1))*sin(256*x)").eval(0.3),
                   std::exp(20 * (0.3 - 1)) * std::sin(256 * 0.3));
  EXPECT_DOUBLE_EQ(parse("sqrt(abs(x))+atan(x)+tanh(x)+cosh(x)+sinh(x)+tan(x)+cos(x)").eval(-0.7),
                   std::sqrt(0.7) + std::atan(-0.7) + std::tanh(-0.7) + std::cosh(-0.7) + std::sinh(-0.7) +
                       std::tan(-0.7) + std::cos(-0.7));
}

TEST(Expr, DomainErrorsAreNaN) {
  EXPECT_TRUE(std::isnan(parse("log(x)").eval(-1)));
  EXPECT_TRUE(std::isnan(parse("log(x)").eval(0)));
  EXPECT_TRUE(std::isnan(parse("sqrt(x)").eval(-1)));
  EXPECT_TRUE(std::isnan(parse("x^(-1)").eval(0)));
  EXPECT_TRUE(std::isinf(parse("1/x").eval(0)));
}

TEST(Expr, SyntaxErrorPositions) {
  auto pos_of = [](const char* s) -> long {
    try {
      parse(s);
    } catch (const SyntaxError& e) {
      return static_cast<long>(e.pos());
    }
    return -1;
  };
  EXPECT_EQ(pos_of("sin("), 4);
  EXPECT_EQ(pos_of(""), 0);
  EXPECT_EQ(pos_of("   "), 0);
  EXPECT_EQ(pos_of("1+"), 2);
  EXPECT_EQ(pos_of("(1"), 2);
  EXPECT_EQ(pos_of("1 2"), 2);
  EXPECT_EQ(pos_of("2 $ 3"), 2);
  EXPECT_EQ(pos_of("sin(1,2)"), 5);
  EXPECT_EQ(pos_of("sin 1"), 4);
  EXPECT_EQ(pos_of("*3"), 0);
}

TEST(Expr, UnknownIdentifier) {
  try {
    parse("1 + foo(x)");
    FAIL() << "expected UnknownIdentifier";
  } catch (const UnknownIdentifier& e) {
    EXPECT_EQ(e.name(), "foo");
    EXPECT_EQ(e.pos(), 4u);
  }
  EXPECT_THROW(parse("y"), UnknownIdentifier);
}

TEST(Expr, DeterministicBitForBit) {
  const Ast a = parse("cos(64*sin(x))");
  const Ast b = parse("cos(64*sin(x))");
  for (double x = 0; x < 3.2; x += 0.01) {
    const double u = a(x), v = b(x);
    EXPECT_EQ(std::memcmp(&u, &v, sizeof u), 0);
  }
}

TEST(Tokenize, Kinds) {
  const auto toks = tokenize("2e+x");
  ASSERT_EQ(toks.size(), 5u);
  EXPECT_EQ(toks[0].kind, Token::Kind::Number);
  EXPECT_EQ(toks[0].lexeme, "2");
  EXPECT_EQ(toks[1].kind, Token::Kind::Ident);
  EXPECT_EQ(toks[2].kind, Token::Kind::Plus);
  EXPECT_EQ(toks[4].kind, Token::Kind::End);
  EXPECT_EQ(toks[4].pos, 4u);
}
