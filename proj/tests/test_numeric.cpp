#include <doctest.h>

#include "smf/bigint.hpp"
#include "smf/errors.hpp"
#include "smf/rational.hpp"
#include "support.hpp"

using namespace smf;

TEST_CASE("bigint arithmetic matches 128-bit reference") {
  testing::Rng rng(0x5eed0001);
  for (int iter = 0; iter < 2000; ++iter) {
    long long a = rng.range(-1000000000000000LL, 1000000000000000LL);
    long long b = rng.range(-1000000000000000LL, 1000000000000000LL);
    BigInt A(a), B(b);
    CHECK((A + B).to_string() == std::to_string(a + b));
    CHECK((A - B).to_string() == std::to_string(a - b));
    __int128 p = static_cast<__int128>(a) * b;
    // render the 128-bit product
    bool neg = p < 0;
    unsigned __int128 up = neg ? -static_cast<unsigned __int128>(p)
                               : static_cast<unsigned __int128>(p);
    std::string ps;
    if (up == 0) ps = "0";
    while (up != 0) {
      ps.insert(ps.begin(), static_cast<char>('0' + static_cast<int>(up % 10)));
      up /= 10;
    }
    if (neg && ps != "0") ps.insert(ps.begin(), '-');
    CHECK((A * B).to_string() == ps);
  }
}

TEST_CASE("bigint divmod invariant") {
  testing::Rng rng(0x5eed0002);
  for (int iter = 0; iter < 2000; ++iter) {
    long long a = rng.range(-(1LL << 60), 1LL << 60);
    long long b = rng.range(-(1LL << 30), 1LL << 30);
    if (b == 0) continue;
    BigInt q, r;
    BigInt::divmod(BigInt(a), BigInt(b), q, r);
    CHECK(q.to_string() == std::to_string(a / b));
    CHECK(r.to_string() == std::to_string(a % b));
    CHECK(q * BigInt(b) + r == BigInt(a));
  }
}

TEST_CASE("bigint divmod on wide operands") {
  // exercise the multi-limb path: (x*y + r) / y == x
  testing::Rng rng(0x5eed0003);
  for (int iter = 0; iter < 300; ++iter) {
    BigInt x(rng.range(1, 1LL << 62));
    BigInt y(rng.range(1, 1LL << 62));
    BigInt big = x * y * y + x;  // > 128 bits at times
    BigInt q, r;
    BigInt::divmod(big, y, q, r);
    CHECK(q * y + r == big);
    CHECK(r.abs() < y.abs());
  }
}

TEST_CASE("bigint string round trip") {
  for (const char* s : {"0", "-1", "123456789012345678901234567890",
                        "-99999999999999999999999999"}) {
    CHECK(BigInt::from_string(s).to_string() == s);
  }
  CHECK_THROWS_AS(BigInt::from_string("12x"), parse_error);
  CHECK_THROWS_AS(BigInt::from_string(""), parse_error);
}

TEST_CASE("rational normal form") {
  CHECK(Rational(2, 4).to_string() == "1/2");
  CHECK(Rational(-2, -4).to_string() == "1/2");
  CHECK(Rational(2, -4).to_string() == "-1/2");
  CHECK(Rational(0, 7).to_string() == "0");
  CHECK(Rational::from_string("-6/8") == Rational(-3, 4));
  CHECK(Rational::from_string("5") == Rational(5));
  CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
  CHECK((Rational(1, 3) * Rational(3, 5)) == Rational(1, 5));
  CHECK(Rational(3, 7).inverse() == Rational(7, 3));
  CHECK_THROWS_AS(Rational(1, 0), invalid_operand_error);
  CHECK_THROWS_AS(Rational(0, 1).inverse(), not_invertible_error);
}
