#include <doctest.h>

#include "smf/errors.hpp"
#include "smf/series.hpp"
#include "support.hpp"

using namespace smf;

namespace {
SuperLaurentSeries z_series(int L, int k_max) {
  return SuperLaurentSeries::monomial(L, 1, GrassmannElement::one(L),
                                      GrassmannElement::zero(L), k_max);
}
}

TEST_CASE("theta squares to zero") {
  const int L = 2;
  SuperLaurentSeries th = SuperLaurentSeries::theta(L, 4);
  CHECK((th * th).is_zero_on_window());
}

TEST_CASE("pole times z is one with a shifted window") {
  const int L = 2;
  SuperLaurentSeries z = z_series(L, 5);
  SuperLaurentSeries zinv = z.inverse();
  CHECK(zinv.k_min() == -1);
  SuperLaurentSeries p = zinv * z;
  CHECK(p.a(0) == GrassmannElement::one(L));
  for (int k = p.k_min(); k <= p.k_max(); ++k) {
    if (k != 0) CHECK(p.a(k).is_zero());
    CHECK(p.b(k).is_zero());
  }
}

TEST_CASE("geometric series division") {
  const int L = 2;
  // theta / (z (1 + z)) = theta (z^-1 - 1 + z - z^2 + ...)
  SuperLaurentSeries th = SuperLaurentSeries::theta(L, 6);
  SuperLaurentSeries denom(L, 1, 6);
  denom.set(1, GrassmannElement::one(L), GrassmannElement::zero(L));
  denom.set(2, GrassmannElement::one(L), GrassmannElement::zero(L));
  SuperLaurentSeries q = th / denom;
  CHECK(q.b(-1) == GrassmannElement::one(L));
  CHECK(q.b(0) == GrassmannElement::scalar(L, Rational(-1)));
  CHECK(q.b(1) == GrassmannElement::one(L));
  CHECK(q.b(2) == GrassmannElement::scalar(L, Rational(-1)));
  for (int k = q.k_min(); k <= q.k_max(); ++k) CHECK(q.a(k).is_zero());
}

TEST_CASE("division rejects non-units") {
  const int L = 2;
  SuperLaurentSeries th = SuperLaurentSeries::theta(L, 3);
  CHECK_THROWS_AS(th.inverse(), division_by_non_unit_error);
  SuperLaurentSeries soul = SuperLaurentSeries::constant(
      L, GrassmannElement::generator(L, 1) * GrassmannElement::generator(L, 2), 3);
  CHECK_THROWS_AS(soul.inverse(), division_by_non_unit_error);
}

TEST_CASE("division is exact against multiplication") {
  testing::Rng rng(0x5e210001);
  const int L = 2;
  for (int iter = 0; iter < 40; ++iter) {
    SuperLaurentSeries y = testing::random_series(rng, L, -1, 4);
    // force a unit leading coefficient at order -1
    y.set(-1, testing::random_even_unit(rng, L),
          testing::random_homogeneous(rng, L, Parity::odd));
    SuperLaurentSeries x = testing::random_series(rng, L, 0, 4);
    SuperLaurentSeries q = x / y;
    SuperLaurentSeries back = q * y;
    for (int k = back.k_min(); k <= back.k_max(); ++k) {
      CHECK(back.a(k) == x.a(k));
      CHECK(back.b(k) == x.b(k));
    }
  }
}

TEST_CASE("product windows are pessimistic") {
  const int L = 2;
  SuperLaurentSeries x(L, 0, 2), y(L, 0, 5);
  SuperLaurentSeries p = x * y;
  CHECK(p.k_min() == 0);
  CHECK(p.k_max() == 2);  // min(2+0, 0+5)
  SuperLaurentSeries s = x + y;
  CHECK(s.k_max() == 2);
  CHECK_THROWS_AS(x.truncated(3, 5), empty_window_error);
}

TEST_CASE("coefficients outside the window are unavailable") {
  const int L = 2;
  SuperLaurentSeries x(L, 0, 2);
  CHECK_THROWS_AS(x.a(3), insufficient_precision_error);
  CHECK_THROWS_AS(x.b(-1), insufficient_precision_error);
}

TEST_CASE("derivative shifts the window down") {
  const int L = 2;
  SuperLaurentSeries x(L, -2, 3);
  x.set(-2, GrassmannElement::one(L), GrassmannElement::zero(L));
  x.set(3, GrassmannElement::scalar(L, Rational(5)), GrassmannElement::zero(L));
  SuperLaurentSeries d = x.derivative_z();
  CHECK(d.k_min() == -3);
  CHECK(d.k_max() == 2);
  CHECK(d.a(-3) == GrassmannElement::scalar(L, Rational(-2)));
  CHECK(d.a(2) == GrassmannElement::scalar(L, Rational(15)));
}
