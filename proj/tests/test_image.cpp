#include <doctest.h>

#include <cmath>
#include <limits>

#include "acutance/image.hpp"
#include "support.hpp"

using namespace acut;

TEST_CASE("to_grey uses the Rec. 709 luma weights") {
  CHECK(to_grey(testing::constant_image(4, 4, 3, 1.0)).at(2, 1) == doctest::Approx(1.0).epsilon(1e-15));

  Image green(4, 4, 3, 0.0);
  Image blue(4, 4, 3, 0.0);
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 4; ++x) {
      green.at(x, y, 1) = 1.0;
      blue.at(x, y, 2) = 1.0;
    }
  const auto g = to_grey(green);
  const auto b = to_grey(blue);
  for (double v : g.data()) CHECK(v == 0.7152);
  for (double v : b.data()) CHECK(v == 0.0722);
}

TEST_CASE("to_grey passes single-channel images through") {
  const auto img = testing::random_image(5, 3, 1, 7);
  const auto grey = to_grey(img);
  CHECK(grey.width() == 5);
  CHECK(grey.height() == 3);
  for (std::size_t i = 0; i < grey.size(); ++i) CHECK(grey.data()[i] == img.data()[i]);
}

TEST_CASE("to_grey is linear") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = testing::random_image(8, 6, 3, 100 + trial, -1.0, 1.0);
    const auto b = testing::random_image(8, 6, 3, 200 + trial, -1.0, 1.0);
    const double alpha = coef(rng);
    const double beta = coef(rng);
    const auto lhs = to_grey(linear_combination(alpha, a, beta, b));
    const auto ga = to_grey(a);
    const auto gb = to_grey(b);
    for (std::size_t i = 0; i < lhs.size(); ++i) {
      const double rhs = alpha * ga.data()[i] + beta * gb.data()[i];
      CHECK(std::abs(lhs.data()[i] - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("image construction rejects bad input") {
  CHECK_THROWS_AS(Image(2, 2, 2, 0.0), DomainError);
  CHECK_THROWS_AS(Image(0, 2, 1, 0.0), DomainError);
  CHECK_THROWS_AS(Image(2, 2, 1, std::vector<double>(3, 0.0)), DomainError);
  CHECK_THROWS_AS(Image(1, 1, 1, std::vector<double>{std::numeric_limits<double>::quiet_NaN()}), DomainError);
  CHECK_THROWS_AS(Image(1, 1, 1, std::vector<double>{std::numeric_limits<double>::infinity()}), DomainError);
  CHECK_THROWS_AS(GreyImage(2, 1, std::vector<double>{0.0, -std::numeric_limits<double>::infinity()}), DomainError);
}

TEST_CASE("clipping is explicit and values are otherwise stored as given") {
  Image img(2, 1, 1, std::vector<double>{-0.5, 1.5});
  CHECK(img.at(0, 0) == -0.5);
  const auto c = clipped(img);
  CHECK(c.at(0, 0) == 0.0);
  CHECK(c.at(1, 0) == 1.0);
}

TEST_CASE("psnr closed forms") {
  const auto a = testing::random_image(16, 16, 3, 3);
  CHECK(std::isinf(psnr(a, a)));
  CHECK(psnr(a, offset(a, 0.1)) == doctest::Approx(20.0).epsilon(1e-9));
  const auto z = testing::constant_image(4, 4, 1, 0.0);
  const auto h = testing::constant_image(4, 4, 1, 0.5);
  CHECK(psnr(z, h) == doctest::Approx(10.0 * std::log10(4.0)).epsilon(1e-12));
  CHECK(psnr(z, h) == doctest::Approx(6.0206).epsilon(1e-5));
}

TEST_CASE("psnr is symmetric and decreases with error magnitude") {
  const auto a = testing::random_image(12, 10, 3, 5);
  const auto b = testing::random_image(12, 10, 3, 6);
  CHECK(psnr(a, b) == psnr(b, a));
  double previous = std::numeric_limits<double>::infinity();
  for (double e : {0.001, 0.01, 0.05, 0.1, 0.3}) {
    const double p = psnr(a, offset(a, e));
    CHECK(p < previous);
    previous = p;
  }
}

TEST_CASE("psnr rejects shape mismatch") {
  CHECK_THROWS_AS(psnr(Image(4, 4, 1, 0.0), Image(4, 4, 3, 0.0)), DomainError);
  CHECK_THROWS_AS(psnr(Image(4, 4, 1, 0.0), Image(4, 5, 1, 0.0)), DomainError);
}
