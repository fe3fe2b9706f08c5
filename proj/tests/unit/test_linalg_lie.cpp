#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ghlab/linalg_lie.hpp"

using namespace ghlab;
using namespace ghlab::lie;

namespace {

SL2Element random_sl2(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0, 1);
  const Sl2Algebra x{0.6 * n(rng), 0.6 * n(rng), 0.6 * n(rng)};
  return SL2Element(exp_sl2(x));
}

double max_diff(const Mat4& a, const Mat4& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("SL2Element rejects det != 1") {
  CHECK_THROWS_AS(SL2Element(2, 0, 0, 1), ValidationError);
  CHECK_NOTHROW(SL2Element(2, 0, 0, 0.5));
  const SL2Element g(2, 3, 1, 2);
  CHECK(max_abs_diff((g * g.inverse()).mat(), Mat2::identity()) == 0);
}

TEST_CASE("phi_group on fixed inputs") {
  CHECK(max_diff(phi_group(SL2Element()).mat(), Mat4::Identity()) == 0);
  Mat4 want;
  want << 1, -1, 1, 0,
          1, 0.5, 0.5, 0,
          1, -0.5, 1.5, 0,
          0, 0, 0, 1;
  CHECK(max_diff(phi_group(SL2Element(1, 1, 0, 1)).mat(), want) <= 1e-15);
}

TEST_CASE("phi_group is a homomorphism into SO0(2,2)") {
  std::mt19937_64 rng(1);
  double worst = 0, form = 0;
  for (int k = 0; k < 1000; ++k) {
    const auto a = random_sl2(rng), b = random_sl2(rng);
    worst = std::max(worst, max_diff(phi_group(a * b).mat(), phi_group(a).mat() * phi_group(b).mat()));
    form = std::max(form, SO22Element::form_residual(phi_group(a).mat()));
  }
  CHECK(worst <= 1e-10);
  CHECK(form <= 1e-10);
}

TEST_CASE("phi_group(exp X) = exp(phi_alg X)") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int k = 0; k < 100; ++k) {
    const Sl2Algebra x{u(rng), u(rng), u(rng)};
    const double t = u(rng);
    const Mat4 lhs = phi_group(SL2Element(exp_sl2(t * x))).mat();
    const Mat4 rhs = expm<double, 4>(t * phi_alg(x).mat());
    REQUIRE(max_diff(lhs, rhs) <= 1e-8);
  }
}

TEST_CASE("phi_alg basis images and bracket") {
  const auto& e = e_basis();
  CHECK(max_diff(phi_alg(Sl2Algebra{0.5, 0, 0}).mat(), e[1].mat()) == 0);
  CHECK(max_diff(phi_alg(Sl2Algebra{0, 1, 0}).mat(), e[0].mat()) == 0);
  CHECK(max_diff(phi_alg(Sl2Algebra{0, 0, 1}).mat(), e[2].mat()) == 0);
  CHECK(phi_alg(Sl2Algebra{}).mat().isZero(0));

  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(0, 1);
  for (int k = 0; k < 50; ++k) {
    const Sl2Algebra x{n(rng), n(rng), n(rng)}, y{n(rng), n(rng), n(rng)};
    const Mat4 px = phi_alg(x).mat(), py = phi_alg(y).mat();
    REQUIRE(max_diff(phi_alg(bracket(x, y)).mat(), px * py - py * px) <= 1e-12);
  }
}

TEST_CASE("e_basis entries") {
  const auto& e = e_basis();
  Mat4 e2 = Mat4::Zero();
  e2(1, 2) = e2(2, 1) = 1;
  CHECK(max_diff(e[1].mat(), e2) == 0);
  Mat4 e6 = Mat4::Zero();
  e6(2, 3) = 1;
  e6(3, 2) = -1;
  CHECK(max_diff(e[5].mat(), e6) == 0);
  for (const auto& m : e) CHECK(So22Algebra::form_residual(m.mat()) == 0);
}

TEST_CASE("Q conjugation table") {
  const auto& e = e_basis();
  CHECK(max_diff(q_conjugate(e[0].mat()), -e[2].mat()) == 0);
  CHECK(max_diff(q_conjugate(e[3].mat()), e[3].mat()) == 0);
  CHECK(max_diff(q_conjugate(Mat4::Identity()), Mat4::Identity()) == 0);
  CHECK(q_table_defect() == 0);
  const auto& q = q_matrix();
  for (int i = 0; i < 6; ++i) {
    const auto t = q_table()[i];
    CHECK(max_diff(q * e[i].mat() * q, t.sign * e[t.image].mat()) == 0);
  }
}

TEST_CASE("rho_so22") {
  CHECK(max_diff(rho_so22(SL2Element(), SL2Element()).mat(), Mat4::Identity()) <= 1e-15);
  const double e = std::numbers::e;
  const SL2Element d(e, 0, 0, 1 / e);
  CHECK(std::abs(rho_so22(d, d).trace() - 4 * std::cosh(1.0) * std::cosh(1.0)) <= 1e-12);
  CHECK(rho_so22(d, d).trace() == doctest::Approx(9.5243914).epsilon(1e-7));

  std::mt19937_64 rng(4);
  double worst = 0;
  for (int k = 0; k < 100; ++k) {
    const auto a = random_sl2(rng), b = random_sl2(rng), c = random_sl2(rng), d2 = random_sl2(rng);
    worst = std::max(worst, max_diff(rho_so22(a * c, b * d2).mat(),
                                     rho_so22(a, b).mat() * rho_so22(c, d2).mat()));
    // rho(A, A) fixes the image of the identity matrix, (sqrt2, 0, 0, 0).
    const Vec4 fixed = rho_so22(a, a).mat() * Vec4(1, 0, 0, 0);
    REQUIRE((fixed - Vec4(1, 0, 0, 0)).cwiseAbs().maxCoeff() <= 1e-10);
  }
  CHECK(worst <= 1e-10);
  CHECK(max_abs_diff(so22_basis_to_matrix(Vec4(1, 0, 0, 0)), (1 / std::sqrt(2.0)) * Mat2::identity()) <= 1e-15);
}

TEST_CASE("translation lengths") {
  const double e = std::numbers::e;
  CHECK(translation_length(SL2Element(e, 0, 0, 1 / e)) == doctest::Approx(2).epsilon(1e-14));
  CHECK(std::abs(length_from_trace(2 * (1 + std::sqrt(2.0))) - 2 * std::acosh(1 + std::sqrt(2.0))) <= 1e-14);
  CHECK(length_from_trace(2 * (1 + std::sqrt(2.0))) == doctest::Approx(3.0571418).epsilon(1e-7));
  CHECK(length_from_trace(-2 * (1 + std::sqrt(2.0))) == length_from_trace(2 * (1 + std::sqrt(2.0))));
  CHECK_THROWS_AS(length_from_trace(2.0), NotHyperbolic);
  CHECK_THROWS_AS(translation_length(SL2Element(1, 1, 0, 1)), NotHyperbolic);

  CHECK(ads_length(2, 2) == 2);
  CHECK(ads_length(2, 4) == 3);
  CHECK(ads_length(0, 0) == 0);

  std::mt19937_64 rng(5);
  const SL2Element a(3, 1, 2, 1);
  const double l = translation_length(a);
  for (int k = 0; k < 100; ++k) {
    const auto g = random_sl2(rng);
    REQUIRE(std::abs(translation_length(g * a * g.inverse()) - l) <= 1e-12);
  }
  CHECK(std::abs(translation_length(a.inverse()) - l) <= 1e-12);
}

TEST_CASE("projective distance ignores the sign") {
  const Mat2 m{2, 1, 1, 1};
  CHECK(projective_distance(m, -1.0 * m) == 0);
  CHECK(projective_distance(m, m) == 0);
  CHECK(SL2Element(-2, -1, -1, -1).positive().trace() == 3);
}
