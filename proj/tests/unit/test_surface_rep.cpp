#include <doctest.h>

#include <cmath>

#include "ghlab/surface_rep.hpp"

using namespace ghlab;
using namespace ghlab::rep;

namespace {

const SurfaceRepresentation& base() {
  static const SurfaceRepresentation r = octagon_fuchsian();
  return r;
}

}  // namespace

TEST_CASE("octagon base point") {
  const auto& r = base();
  CHECK(r.generator_count() == 4);
  CHECK(r.residual() <= 1e-9);
  CHECK(r.generators()[0].trace() == doctest::Approx(2 + 2 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(lie::translation_length(r.generators()[0]) ==
        doctest::Approx(2 * std::acosh(1 + std::sqrt(2.0))).epsilon(1e-12));
  CHECK_NOTHROW(r.presentation().validate());
  CHECK(r.presentation().relator.size() == 8);
}

TEST_CASE("octagon symmetry: r permutes the generators") {
  const auto gens = octagon_generators();
  const Mat2 rot = octagon_rotation();
  for (int k = 0; k < 3; ++k) {
    const Mat2 moved = rot * gens[k] * rot.adjugate();
    CHECK(lie::projective_distance(moved, gens[k + 1]) <= 1e-12);
  }
}

TEST_CASE("relator residual") {
  const auto& r = base();
  auto mats = r.matrices();
  mats[2] = Mat2::identity();
  CHECK(relator_residual(r.presentation(), mats) > 0.1);

  // Orthogonal conjugators keep the rounding of the relator product.
  for (double a : {0.3, 1.1, 2.5}) {
    const auto c = conjugate(r, SL2Element(std::cos(a), std::sin(a), -std::sin(a), std::cos(a)));
    CHECK(std::abs(c.residual() - r.residual()) <= 1e-12);
  }
  CHECK_THROWS_AS(SurfaceRepresentation(r.presentation(),
                                        {r.generators()[0], r.generators()[1], r.generators()[2],
                                         SL2Element(2, 0, 0, 0.5)}),
                  ValidationError);
}

TEST_CASE("presentation validation") {
  auto p = standard_presentation(2);
  p.relator = {0, 1, 4, 5, 2, 3, 6, 7};
  CHECK_NOTHROW(p.validate());
  p.relator = {0, 1, 4, 5, 2, 3, 6, 6};
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  p.relator = {0, 1, 4, 5};
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  CHECK(letter_from_signed(-2, 4) == 5);
  CHECK(signed_from_letter(5, 4) == -2);
  CHECK(signed_from_letter(letter_from_signed(3, 4), 4) == 3);
}

TEST_CASE("evaluate_word") {
  const auto& r = base();
  CHECK(lie::max_abs_diff(evaluate_word(r, {0}).mat(), r.generators()[0].mat()) == 0);
  CHECK(lie::max_abs_diff(evaluate_word(r, {0, 4}).mat(), Mat2::identity()) <= 1e-14);
  CHECK(lie::projective_distance(evaluate_word(r, r.presentation().relator).mat(), Mat2::identity()) <= 1e-9);
}

TEST_CASE("tangent directions are orthogonal to conjugation") {
  const auto& r = base();
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto v = random_direction(r, s);
    CHECK(v.normalized);
    CHECK(orbit_overlap(r, v) <= 1e-8);
    CHECK(to_vector(v).norm() == doctest::Approx(1).epsilon(1e-12));
    const Eigen::VectorXd jv = relator_jacobian(r.presentation(), r.matrices()) * to_vector(v);
    CHECK(jv.cwiseAbs().maxCoeff() <= 1e-10);
  }
  CHECK(to_vector(from_vector(to_vector(random_direction(r, 9)), true)) ==
        to_vector(random_direction(r, 9)));
}

TEST_CASE("deform") {
  const auto& r = base();
  const auto v = random_direction(r, 7);
  const auto same = deform(r, v, 0);
  for (int k = 0; k < 4; ++k) CHECK(same.generators()[k].mat() == r.generators()[k].mat());

  double prev = 0;
  for (double t : {1e-3, 1e-2}) {
    const auto d = deform(r, v, t);
    CHECK(d.residual() <= 1e-9);
    double move = 0, dlen = 0;
    for (int k = 0; k < 4; ++k) {
      move = std::max(move, lie::max_abs_diff(d.generators()[k].mat(), r.generators()[k].mat()));
      dlen = std::max(dlen, std::abs(lie::translation_length(d.generators()[k]) -
                                     lie::translation_length(r.generators()[k])));
    }
    CHECK(move <= 20 * t);
    CHECK(dlen <= 20 * t);
    CHECK(move > prev);
    prev = move;
  }
  CHECK(deform(r, v, 0.3).residual() <= 1e-9);
  CHECK_THROWS_AS(deform(r, v, 0.6), NewtonDiverged);
}

TEST_CASE("deform along pure conjugation keeps the trace map") {
  const auto& r = base();
  TangentDirection conj;
  const Sl2Algebra x{0.3, -0.2, 0.5};
  for (const auto& g : r.matrices()) {
    const auto ad = lie::adjoint(g, x);
    conj.components.push_back({x.a - ad.a, x.b - ad.b, x.c - ad.c});
  }
  const auto d = deform(r, conj, 0.05);
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b)
      for (int c = 0; c < 8; ++c) {
        const Word w{a, b, c, (a + b) % 8};
        REQUIRE(std::abs(std::abs(evaluate_word(d, w).trace()) - std::abs(evaluate_word(r, w).trace())) <=
                1e-9 * std::max(1.0, std::abs(evaluate_word(r, w).trace())));
      }
}

TEST_CASE("pure bending path") {
  const auto& r = base();
  const auto v = random_direction(r, 3);
  const auto p0 = pure_bending_path(r, v, 0);
  for (int k = 0; k < 4; ++k) CHECK(p0.left.generators()[k].mat() == p0.right.generators()[k].mat());

  const auto p = pure_bending_path(r, v, 0.3);
  const auto m = pure_bending_path(r, v, -0.3);
  double sep = 0;
  for (const Word& w : std::vector<Word>{{0}, {1}, {2}, {3}, {0, 1}, {0, 2}, {1, 3, 6}}) {
    const double lp = lie::ads_length(lie::translation_length(evaluate_word(p.left, w)),
                                      lie::translation_length(evaluate_word(p.right, w)));
    const double lm = lie::ads_length(lie::translation_length(evaluate_word(m.left, w)),
                                      lie::translation_length(evaluate_word(m.right, w)));
    CHECK(std::abs(lp - lm) <= 1e-12);
    sep = std::max(sep, std::abs(std::abs(evaluate_word(p.left, w).trace()) -
                                 std::abs(evaluate_word(p.right, w).trace())));
  }
  CHECK(sep > 1e-6);
}

TEST_CASE("tangent cocycle") {
  const auto& r = base();
  const PairPath constant = [&](double) { return GHPair(r, r); };
  const auto [ul, ur] = tangent_cocycle(constant, {0, 1, 2}, 1e-4);
  CHECK(max_abs(ul) <= 1e-10);
  CHECK(max_abs(ur) <= 1e-10);

  const auto vl = random_direction(r, 11), vr = random_direction(r, 12);
  const PairPath path = [&](double t) { return GHPair(deform(r, vl, t), deform(r, vr, t)); };
  const double eps = 1e-4;
  const Word g{0, 5, 2}, h{3, 1, 6};
  Word gh = g;
  gh.insert(gh.end(), h.begin(), h.end());
  const auto ug = tangent_cocycle(path, g, eps);
  const auto uh = tangent_cocycle(path, h, eps);
  const auto ugh = tangent_cocycle(path, gh, eps);
  const Mat2 rg = evaluate_word(r, g).mat();
  const auto expect_l = ug.first + lie::adjoint(rg, uh.first);
  const auto expect_r = ug.second + lie::adjoint(rg, uh.second);
  // The gauge fixing makes |u| large (~1e3); central differences are exact
  // to O(eps^2) relative to it.
  const double scale = 1 + std::max(max_abs(ugh.first), max_abs(ugh.second));
  CHECK(max_abs(ugh.first + (-1.0) * expect_l) <= 1e-6 * scale);
  CHECK(max_abs(ugh.second + (-1.0) * expect_r) <= 1e-6 * scale);

  // u(g^-1) = -Ad(rho(g)^-1) u(g)
  const Word ginv{letter_inverse(2, 4), letter_inverse(5, 4), letter_inverse(0, 4)};
  const auto ui = tangent_cocycle(path, ginv, eps);
  CHECK(max_abs(ui.first + lie::adjoint(rg.adjugate(), ug.first)) <= 1e-6 * scale);
}
