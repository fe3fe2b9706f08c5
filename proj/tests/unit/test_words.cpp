#include <doctest.h>

#include "ghlab/surface_rep.hpp"
#include "ghlab/words.hpp"

using namespace ghlab;
using namespace ghlab::words;

namespace {

const rep::SurfaceRepresentation& base() {
  static const auto r = rep::octagon_fuchsian();
  return r;
}

}  // namespace

TEST_CASE("reduction and rotation") {
  CHECK(cyclic_reduce({0, 4}, 4).empty());
  CHECK(cyclic_reduce({1, 0, 2, 5}, 4) == Word{0, 2});
  CHECK(cyclic_reduce({0, 1, 5, 2}, 4) == Word{0, 2});
  CHECK(is_cyclically_reduced({0, 1, 2}, 4));
  CHECK_FALSE(is_cyclically_reduced({0, 1, 4}, 4));
  CHECK(min_rotation({2, 0, 1}) == Word{0, 1, 2});
  CHECK(is_min_rotation({0, 1, 2}));
  CHECK_FALSE(is_min_rotation({1, 2, 0}));
  CHECK(inverse({0, 1, 6}, 4) == Word{2, 5, 4});
}

TEST_CASE("format and parse") {
  const auto names = rep::standard_presentation(2).generator_names;
  const Word w{0, 1, 6};
  CHECK(format_word(w, names) == "g0.g1.-g2");
  CHECK(parse_word("g0.g1.-g2", names) == w);
  CHECK_THROWS_AS(parse_word("g0.h1", names), InvalidArgument);
}

TEST_CASE("relator pieces") {
  const auto& p = base().presentation();
  const RelatorPieces pieces(p.relator, 4);
  CHECK(pieces.relator_length() == 8);
  CHECK(pieces.pieces().size() == 16);
  CHECK(pieces.has_long_piece(p.relator));
  Word five(p.relator.begin(), p.relator.begin() + 5);
  CHECK(pieces.has_long_piece(five));
  Word four(p.relator.begin(), p.relator.begin() + 4);
  CHECK_FALSE(pieces.has_long_piece(four));
  CHECK(pieces.suffix_is_piece(p.relator, 8, 3));
}

TEST_CASE("classify") {
  const auto& r = base();
  const auto& p = r.presentation();
  const RelatorPieces pieces(p.relator, 4);

  Word five(p.relator.begin(), p.relator.begin() + 5);
  CHECK_FALSE(classify(five, pieces).geodesic);

  // Rotations share one canonical representative.
  const Word w{0, 1, 6, 3, 1};
  const auto a = classify(w, pieces);
  const auto b = classify(Word{6, 3, 1, 0, 1}, pieces);
  CHECK(a.geodesic);
  CHECK(a.canonical == b.canonical);

  // Relator moves keep the conjugacy class, so the trace.
  Word half(p.relator.begin(), p.relator.begin() + 4);
  const auto moves = relator_moves(half, pieces);
  REQUIRE(moves.has_value());
  const double tr = std::abs(rep::evaluate_word(r, half).trace());
  CHECK(!moves->empty());
  for (const auto& m : *moves) {
    CHECK(m.size() == 4);
    CHECK(std::abs(std::abs(rep::evaluate_word(r, m).trace()) - tr) <= 1e-9 * tr);
  }
}
