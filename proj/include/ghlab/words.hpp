#pragma once

// Cyclic words in a one-relator surface group: reduction, rotation
// normal form and the relator moves that identify conjugate words.

#include <optional>
#include <string>
#include <vector>

#include "ghlab/surface_rep.hpp"

namespace ghlab::words {

using rep::Word;

/// Rotations of the relator and of its inverse (each of length |R|).
class RelatorPieces {
 public:
  RelatorPieces(const Word& relator, int generator_count);

  int generator_count() const { return n_; }
  int relator_length() const { return len_; }
  const std::vector<Word>& pieces() const { return pieces_; }

  /// True if some cyclic subword of w of length > |R|/2 is a relator piece,
  /// i.e. w can be shortened by a relator substitution.
  bool has_long_piece(const Word& w) const;

  /// True if the last `m` letters of the (linear) prefix w[0, len) form a
  /// relator piece of length m.
  bool suffix_is_piece(const Word& w, std::size_t len, int m) const;

 private:
  int n_;
  int len_;
  std::vector<Word> pieces_;
};

bool is_cyclically_reduced(const Word& w, int generator_count);

/// Free and cyclic reduction.
Word cyclic_reduce(const Word& w, int generator_count);

/// Lexicographically least rotation.
Word min_rotation(const Word& w);
bool is_min_rotation(const Word& w);

Word inverse(const Word& w, int generator_count);

/// Result of classifying a cyclic word.
struct ClassInfo {
  /// False when some relator move shortens the word: it is not a shortest
  /// representative of its conjugacy class.
  bool geodesic = false;
  /// Least rotation over all cyclic words reachable by relator moves.
  Word canonical;
};

/// Images of w under one-layer relator moves: annular diagrams with a single
/// ring of relator cells between w and the image. Returns nullopt when some
/// image is shorter than w after reduction. Only images no longer than w are
/// listed (as least rotations).
std::optional<std::vector<Word>> relator_moves(const Word& w, const RelatorPieces& pieces);

/// Explores the orbit of w under rotations and relator moves. `limit` caps the
/// orbit size; larger orbits are reported as geodesic with the least element
/// seen.
ClassInfo classify(const Word& w, const RelatorPieces& pieces, std::size_t limit = 4096);

/// "g0.g1.-g2"
std::string format_word(const Word& w, const std::vector<std::string>& names);
Word parse_word(const std::string& s, const std::vector<std::string>& names);

}  // namespace ghlab::words
