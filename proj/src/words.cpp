#include "ghlab/words.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace ghlab::words {

using rep::letter_inverse;

RelatorPieces::RelatorPieces(const Word& relator, int generator_count)
    : n_(generator_count), len_(static_cast<int>(relator.size())) {
  const Word inv = inverse(relator, n_);
  for (const Word* r : {&relator, &inv}) {
    for (int s = 0; s < len_; ++s) {
      Word p(len_);
      for (int i = 0; i < len_; ++i) p[i] = (*r)[(s + i) % len_];
      pieces_.push_back(std::move(p));
    }
  }
}

bool RelatorPieces::has_long_piece(const Word& w) const {
  const std::size_t n = w.size();
  const std::size_t m = static_cast<std::size_t>(len_ / 2 + 1);
  if (n < m) return false;
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& p : pieces_) {
      std::size_t k = 0;
      while (k < m && w[(i + k) % n] == p[k]) ++k;
      if (k == m) return true;
    }
  }
  return false;
}

bool RelatorPieces::suffix_is_piece(const Word& w, std::size_t len, int m) const {
  if (len < static_cast<std::size_t>(m)) return false;
  const std::size_t s = len - m;
  for (const auto& p : pieces_) {
    if (std::equal(p.begin(), p.begin() + m, w.begin() + s)) return true;
  }
  return false;
}

bool is_cyclically_reduced(const Word& w, int n) {
  const std::size_t len = w.size();
  for (std::size_t i = 0; i < len; ++i) {
    if (w[(i + 1) % len] == letter_inverse(w[i], n) && len > 1) return false;
  }
  return !w.empty();
}

Word cyclic_reduce(const Word& w, int n) {
  Word out;
  for (int l : w) {
    if (!out.empty() && out.back() == letter_inverse(l, n)) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  std::size_t lo = 0, hi = out.size();
  while (hi - lo >= 2 && out[lo] == letter_inverse(out[hi - 1], n)) {
    ++lo;
    --hi;
  }
  return Word(out.begin() + lo, out.begin() + hi);
}

Word min_rotation(const Word& w) {
  Word best = w;
  Word r = w;
  for (std::size_t s = 1; s < w.size(); ++s) {
    std::rotate(r.begin(), r.begin() + 1, r.end());
    if (r < best) best = r;
  }
  return best;
}

bool is_min_rotation(const Word& w) {
  const std::size_t n = w.size();
  for (std::size_t s = 1; s < n; ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      const int a = w[(s + i) % n], b = w[i];
      if (a < b) return false;
      if (a > b) break;
    }
  }
  return true;
}

Word inverse(const Word& w, int n) {
  Word out(w.rbegin(), w.rend());
  for (int& l : out) l = letter_inverse(l, n);
  return out;
}

namespace {

/// Depth-first search for one-layer relator moves on a fixed rotation r of the
/// word. A layer is a cyclic sequence of free letters and relator cells; a
/// cell reads x u y^-1 v around its boundary (x, y optional letters shared
/// with the neighbouring cells), u on the outer word and v^-1 on the inner.
class LayerSearch {
 public:
  LayerSearch(const Word& r, const RelatorPieces& pieces)
      : r_(r), pieces_(pieces), m_(static_cast<int>(r.size())),
        len_(pieces.relator_length()), n_(pieces.generator_count()) {}

  /// Calls emit(word) for every layer whose first cell starts at r[0].
  template <class Emit>
  void run(Emit&& emit) {
    for (const auto& p : pieces_.pieces()) {
      for (int off = 0; off < 2; ++off) {
        start_ = off ? p[0] : -1;
        cell(p, off, 0, 0, emit);
      }
    }
  }

 private:
  template <class Emit>
  void step(int pos, int junction, int delta, Emit& emit) {
    if (pos == m_) {
      if (junction == start_) emit(out_);
      return;
    }
    // The best a cell can do is |u| = |R|/2 between two shared edges, which
    // shortens by 2 over |R|/2 letters; images longer than the input are
    // never needed.
    if (delta * len_ > 4 * (m_ - pos)) return;
    if (junction == -1) {
      out_.push_back(r_[pos]);
      step(pos + 1, -1, delta, emit);
      out_.pop_back();
    }
    for (const auto& p : pieces_.pieces()) {
      if (junction == -1) {
        cell(p, 0, pos, delta, emit);
      } else if (p[0] == junction) {
        cell(p, 1, pos, delta, emit);
      }
    }
  }

  template <class Emit>
  void cell(const Word& p, int off, int pos, int delta, Emit& emit) {
    for (int l = 1; off + l <= len_ && pos + l <= m_; ++l) {
      if (p[off + l - 1] != r_[pos + l - 1]) break;
      // close on a vertex: v = p[off + l, len)
      close(p, off + l, -1, pos + l, delta + (len_ - off - l) - l, emit);
      // close on a shared edge y: p[off + l] = y^-1, v = p[off + l + 1, len)
      if (off + l < len_) {
        close(p, off + l + 1, rep::letter_inverse(p[off + l], n_), pos + l,
              delta + (len_ - off - l - 1) - l, emit);
      }
    }
  }

  template <class Emit>
  void close(const Word& p, int v_begin, int junction, int pos, int delta, Emit& emit) {
    const std::size_t mark = out_.size();
    for (int j = len_ - 1; j >= v_begin; --j) out_.push_back(rep::letter_inverse(p[j], n_));
    step(pos, junction, delta, emit);
    out_.resize(mark);
  }

  const Word& r_;
  const RelatorPieces& pieces_;
  int m_, len_, n_;
  int start_ = -1;
  Word out_;
};

/// True if some cyclic subword of length `m` is a relator subword.
bool has_piece_of_length(const Word& w, const RelatorPieces& pieces, std::size_t m) {
  const std::size_t n = w.size();
  if (n < m) return false;
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& p : pieces.pieces()) {
      std::size_t k = 0;
      while (k < m && w[(i + k) % n] == p[k]) ++k;
      if (k == m) return true;
    }
  }
  return false;
}

}  // namespace

std::optional<std::vector<Word>> relator_moves(const Word& w, const RelatorPieces& pieces) {
  const int n = pieces.generator_count();
  std::vector<Word> out;
  if (!has_piece_of_length(w, pieces, static_cast<std::size_t>(pieces.relator_length() / 2 - 1))) {
    return out;
  }
  const std::size_t m = w.size();
  bool shorter = false;
  Word r = w;
  for (std::size_t s = 0; s < m && !shorter; ++s) {
    LayerSearch search(r, pieces);
    search.run([&](const Word& image) {
      if (image.size() > m || shorter) return;
      Word reduced = cyclic_reduce(image, n);
      if (reduced.size() < m) {
        shorter = true;
        return;
      }
      out.push_back(min_rotation(reduced));
    });
    std::rotate(r.begin(), r.begin() + 1, r.end());
  }
  if (shorter) return std::nullopt;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ClassInfo classify(const Word& w, const RelatorPieces& pieces, std::size_t limit) {
  const int n = pieces.generator_count();
  ClassInfo info;
  if (!is_cyclically_reduced(w, n) || pieces.has_long_piece(w)) return info;

  std::set<Word> seen{min_rotation(w)};
  std::deque<Word> queue{*seen.begin()};
  while (!queue.empty() && seen.size() < limit) {
    const Word u = queue.front();
    queue.pop_front();
    const auto moves = relator_moves(u, pieces);
    if (!moves) return info;
    for (const auto& v : *moves) {
      if (pieces.has_long_piece(v)) return info;
      if (seen.insert(v).second) queue.push_back(v);
    }
  }
  info.geodesic = true;
  info.canonical = *seen.begin();
  return info;
}

std::string format_word(const Word& w, const std::vector<std::string>& names) {
  const int n = static_cast<int>(names.size());
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += '.';
    if (w[i] >= n) out += '-';
    out += names.at(w[i] < n ? w[i] : w[i] - n);
  }
  return out;
}

Word parse_word(const std::string& s, const std::vector<std::string>& names) {
  const int n = static_cast<int>(names.size());
  Word w;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, '.')) {
    bool inv = false;
    if (!tok.empty() && tok[0] == '-') {
      inv = true;
      tok.erase(0, 1);
    }
    const auto it = std::find(names.begin(), names.end(), tok);
    if (it == names.end()) throw InvalidArgument("unknown generator in word: " + s);
    const int k = static_cast<int>(it - names.begin());
    w.push_back(inv ? k + n : k);
  }
  if (w.empty()) throw InvalidArgument("empty word");
  return w;
}

}  // namespace ghlab::words
