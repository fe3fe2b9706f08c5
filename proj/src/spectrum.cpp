#include "ghlab/spectrum.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <thread>
#include <tuple>

#include "ghlab/simd/kernels.hpp"

namespace ghlab::spectrum {

using lie::Mat2;
using rep::letter_inverse;

void LengthSpectrum::sort() {
  std::sort(entries.begin(), entries.end(), [](const SpectrumEntry& x, const SpectrumEntry& y) {
    return std::tie(x.len, x.tr_left, x.tr_right, x.word) <
           std::tie(y.len, y.tr_left, y.tr_right, y.word);
  });
}

namespace {

struct ShardEnumerator {
  const std::vector<Mat2>& left;
  const std::vector<Mat2>& right;
  const words::RelatorPieces& pieces;
  int n;
  int max_len;
  int first;
  std::vector<SpectrumEntry> out;
  Word w;
  std::vector<Mat2> pl, pr;

  void run() {
    w.assign(max_len, 0);
    pl.assign(max_len + 1, Mat2::identity());
    pr.assign(max_len + 1, Mat2::identity());
    push(0, first);
  }

  void push(int k, int letter) {
    w[k] = letter;
    pl[k + 1] = pl[k] * left[letter];
    pr[k + 1] = pr[k] * right[letter];
    visit(k + 1);
  }

  void visit(int k) {
    consider(k);
    if (k == max_len) return;
    const int guard = pieces.relator_length() / 2 + 1;
    for (int b = first; b < 2 * n; ++b) {
      if (b == letter_inverse(w[k - 1], n)) continue;
      w[k] = b;
      if (k + 1 >= guard && pieces.suffix_is_piece(w, k + 1, guard)) continue;
      push(k, b);
    }
  }

  void consider(int k) {
    if (k > 1 && w[0] == letter_inverse(w[k - 1], n)) return;
    const Word cand(w.begin(), w.begin() + k);
    if (!words::is_min_rotation(cand)) return;
    if (pieces.has_long_piece(cand)) return;
    const auto info = words::classify(cand, pieces);
    if (!info.geodesic || info.canonical != cand) return;
    const double tl = pl[k].trace(), tr = pr[k].trace();
    if (!(std::abs(tl) > 2.0 + 1e-12) || !(std::abs(tr) > 2.0 + 1e-12)) return;
    SpectrumEntry e;
    e.word = cand;
    e.tr_left = tl;
    e.tr_right = tr;
    e.len_left = lie::length_from_trace(tl);
    e.len_right = lie::length_from_trace(tr);
    e.len = lie::ads_length(e.len_left, e.len_right);
    out.push_back(std::move(e));
  }
};

std::vector<Mat2> letters(const SurfaceRepresentation& rep) {
  std::vector<Mat2> out;
  for (int l = 0; l < 2 * rep.generator_count(); ++l) out.push_back(rep.letter(l));
  return out;
}

}  // namespace

LengthSpectrum enumerate_classes(const GHPair& pair, int max_word_len, int threads) {
  if (max_word_len < 0 || max_word_len > 12) {
    throw InvalidArgument("max_word_len must lie in [0, 12]");
  }
  const auto& p = pair.left.presentation();
  const int n = p.generator_count();
  LengthSpectrum spec;
  spec.generator_names = p.generator_names;
  spec.max_word_len = max_word_len;
  if (max_word_len == 0) return spec;

  const auto left = letters(pair.left);
  const auto right = letters(pair.right);
  const words::RelatorPieces pieces(p.relator, n);

  const int shards = 2 * n;
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min(threads, shards);
  std::vector<std::vector<SpectrumEntry>> results(shards);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int s = next++; s < shards; s = next++) {
      ShardEnumerator e{left, right, pieces, n, max_word_len, s, {}, {}, {}, {}};
      e.run();
      results[s] = std::move(e.out);
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (auto& r : results) {
    spec.entries.insert(spec.entries.end(), std::make_move_iterator(r.begin()),
                        std::make_move_iterator(r.end()));
  }
  spec.sort();
  for (const auto& e : spec.entries) {
    if (e.word.size() == 1 && !(e.len >= spec.min_generator_length)) {
      spec.min_generator_length = e.len;
    }
  }
  return spec;
}

std::size_t counting_function(const LengthSpectrum& spec, double t) {
  if (std::isnan(t)) throw InvalidArgument("T must be a number");
  const auto it = std::upper_bound(spec.entries.begin(), spec.entries.end(), t,
                                   [](double v, const SpectrumEntry& e) { return v < e.len; });
  return static_cast<std::size_t>(it - spec.entries.begin());
}

EntropyEstimate entropy_estimate(const LengthSpectrum& spec, Window window, int samples) {
  if (!(window.lo < window.hi) || window.lo < 0) {
    throw InvalidArgument("entropy window must satisfy 0 <= T_lo < T_hi");
  }
  if (samples < 10) throw InvalidArgument("at least 10 samples are required");
  const double cutoff = spec.min_generator_length * spec.max_word_len;
  if (std::isfinite(cutoff) && window.hi > cutoff * (1 + 1e-12)) {
    throw InvalidArgument("window ends past the word-length cutoff " + std::to_string(cutoff));
  }
  std::vector<double> xs, ys;
  for (int i = 0; i < samples; ++i) {
    const double t = window.lo + (window.hi - window.lo) * i / (samples - 1);
    const std::size_t count = counting_function(spec, t);
    if (count > 0) {
      xs.push_back(t);
      ys.push_back(std::log(static_cast<double>(count)));
    }
  }
  const std::size_t inside =
      counting_function(spec, window.hi) - counting_function(spec, window.lo);
  if (xs.size() < 10 || inside < 10) {
    throw InsufficientData("too few samples in the entropy window (" +
                           std::to_string(xs.size()) + " grid points, " +
                           std::to_string(inside) + " classes)");
  }
  const double m = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  const double slope = sxy / sxx;
  double ssr = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (my + slope * (xs[i] - mx));
    ssr += r * r;
  }
  EntropyEstimate est;
  est.value = slope;
  est.window = window;
  est.slope_stderr = std::sqrt(ssr / (m - 2) / sxx);
  est.sample_count = static_cast<int>(xs.size());
  return est;
}

Window suggest_window(const LengthSpectrum& spec, double frontier_share, double width) {
  if (spec.entries.empty() || spec.max_word_len <= 0) {
    throw InsufficientData("empty spectrum");
  }
  std::size_t total = 0, frontier = 0;
  double best = 0;
  for (std::size_t i = 0; i < spec.entries.size(); ++i) {
    const auto& e = spec.entries[i];
    ++total;
    if (static_cast<int>(e.word.size()) == spec.max_word_len) ++frontier;
    const bool last_tie = i + 1 == spec.entries.size() || spec.entries[i + 1].len != e.len;
    if (last_tie && frontier <= frontier_share * total) best = e.len;
  }
  const double cutoff = spec.min_generator_length * spec.max_word_len;
  if (std::isfinite(cutoff)) best = std::min(best, cutoff);
  if (best <= width) throw InsufficientData("spectrum too short for an entropy window");
  return {best - width, best};
}

std::vector<double> evaluate_traces(const SurfaceRepresentation& rep,
                                    const std::vector<Word>& words) {
  const int letters = 2 * rep.generator_count();
  std::vector<double> a(letters), b(letters), c(letters), d(letters);
  for (int l = 0; l < letters; ++l) {
    const Mat2 m = rep.letter(l);
    a[l] = m.a;
    b[l] = m.b;
    c[l] = m.c;
    d[l] = m.d;
  }
  const simd::MatrixTable table{a.data(), b.data(), c.data(), d.data()};
  std::map<std::size_t, std::vector<std::size_t>> by_length;
  for (std::size_t i = 0; i < words.size(); ++i) by_length[words[i].size()].push_back(i);
  std::vector<double> out(words.size());
  const auto& k = simd::active();
  for (const auto& [len, idx] : by_length) {
    std::vector<std::int32_t> flat;
    flat.reserve(len * idx.size());
    for (std::size_t i : idx) {
      for (int l : words[i]) {
        if (l < 0 || l >= letters) throw InvalidArgument("letter out of range");
        flat.push_back(l);
      }
    }
    std::vector<double> tr(idx.size());
    k.word_traces(table, flat.data(), idx.size(), len, tr.data());
    for (std::size_t j = 0; j < idx.size(); ++j) out[idx[j]] = tr[j];
  }
  return out;
}

namespace {

std::vector<double> pair_lengths(const GHPair& pair, const std::vector<Word>& words) {
  const auto tl = evaluate_traces(pair.left, words);
  const auto tr = evaluate_traces(pair.right, words);
  std::vector<double> out(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    out[i] = lie::ads_length(lie::length_from_trace(tl[i]), lie::length_from_trace(tr[i]));
  }
  return out;
}

std::vector<double> central_difference(const rep::PairPath& path, const std::vector<Word>& words,
                                       double eps) {
  const auto plus = pair_lengths(path(eps), words);
  const auto minus = pair_lengths(path(-eps), words);
  std::vector<double> d(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) d[i] = (plus[i] - minus[i]) / (2 * eps);
  return d;
}

void check_step(double eps) {
  if (!(eps >= 1e-5 && eps <= 1e-2)) throw InvalidArgument("eps must lie in [1e-5, 1e-2]");
}

}  // namespace

DerivativeReport derivative_test(const rep::PairPath& path, double eps, int max_word_len) {
  check_step(eps);
  const auto spec = enumerate_classes(path(0), max_word_len);
  std::vector<Word> words;
  for (const auto& e : spec.entries) words.push_back(e.word);
  const auto d = central_difference(path, words, eps);
  DerivativeReport r;
  r.class_count = words.size();
  for (std::size_t i = 0; i < words.size(); ++i) {
    r.max_rel_derivative = std::max(r.max_rel_derivative, std::abs(d[i]) / spec.entries[i].len);
  }
  return r;
}

DerivativeReport bending_derivative_test(const SurfaceRepresentation& rep,
                                         const rep::TangentDirection& dir, double eps,
                                         int max_word_len) {
  const auto d = dir.normalized ? dir : rep::project_direction(rep, dir);
  return derivative_test(
      [&](double t) {
        return t == 0 ? GHPair(rep, rep) : rep::pure_bending_path(rep, d, t);
      },
      eps, max_word_len);
}

ProportionalityReport proportionality_test(const rep::PairPath& path, double eps,
                                           int max_word_len) {
  check_step(eps);
  const auto spec = enumerate_classes(path(0), max_word_len);
  std::vector<Word> words;
  std::vector<double> len;
  for (const auto& e : spec.entries) {
    words.push_back(e.word);
    len.push_back(e.len);
  }
  const auto coarse = central_difference(path, words, eps);
  const auto fine = central_difference(path, words, eps / 2);
  double ll = 0, dl = 0, cl = 0;
  std::vector<double> d(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    d[i] = (4 * fine[i] - coarse[i]) / 3;
    ll += len[i] * len[i];
    dl += d[i] * len[i];
    cl += coarse[i] * len[i];
  }
  ProportionalityReport r;
  r.class_count = words.size();
  if (words.empty()) return r;
  r.k_fit = dl / ll;
  r.fd_error = std::abs(r.k_fit - cl / ll);
  double rr = 0;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const double res = d[i] - r.k_fit * len[i];
    rr += res * res;
  }
  r.rel_residual = std::sqrt(rr / ll);
  return r;
}

std::vector<ExpansionRow> eigen_expansion_check(const lie::SL2Element& a_elem,
                                                const lie::SL2Element& b_elem, int n_lo,
                                                int n_hi) {
  const Mat2& am = a_elem.mat();
  if (am.b != 0 || am.c != 0 || !(am.a > 1)) {
    throw InvalidArgument("A must be diag(lambda, 1/lambda) with lambda > 1");
  }
  if (n_lo < 1 || n_hi < n_lo) throw InvalidArgument("invalid n range");
  const double lambda = am.a;
  Mat2 bm = b_elem.mat();
  if (bm.a < 0) bm = -1.0 * bm;
  const double a = bm.a, b = bm.b, c = bm.c, d = bm.d;
  if (a == 0 || b * c == 0) {
    throw DegenerateConfiguration("expansion needs a != 0 and bc != 0 (B shares an axis with A)");
  }
  const double k = b * c / (a * a);
  std::vector<ExpansionRow> rows;
  for (int n = n_lo; n <= n_hi; ++n) {
    const double s = std::pow(lambda, -2.0 * n);
    const double p = s * d / a;
    const double sk = s * k;
    const double root = std::sqrt((1 - p) * (1 - p) + 4 * sk);
    const double den = (1 - p) + root;
    // top eigenvalue = lambda^n a (1 + e)
    const double e = 2 * sk / den;
    const double two_minus_den = 4 * (s / (a * a)) / ((1 + p) + root);
    const double e_minus_sk = sk * two_minus_den / den;
    const double log1p_minus =
        std::abs(e) < 1e-4 ? e * e * (-0.5 + e * (1.0 / 3 - e / 4)) : std::log1p(e) - e;
    ExpansionRow row;
    row.n = n;
    row.expansion = n * std::log(lambda) + std::log(a) + s * (a * d - 1) / (a * a);
    row.remainder = log1p_minus + e_minus_sk;
    row.log_mu = n * std::log(lambda) + std::log(a) + std::log1p(e);
    row.normalized = row.remainder * std::pow(lambda, 4.0 * n);
    rows.push_back(row);
  }
  return rows;
}

TraceCheck trace_so22_check(const GHPair& pair, const Word& word) {
  const auto l = rep::evaluate_word(pair.left, word).positive();
  const auto r = rep::evaluate_word(pair.right, word).positive();
  const double ll = lie::translation_length(l);
  const double lr = lie::translation_length(r);
  TraceCheck out;
  out.lhs = lie::rho_so22(l, r).trace();
  out.rhs = std::exp((ll + lr) / 2) + std::exp((ll - lr) / 2) + std::exp((lr - ll) / 2) +
            std::exp(-(ll + lr) / 2);
  out.rel_error = std::abs(out.lhs - out.rhs) / out.rhs;
  out.passed = out.rel_error <= 1e-8;
  return out;
}

std::vector<Word> reduced_words(int generator_count, int max_len) {
  std::vector<Word> out;
  std::vector<Word> layer{{}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const auto& w : layer) {
      for (int l = 0; l < 2 * generator_count; ++l) {
        if (!w.empty() && l == letter_inverse(w.back(), generator_count)) continue;
        Word x = w;
        x.push_back(l);
        next.push_back(std::move(x));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

}  // namespace ghlab::spectrum
