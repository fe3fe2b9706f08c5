#pragma once

// Marked length spectra of GH pairs, entropy estimates from the counting
// function, and the derivative tests for the pressure-metric degeneracy.

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "ghlab/surface_rep.hpp"
#include "ghlab/words.hpp"

namespace ghlab::spectrum {

using rep::GHPair;
using rep::SurfaceRepresentation;
using rep::Word;

struct SpectrumEntry {
  Word word;
  double tr_left = 0;
  double tr_right = 0;
  double len_left = 0;
  double len_right = 0;
  double len = 0;
};

/// Entries sorted by (len, tr_L, tr_R, word).
struct LengthSpectrum {
  std::vector<SpectrumEntry> entries;
  std::vector<std::string> generator_names;
  int max_word_len = 0;
  /// Smallest ads-length among single-letter classes; NaN if unknown.
  double min_generator_length = std::numeric_limits<double>::quiet_NaN();

  void sort();
};

/// All conjugacy classes representable by cyclically reduced words of length
/// <= max_word_len, one row per class. A class is represented by the least
/// rotation over its orbit under one-layer relator moves; words that a relator
/// move shortens are skipped, as are non-hyperbolic classes. Sharded by first
/// letter over `threads` workers (0 = hardware concurrency); the result does
/// not depend on the thread count.
LengthSpectrum enumerate_classes(const GHPair& pair, int max_word_len, int threads = 0);

/// Number of entries with len <= T.
std::size_t counting_function(const LengthSpectrum& spec, double t);

struct Window {
  double lo = 0;
  double hi = 0;
};

struct EntropyEstimate {
  double value = 0;
  Window window;
  double slope_stderr = 0;
  int sample_count = 0;
};

/// Least-squares slope of log N(T) over `samples` evenly spaced T in the
/// window. Throws InsufficientData with fewer than 10 usable samples or fewer
/// than 10 classes inside the window, InvalidArgument if the window ends past
/// min_generator_length * max_word_len.
EntropyEstimate entropy_estimate(const LengthSpectrum& spec, Window window, int samples = 41);

/// Largest T at which at most `frontier_share` of the classes counted by N(T)
/// need the maximal word length, capped by the cutoff rule; the window is
/// [T - width, T].
Window suggest_window(const LengthSpectrum& spec, double frontier_share = 0.2,
                      double width = 4.0);

/// Traces of the given words under one representation, batched through the
/// active SIMD kernel.
std::vector<double> evaluate_traces(const SurfaceRepresentation& rep,
                                    const std::vector<Word>& words);

struct DerivativeReport {
  double max_rel_derivative = 0;
  std::size_t class_count = 0;
};

/// max over enumerated classes of |d/dt len|/len at t = 0 along `path`
/// (central differences with step eps).
DerivativeReport derivative_test(const rep::PairPath& path, double eps, int max_word_len);

/// derivative_test along the pure bending path through (rep, rep).
DerivativeReport bending_derivative_test(const SurfaceRepresentation& rep,
                                         const rep::TangentDirection& dir, double eps,
                                         int max_word_len);

struct ProportionalityReport {
  double k_fit = 0;
  double rel_residual = 0;
  /// |Richardson-extrapolated k - k at step eps|
  double fd_error = 0;
  std::size_t class_count = 0;
};

/// Fits d/dt len(w) = k len(w) over the enumerated classes.
ProportionalityReport proportionality_test(const rep::PairPath& path, double eps,
                                           int max_word_len);

struct ExpansionRow {
  int n = 0;
  double log_mu = 0;
  double expansion = 0;
  double remainder = 0;
  /// remainder * lambda^(4n)
  double normalized = 0;
};

/// Compares log of the top eigenvalue of A^n B with
/// n log(lambda) + log(a) + lambda^(-2n) (ad - 1)/a^2. A must be
/// diag(lambda, 1/lambda) with lambda > 1; B is used up to sign so that a > 0.
/// Throws DegenerateConfiguration if a = 0 or bc = 0.
std::vector<ExpansionRow> eigen_expansion_check(const lie::SL2Element& a,
                                                const lie::SL2Element& b, int n_lo, int n_hi);

struct TraceCheck {
  double lhs = 0;
  double rhs = 0;
  double rel_error = 0;
  bool passed = false;
};

/// Trace of the SO(2,2) image of (rho_L(w), rho_R(w)), sign-normalized in
/// each factor, against the sum of exp(+-len_L/2 +- len_R/2).
TraceCheck trace_so22_check(const GHPair& pair, const Word& word);

/// All freely reduced words of length 1..max_len.
std::vector<Word> reduced_words(int generator_count, int max_len);

}  // namespace ghlab::spectrum
