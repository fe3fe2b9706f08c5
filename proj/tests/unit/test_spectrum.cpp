#include <doctest.h>

#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "ghlab/io.hpp"
#include "ghlab/spectrum.hpp"

using namespace ghlab;
using namespace ghlab::spectrum;

namespace {

const rep::SurfaceRepresentation& base() {
  static const auto r = rep::octagon_fuchsian();
  return r;
}

const LengthSpectrum& fuchsian6() {
  static const auto s = enumerate_classes(GHPair(base(), base()), 6);
  return s;
}

std::string csv(const LengthSpectrum& s) {
  std::ostringstream out;
  io::write_spectrum_csv(out, s);
  return out.str();
}

LengthSpectrum synthetic(double rate, double t_max) {
  LengthSpectrum s;
  s.generator_names = rep::standard_presentation(2).generator_names;
  s.max_word_len = 12;
  s.min_generator_length = t_max / 12;
  // Class k sits at the T where floor(exp(rate T)) first reaches k.
  const auto n = static_cast<std::size_t>(std::exp(rate * t_max));
  for (std::size_t k = 1; k <= n; ++k) {
    SpectrumEntry e;
    e.len = std::log(static_cast<double>(k)) / rate;
    s.entries.push_back(e);
  }
  return s;
}

}  // namespace

TEST_CASE("one-letter spectrum") {
  const auto s = enumerate_classes(GHPair(base(), base()), 1);
  CHECK(s.entries.size() == 8);
  for (const auto& e : s.entries) {
    CHECK(std::abs(e.tr_left) > 2);
    CHECK(std::abs(e.len - 2 * std::acosh(1 + std::sqrt(2.0))) <= 1e-12);
  }
  CHECK(enumerate_classes(GHPair(base(), base()), 0).entries.empty());
}

TEST_CASE("Fuchsian spectrum at word length 6") {
  const auto& s = fuchsian6();
  // Frozen reference value of this enumeration.
  CHECK(counting_function(s, 4.0) == 24);
  CHECK(counting_function(s, 0) == 0);
  CHECK(counting_function(s, std::numeric_limits<double>::infinity()) == s.entries.size());

  std::set<Word> seen;
  for (std::size_t i = 0; i < s.entries.size(); ++i) {
    const auto& e = s.entries[i];
    REQUIRE(std::abs(e.len - 0.5 * (e.len_left + e.len_right)) <= 1e-12);
    REQUIRE(words::is_min_rotation(e.word));
    REQUIRE(words::is_cyclically_reduced(e.word, 4));
    REQUIRE(seen.insert(e.word).second);
    if (i > 0) REQUIRE(s.entries[i - 1].len <= e.len);
  }
  const auto s5 = enumerate_classes(GHPair(base(), base()), 5);
  CHECK(s5.entries.size() < s.entries.size());
}

TEST_CASE("inverse symmetry of the lengths") {
  const auto& s = fuchsian6();
  std::multiset<long long> keys;
  for (const auto& e : s.entries) keys.insert(std::llround(e.len * 1e8));
  for (const auto& e : s.entries) {
    const auto inv = words::min_rotation(words::inverse(e.word, 4));
    const auto l = rep::evaluate_word(base(), inv);
    CHECK(keys.count(std::llround(lie::translation_length(l) * 1e8)) > 0);
  }
}

TEST_CASE("enumeration does not depend on the thread count") {
  const GHPair pair(base(), base());
  CHECK(csv(enumerate_classes(pair, 5, 1)) == csv(enumerate_classes(pair, 5, 4)));
}

TEST_CASE("conjugation leaves the lengths") {
  const auto c = rep::conjugate(base(), lie::SL2Element(2, 1, 1, 1));
  const auto a = enumerate_classes(GHPair(base(), base()), 4);
  const auto b = enumerate_classes(GHPair(c, c), 4);
  REQUIRE(a.entries.size() == b.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i)
    CHECK(std::abs(a.entries[i].len - b.entries[i].len) <= 1e-9);
}

TEST_CASE("entropy estimate on a synthetic spectrum") {
  const auto s = synthetic(0.5, 24);
  const auto e = entropy_estimate(s, {12, 24});
  CHECK(e.value == doctest::Approx(0.5).epsilon(0.04));
  CHECK(e.sample_count >= 10);
  CHECK(e.window.lo < e.window.hi);
  CHECK_THROWS_AS(entropy_estimate(s, {12, 30}), InvalidArgument);
  CHECK_THROWS_AS(entropy_estimate(synthetic(0.5, 5), {0.1, 2}), InsufficientData);
  CHECK_THROWS_AS(entropy_estimate(s, {12, 24}, 5), InvalidArgument);
}

TEST_CASE("traces through the kernel match direct evaluation") {
  const auto words = reduced_words(4, 3);
  CHECK(words.size() == 8 + 8 * 7 + 8 * 7 * 7);
  const auto tr = evaluate_traces(base(), words);
  for (std::size_t i = 0; i < words.size(); ++i)
    REQUIRE(std::abs(tr[i] - rep::evaluate_word(base(), words[i]).trace()) <= 1e-12 * std::max(1.0, std::abs(tr[i])));
}

TEST_CASE("bending derivative vanishes at the Fuchsian locus") {
  const auto v = rep::random_direction(base(), 1);
  const auto a = bending_derivative_test(base(), v, 1e-3, 4);
  const auto b = bending_derivative_test(base(), v, 2e-3, 4);
  CHECK(a.max_rel_derivative <= 1e-9);
  CHECK(std::abs(a.max_rel_derivative - b.max_rel_derivative) <= 1e-9);
  CHECK_THROWS_AS(bending_derivative_test(base(), v, 1e-1, 4), InvalidArgument);

  const rep::PairPath same_sign = [&](double t) {
    const auto d = rep::deform(base(), v, t);
    return GHPair(d, d);
  };
  CHECK(derivative_test(same_sign, 1e-3, 4).max_rel_derivative > 1e-3);
}

TEST_CASE("proportionality") {
  const auto v = rep::random_direction(base(), 2);
  const rep::PairPath bend = [&](double t) { return rep::pure_bending_path(base(), v, t); };
  const auto r = proportionality_test(bend, 1e-3, 4);
  CHECK(std::abs(r.k_fit) <= 1e-8);
  CHECK(r.rel_residual <= 1e-8);

  const GHPair fixed(base(), base());
  const rep::PairPath still = [&](double) { return fixed; };
  const auto z = proportionality_test(still, 1e-3, 3);
  CHECK(z.k_fit == 0);
}

TEST_CASE("eigenvalue expansion") {
  const lie::SL2Element a(2, 0, 0, 0.5), b(2, 1, 1, 1);
  const auto rows = eigen_expansion_check(a, b, 2, 10);
  REQUIRE(rows.size() == 9);
  const auto& r3 = rows[1];
  CHECK(r3.n == 3);
  // A^3 B has trace 16.125.
  CHECK(std::abs(r3.log_mu - std::log((16.125 + std::sqrt(16.125 * 16.125 - 4)) / 2)) <= 1e-14);
  CHECK(std::abs(r3.expansion - (4 * std::log(2.0) + 1.0 / 256)) <= 1e-14);
  CHECK(std::abs(r3.log_mu - 2.776512) <= 2e-5);
  CHECK(std::abs(r3.expansion - 2.776497) <= 2e-5);
  CHECK(std::abs(r3.remainder) <= 1e-4);
  double lo = 1e300, hi = 0;
  for (const auto& r : rows) {
    lo = std::min(lo, std::abs(r.normalized));
    hi = std::max(hi, std::abs(r.normalized));
  }
  CHECK(hi <= 10);
  CHECK(lo > 0);
  CHECK_THROWS_AS(eigen_expansion_check(a, lie::SL2Element(3, 0, 0, 1.0 / 3), 2, 4),
                  DegenerateConfiguration);
}

TEST_CASE("trace identity in SO(2,2)") {
  const auto v = rep::random_direction(base(), 5);
  const auto pair = rep::pure_bending_path(base(), v, 0.3);
  for (const auto& w : reduced_words(4, 3)) {
    const auto c = trace_so22_check(pair, w);
    REQUIRE(c.passed);
    REQUIRE(c.rel_error <= 1e-8);
  }
  const auto p = rep::SurfaceRepresentation(base());
  CHECK_THROWS_AS(trace_so22_check(GHPair(p, p), {0, 4}), NotHyperbolic);
}
