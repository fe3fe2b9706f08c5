#include <doctest.h>

#include <cstring>
#include <random>
#include <vector>

#include "ghlab/simd/kernels.hpp"

using namespace ghlab::simd;

namespace {

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("scalar is always available") {
  const auto isas = available_isas();
  REQUIRE(!isas.empty());
  CHECK(isas.front() == Isa::Scalar);
  CHECK(isa_name(Isa::Scalar) == "scalar");
  bool listed = false;
  for (auto i : isas) listed = listed || i == active_isa();
  CHECK(listed);
}

TEST_CASE("variants agree bit for bit") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n(0, 1);
  std::uniform_int_distribution<int> letter(0, 7);

  std::vector<double> a(8), b(8), c(8), d(8);
  for (int k = 0; k < 8; ++k) {
    a[k] = 1 + std::abs(n(rng));
    b[k] = n(rng);
    c[k] = n(rng);
    d[k] = (1 + b[k] * c[k]) / a[k];
  }
  const MatrixTable table{a.data(), b.data(), c.data(), d.data()};
  const auto& ref = kernels_for(Isa::Scalar);

  for (auto isa : available_isas()) {
    CAPTURE(isa_name(isa));
    const auto& k = kernels_for(isa);
    // Word counts around the vector width exercise the tails.
    for (std::size_t count : {0u, 1u, 3u, 4u, 5u, 17u, 1000u}) {
      for (std::size_t len : {1u, 2u, 7u, 12u}) {
        std::vector<std::int32_t> words(count * len);
        for (auto& w : words) w = letter(rng);
        std::vector<double> want(count), got(count);
        ref.word_traces(table, words.data(), count, len, want.data());
        k.word_traces(table, words.data(), count, len, got.data());
        REQUIRE(same_bits(want, got));
      }
    }
    for (std::size_t side : {3u, 5u, 8u, 33u}) {
      std::vector<double> p(side * side), q(side * side);
      for (auto& v : p) v = n(rng);
      for (auto& v : q) v = n(rng);
      std::vector<double> want(side * side, -1), got(side * side, -2);
      ref.curl_centered(p.data(), q.data(), side, side, 0.1, 0.07, want.data());
      k.curl_centered(p.data(), q.data(), side, side, 0.1, 0.07, got.data());
      REQUIRE(same_bits(want, got));
      REQUIRE(want[0] == 0);
    }
    for (std::size_t len : {0u, 1u, 3u, 4u, 9u, 1001u}) {
      std::vector<double> x(len);
      for (auto& v : x) v = n(rng);
      REQUIRE(ref.max_abs(x.data(), len) == k.max_abs(x.data(), len));
    }
  }
}

TEST_CASE("scalar kernels on known values") {
  const auto& k = kernels_for(Isa::Scalar);
  const double a[] = {2, 1}, b[] = {1, 0}, c[] = {1, 0}, d[] = {1, 1};
  const MatrixTable t{a, b, c, d};
  const std::int32_t words[] = {0, 0, 0, 1};
  double tr[2];
  k.word_traces(t, words, 2, 2, tr);
  CHECK(tr[0] == 7);
  CHECK(tr[1] == 3);
  const double x[] = {-3, 2, 1};
  CHECK(k.max_abs(x, 3) == 3);
  CHECK(k.max_abs(x, 0) == 0);
}
