// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "clifsig/error.hpp"
#include "clifsig/ga.hpp"

using namespace clifsig;
using ga::BladeIndex;
using ga::Multivector;

namespace {

// Reference product: write both blades as generator words, bubble-sort the
// concatenation while counting swaps and cancel e_k e_k = 1 pairs.
std::pair<int, std::uint32_t> word_product(std::uint32_t a, std::uint32_t b) {
  std::vector<int> word;
  for (int k = 0; k < 32; ++k) {
    if (a >> k & 1u) word.push_back(k);
  }
  for (int k = 0; k < 32; ++k) {
    if (b >> k & 1u) word.push_back(k);
  }
  int sign = 1;
  for (std::size_t i = 0; i < word.size(); ++i) {
    for (std::size_t j = 0; j + 1 < word.size() - i; ++j) {
      if (word[j] > word[j + 1]) {
        std::swap(word[j], word[j + 1]);
        sign = -sign;
      }
    }
  }
  std::uint32_t blade = 0;
  for (std::size_t i = 0; i < word.size();) {
    if (i + 1 < word.size() && word[i] == word[i + 1]) {
      i += 2;
    } else {
      blade |= 1u << word[i];
      ++i;
    }
  }
  return {sign, blade};
}

Multivector reference_product(const Multivector& a, const Multivector& b) {
  Multivector out(a.dim());
  const std::size_t n = a.size();
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) {
      const auto [s, blade] = word_product(i, j);
      out[BladeIndex{blade}] += s * a[BladeIndex{i}] * b[BladeIndex{j}];
    }
  }
  return out;
}

Multivector e(int k, int dim = 3) { return Multivector::basis(k, dim); }
Multivector e12() { return Multivector::blade(BladeIndex{0b011}, 1.0); }

Multivector random_mv(int dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Multivector m(dim);
  for (double& c : m.coeffs()) c = u(rng);
  return m;
}

}  // namespace

TEST_SUITE("ga") {
  TEST_CASE("blade index grade is the population count") {
    CHECK(BladeIndex{0}.grade() == 0);
    CHECK(BladeIndex{0b101}.grade() == 2);
    CHECK(BladeIndex{0b1111111}.grade() == 7);
  }

  TEST_CASE("product sign table agrees with the word-sorting reference") {
    for (int dim : {3, 7}) {
      const auto& table = ga::AlgebraTable::of(dim);
      for (std::uint32_t a = 0; a < table.blade_count(); ++a) {
        for (std::uint32_t b = 0; b < table.blade_count(); ++b) {
          const auto [s, blade] = word_product(a, b);
          REQUIRE(blade == (a ^ b));
          REQUIRE(table.sign(a, b) == s);
        }
      }
    }
  }

  TEST_CASE("geometric product matches the reference on random elements") {
    std::mt19937_64 rng(3);
    for (int dim : {3, 7}) {
      for (int t = 0; t < 20; ++t) {
        const Multivector a = random_mv(dim, rng);
        const Multivector b = random_mv(dim, rng);
        CHECK((a * b - reference_product(a, b)).max_abs() <= 1e-13);
      }
    }
  }

  TEST_CASE("generator relations") {
    CHECK(e(1) * e(1) == Multivector::scalar(1.0));
    CHECK(e(1) * e(2) == e12());
    CHECK(e(2) * e(1) == -e12());
    for (int dim : {3, 7}) {
      for (int j = 1; j <= dim; ++j) {
        CHECK(e(j, dim) * e(j, dim) == Multivector::scalar(1.0, dim));
        for (int k = j + 1; k <= dim; ++k) {
          CHECK(e(j, dim) * e(k, dim) == -(e(k, dim) * e(j, dim)));
        }
      }
    }
  }

  TEST_CASE("(1 + e1)/2 is idempotent, e1 is not") {
    const Multivector p = (Multivector::scalar(1.0) + e(1)) * 0.5;
    CHECK(p * p == p);
    CHECK(ga::is_idempotent(p, 0.0));
    CHECK_FALSE(ga::is_idempotent(e(1), 1e-12));
  }

  TEST_CASE("hypercomplex value on the first quadrant gives an idempotent") {
    const Multivector psi = (Multivector::scalar(1.0) + e(1) + e(2) + e12()) * 0.5;
    CHECK(ga::is_idempotent(psi, 1e-12));
  }

  TEST_CASE("pseudoscalar squares to -1 and is central") {
    for (int dim : {3, 7}) {
      const Multivector I = ga::pseudoscalar(dim);
      CHECK(I * I == Multivector::scalar(-1.0, dim));
      for (std::uint32_t b = 0; b < (1u << dim); ++b) {
        const Multivector x = Multivector::blade(BladeIndex{b}, 1.0, dim);
        CHECK(I * x == x * I);
      }
      CHECK(I * ga::pseudovector(dim) == -e(dim, dim));
    }
    CHECK(ga::pseudoscalar(3) == Multivector::blade(BladeIndex{0b111}, 1.0));
    CHECK(ga::pseudoscalar(3) * e12() == -e(3));
  }

  TEST_CASE("pseudoscalar rejects dimensions not of the form 4n+3") {
    for (int dim : {1, 2, 4, 5, 6}) CHECK_THROWS_AS(ga::pseudoscalar(dim), Error);
  }

  TEST_CASE("associativity over random integer triples") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> u(-4, 4);
    for (int t = 0; t < 200; ++t) {
      Multivector a(7), b(7), c(7);
      for (auto* m : {&a, &b, &c}) {
        for (double& x : m->coeffs()) x = u(rng);
      }
      REQUIRE((a * b) * c == a * (b * c));
    }
  }

  TEST_CASE("grade projection") {
    const Multivector x = Multivector::scalar(1.0) + e(1) + e12();
    CHECK(ga::grade_project(x, 1) == e(1));
    CHECK(ga::grade_project(Multivector::scalar(2.5), 0) == Multivector::scalar(2.5));
    CHECK(ga::grade_project(x, 5) == Multivector(3));
  }

  TEST_CASE("even/odd split of v + P e1e2") {
    const Multivector v = e(1) * 0.6 + e(2) * 0.8;
    const Multivector a = v + e12() * 0.25;
    CHECK(a.odd() == v);
    CHECK(a.even() == e12() * 0.25);
    CHECK(a.even() + a.odd() == a);
  }

  TEST_CASE("dimension errors") {
    CHECK_THROWS_AS(Multivector(8), Error);
    CHECK_THROWS_AS(e(4, 3), Error);
    CHECK_THROWS_AS(e(1, 3) * e(1, 7), Error);
    CHECK_THROWS_AS(ga::is_idempotent(e(1), -1.0), Error);
  }
}
