#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "prohecke/fqmat.hpp"
#include "prohecke/qhalf.hpp"

using namespace prohecke;

TEST_CASE("prime fields agree with integer arithmetic mod p") {
  for (int p : {2, 3, 5, 7}) {
    Field F(p, 1);
    for (int a = 0; a < p; ++a)
      for (int b = 0; b < p; ++b) {
        CHECK(F.add(a, b) == uint32_t((a + b) % p));
        CHECK(F.mul(a, b) == uint32_t((a * b) % p));
      }
  }
}

TEST_CASE("F_4 matches the hand-built model x^2 = x + 1") {
  Field F(2, 2);
  REQUIRE(F.q() == 4);
  for (uint32_t a = 0; a < 4; ++a)
    for (uint32_t b = 0; b < 4; ++b) {
      int a0 = a & 1, a1 = a >> 1, b0 = b & 1, b1 = b >> 1;
      int c0 = (a0 * b0 + a1 * b1) & 1;           // x^2 contributes 1
      int c1 = (a0 * b1 + a1 * b0 + a1 * b1) & 1;  // and x
      CHECK(F.mul(a, b) == uint32_t(c0 + 2 * c1));
    }
}

TEST_CASE("field axioms and generator order") {
  for (auto [p, f] : {std::pair{2, 1}, {3, 1}, {2, 2}, {3, 2}, {5, 1}, {2, 3}}) {
    Field F(p, f);
    const uint32_t q = F.q();
    std::set<uint32_t> powers;
    for (int k = 0; k < int(q) - 1; ++k) powers.insert(F.gen_pow(k));
    CHECK(powers.size() == q - 1);
    for (uint32_t a = 0; a < q; ++a) {
      CHECK(F.add(a, F.neg(a)) == 0);
      if (a) CHECK(F.mul(a, F.inv(a)) == 1);
      if (a) CHECK(F.gen_pow(F.log(a)) == a);
      for (uint32_t b = 0; b < q; ++b)
        for (uint32_t c = 0; c < q; ++c) {
          CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
          CHECK(F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c));
        }
    }
  }
}

TEST_CASE("zero field inverse throws") {
  Field F(3, 1);
  CHECK_THROWS(F.inv(0));
  CHECK_THROWS(Field(4, 1));
}

namespace {
QHalfPoly random_poly(const Field* F, std::mt19937_64& rng) {
  QHalfPoly r(F, 2);
  int n = rng() % 4;
  for (int i = 0; i < n; ++i) {
    QExps e{};
    e[0] = int(rng() % 7) - 3;
    e[1] = int(rng() % 5) - 2;
    r += QHalfPoly::monomial(F, 2, e, rng() % F->q());
  }
  return r;
}
}  // namespace

TEST_CASE("QHalfPoly ring axioms on random samples") {
  Field F(3, 1);
  std::mt19937_64 rng(7);
  for (int it = 0; it < 300; ++it) {
    auto a = random_poly(&F, rng), b = random_poly(&F, rng), c = random_poly(&F, rng);
    CHECK((a + b) == (b + a));
    CHECK((a * b) == (b * a));
    CHECK(((a * b) * c) == (a * (b * c)));
    CHECK((a * (b + c)) == (a * b + a * c));
    CHECK((a - a).is_zero());
    auto ab = a * b;
    for (auto& [e, v] : ab.terms()) CHECK(v != 0);
  }
}

TEST_CASE("specialization and the polynomiality gate") {
  Field F(3, 1);
  const Field* P = &F;
  auto c = QHalfPoly::constant(P, 1, 2);
  CHECK(c.specialize_zero().v == 2);
  QExps half{};
  half[0] = 1;
  auto h = QHalfPoly::monomial(P, 1, half);
  CHECK(h.specialize_zero().v == 0);
  QExps minus{};
  minus[0] = -1;
  auto hinv = QHalfPoly::monomial(P, 1, minus);
  auto q = QHalfPoly::q_var(P, 1, 0);
  CHECK((hinv * q) == h);
  CHECK((hinv * q).specialize_zero().v == 0);
  CHECK_THROWS_AS(hinv.specialize_zero(), std::domain_error);
  // specialize is a ring homomorphism where defined
  std::mt19937_64 rng(3);
  std::array<Fq, kMaxOrbitVars> vals{Fq::of(P, 2), Fq::of(P, 1), Fq::of(P, 1), Fq::of(P, 1)};
  for (int it = 0; it < 100; ++it) {
    QHalfPoly a(P, 1), b(P, 1);
    for (int k = 0; k < 3; ++k) {
      QExps e{};
      e[0] = int(rng() % 5);
      a += QHalfPoly::monomial(P, 1, e, rng() % 3);
      e[0] = int(rng() % 5);
      b += QHalfPoly::monomial(P, 1, e, rng() % 3);
    }
    CHECK((a * b).specialize_zero() == a.specialize_zero() * b.specialize_zero());
    CHECK((a * b).specialize(vals) == a.specialize(vals) * b.specialize(vals));
  }
}

TEST_CASE("matrices: rank, nullspace, inverse, solve") {
  Field F(3, 1);
  const Field* P = &F;
  std::mt19937_64 rng(11);
  for (int it = 0; it < 100; ++it) {
    int r = 1 + rng() % 6, c = 1 + rng() % 6;
    Mat A(P, r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) A(i, j) = rng() % 3;
    Mat N = nullspace(A);
    CHECK(N.cols() == c - rank(A));
    CHECK((A * N).is_zero());
    CHECK(rank(A) == rank(A.transpose()));
    Mat x(P, c, 1);
    for (int j = 0; j < c; ++j) x(j, 0) = rng() % 3;
    auto s = solve(A, A * x);
    REQUIRE(s.has_value());
    CHECK(A * *s == A * x);
    if (r == c) {
      auto inv = inverse(A);
      CHECK(inv.has_value() == (det(A) != 0));
      if (inv) CHECK((A * *inv).is_identity());
    }
  }
}

TEST_CASE("subspace calculus") {
  Field F(2, 1);
  const Field* P = &F;
  Mat U(P, 3, 2), V(P, 3, 2);
  U(0, 0) = 1; U(1, 1) = 1;  // span(e1, e2)
  V(1, 0) = 1; V(2, 1) = 1;  // span(e2, e3)
  CHECK(intersect(U, V).cols() == 1);
  CHECK(span_sum(U, V).cols() == 3);
  CHECK(contains(span_sum(U, V), U));
  CHECK_FALSE(contains(U, V));
  auto ab = adapted_basis(U, 3);
  CHECK(ab.sub_dim == 2);
  CHECK((ab.B * ab.Binv).is_identity());
}
