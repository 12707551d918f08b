#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "wcz/sequences.hpp"

using namespace wcz;

TEST_CASE("table values at N = 1") {
  SequenceTable t = build_table(1);
  CHECK(t.b == Rat(2, 3));
  CHECK(t.mu[1] == Rat(1, 4));
  CHECK(t.beta == Rat(3, 4));
  CHECK(t.alpha[1] == Rat(1, 4));
  CHECK(t.h[1] == Rat(-2));
}

TEST_CASE("table values at N = 2") {
  SequenceTable t = build_table(2);
  CHECK(t.mu[2] == Rat(1, 16));
  CHECK(t.alpha[1] == Rat(5, 16));
  CHECK(t.alpha[2] == Rat(1, 16));
  CHECK(t.beta == Rat(11, 16));
  CHECK(t.b == Rat(12, 11));
  CHECK(t.h[1] == Rat(-12, 5));
  CHECK(t.h[2] == Rat(-4));
}

TEST_CASE("h^N = -2^N for a sweep of N") {
  for (int n : {1, 2, 3, 5, 9, 17, 30}) {
    SequenceTable t = build_table(n);
    CHECK(t.h[n] == -pow2(n));
  }
}

TEST_CASE("rejects N = 0") { CHECK_THROWS_AS(build_table(0), std::invalid_argument); }

TEST_CASE("identities hold exactly for N = 1..30") {
  for (int n = 1; n <= 30; ++n) {
    SequenceTable t = build_table(n);
    IdentityReport rep = verify_identities(t);
    CHECK(rep.all_pass());
  }
}

TEST_CASE("N = 1 identity value: alpha_1 h^1 + beta b = -1/2 + 1/2 = 0") {
  SequenceTable t = build_table(1);
  CHECK(t.alpha[1] * t.h[1] == Rat(-1, 2));
  CHECK(t.beta * t.b == Rat(1, 2));
  CHECK(t.alpha[1] * t.h[1] + t.beta * t.b == 0);
}

TEST_CASE("N = 2 recursion at k = 1 gives h^1 = -12/5") {
  SequenceTable t = build_table(2);
  Rat lhs = (t.alpha[2] * t.h[2] + t.mu[1] * (-pow2(1))) / t.alpha[1];
  CHECK(lhs == Rat(-12, 5));
  CHECK(lhs == t.h[1]);
}

TEST_CASE("tampered table fails identity (2)") {
  SequenceTable t = build_table(3);
  t.b += Rat(1, 1000);
  IdentityReport rep = verify_identities(t);
  CHECK_FALSE(rep.all_pass());
  bool id2_failed = false;
  for (const auto& c : rep.checks)
    if (c.name.find("alpha_1 h^1 + beta b") != std::string::npos && !c.pass)
      id2_failed = true;
  CHECK(id2_failed);
}

TEST_CASE("b_N between half and full harmonic sum") {
  Rat harmonic(0);
  for (int n = 1; n <= 30; ++n) {
    harmonic += Rat(1, n);
    SequenceTable t = build_table(n);
    CHECK(t.b >= harmonic / 2);
    CHECK(t.b <= harmonic);
  }
}

TEST_CASE("json round trip preserves exact values") {
  SequenceTable t = build_table(7);
  SequenceTable u = SequenceTable::from_json(t.to_json());
  CHECK(u.n == t.n);
  CHECK(u.b == t.b);
  CHECK(u.beta == t.beta);
  CHECK(u.alpha == t.alpha);
  CHECK(u.h == t.h);
  CHECK(u.mu == t.mu);
}
