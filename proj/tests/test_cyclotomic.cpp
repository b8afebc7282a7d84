#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <weightsmith/cyclotomic.hpp>

using namespace weightsmith;

TEST_CASE("cyclotomic polynomials") {
  // Phi_1 = x - 1, Phi_4 = x^2 + 1, Phi_6 = x^2 - x + 1
  CHECK(cyclotomic_poly(1) == std::vector<mpz_class>{-1, 1});
  CHECK(cyclotomic_poly(4) == std::vector<mpz_class>{1, 0, 1});
  CHECK(cyclotomic_poly(6) == std::vector<mpz_class>{1, -1, 1});
  CHECK(cyclotomic_poly(12).size() == 5);  // phi(12) = 4
}

TEST_CASE("roots of unity basics") {
  Cyc z = Cyc::root(3, 1);
  // 1 + z + z^2 = 0
  CHECK((Cyc::one() + z + z * z).is_zero());
  CHECK(Cyc::root(4, 2) == -Cyc::one());
  CHECK(Cyc::root(6, 3) == -Cyc::one());
  CHECK(Cyc::root(5, 5) == Cyc::one());
  // zeta_6 = 1 + zeta_3 (standard identity: zeta_6 = -zeta_3^2)
  CHECK(Cyc::root(6, 1) == -(Cyc::root(3, 1) * Cyc::root(3, 1)));
}

TEST_CASE("cross-conductor arithmetic and equality") {
  Cyc i = Cyc::root(4, 1);
  Cyc w = Cyc::root(3, 1);
  Cyc prod = i * w;
  CHECK(prod == Cyc::root(12, 7));  // i * w = zeta_12^3 * zeta_12^4
  CHECK((i * i) == Cyc(-1L));
  CHECK(Cyc::root(8, 2) == i);  // demotion to smaller conductor
  CHECK(Cyc::root(8, 2).conductor() == 4);
}

TEST_CASE("conjugation and galois") {
  Cyc z = Cyc::root(5, 1);
  CHECK(z.conj() == Cyc::root(5, 4));
  CHECK((z * z.conj()) == Cyc::one());
  // trace of zeta_5: sum of galois conjugates = -1
  Cyc tr = Cyc::zero();
  for (int k = 1; k < 5; ++k) tr += z.galois(k);
  CHECK(tr == Cyc(-1L));
}

TEST_CASE("ring laws on sampled triples") {
  std::mt19937 rng(12345);
  auto rand_cyc = [&] {
    int n = std::vector<int>{1, 3, 4, 5, 6, 8, 12}[rng() % 7];
    Cyc v = Cyc::zero();
    for (int t = 0; t < 3; ++t)
      v += mpz_class(static_cast<long>(rng() % 7) - 3) * Cyc::root(n, rng() % n);
    return v;
  };
  for (int iter = 0; iter < 50; ++iter) {
    Cyc a = rand_cyc(), b = rand_cyc(), c = rand_cyc();
    CHECK((a + b) * c == a * c + b * c);
    CHECK(a * (b * c) == (a * b) * c);
    CHECK(a + b == b + a);
    CHECK((a * b).conj() == a.conj() * b.conj());
  }
}

TEST_CASE("exact division") {
  Cyc z = Cyc::root(7, 1);
  Cyc a = (Cyc(3L) + z) * (Cyc(2L) - z * z);
  CHECK(divexact(a, Cyc(3L) + z) == Cyc(2L) - z * z);
  Cyc six(6L);
  CHECK(six.divexact(mpz_class(3)) == Cyc(2L));
  CHECK_THROWS(Cyc(7L).divexact(mpz_class(3)));
}

TEST_CASE("integer detection") {
  CHECK(Cyc::root(3, 1).as_integer() == std::nullopt);
  Cyc s = Cyc::root(3, 1) + Cyc::root(3, 2);
  CHECK(s.integer_value() == -1);
}
