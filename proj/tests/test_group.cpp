#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <weightsmith/group.hpp>

using namespace weightsmith;

namespace {

PermGroup s3() {
  return PermGroup(3, {Perm::from_cycles("(1 2 3)", 3), Perm::from_cycles("(1 2)", 3)});
}

PermGroup s4() {
  return PermGroup(4, {Perm::from_cycles("(1 2 3 4)", 4), Perm::from_cycles("(1 2)", 4)});
}

PermGroup s5() {
  return PermGroup(5, {Perm::from_cycles("(1 2 3 4 5)", 5), Perm::from_cycles("(1 2)", 5)});
}

PermGroup a5() {
  return PermGroup(5, {Perm::from_cycles("(1 2 3 4 5)", 5), Perm::from_cycles("(1 2 3)", 5)});
}

PermGroup v4() {
  return PermGroup(4, {Perm::from_cycles("(1 2)(3 4)", 4), Perm::from_cycles("(1 3)(2 4)", 4)});
}

// Independent oracle: enumerate the closure of a generating set by plain
// multiplication, no stabilizer chain involved.
std::vector<Perm> brute_closure(int degree, const std::vector<Perm>& gens) {
  std::vector<Perm> elems{Perm::identity(degree)};
  bool grew = true;
  while (grew) {
    grew = false;
    for (size_t i = 0; i < elems.size(); ++i) {
      for (const Perm& g : gens) {
        Perm y = elems[i] * g;
        if (std::find(elems.begin(), elems.end(), y) == elems.end()) {
          elems.push_back(y);
          grew = true;
        }
      }
    }
  }
  return elems;
}

}  // namespace

TEST_CASE("permutation composition") {
  Perm t = Perm::from_cycles("(1 2)", 3);
  CHECK((t * t).is_identity());
  Perm c = Perm::from_cycles("(1 2 3)", 3);
  // hand multiplication: (1 2 3)(1 2) = (1 3)
  CHECK(c * t == Perm::from_cycles("(1 3)", 3));
  CHECK(c * Perm::identity(3) == c);
  CHECK(c.order() == 3);
  CHECK(c.inverse() * c == Perm::identity(3));
  CHECK_THROWS_AS(c * Perm::identity(4), degree_mismatch);
}

TEST_CASE("cycle notation parse and print") {
  Perm p = Perm::from_cycles("(1 2 3)(4 5)", 5);
  CHECK(p.to_cycles() == "(1 2 3)(4 5)");
  CHECK(Perm::from_cycles("()", 4) == Perm::identity(4));
  CHECK_THROWS_AS(Perm::from_cycles("(1 2 2)", 3), parse_error);
  CHECK_THROWS_AS(Perm::from_cycles("(1 9)", 3), parse_error);
}

TEST_CASE("group order via stabilizer chain matches brute-force closure") {
  CHECK(s3().order() == brute_closure(3, s3().generators()).size());
  CHECK(s3().order() == 6);
  CHECK(s5().order() == 120);
  CHECK(a5().order() == 60);
  CHECK(PermGroup::trivial(4).order() == 1);
  CHECK(s5().order() == brute_closure(5, s5().generators()).size());
}

TEST_CASE("membership") {
  PermGroup g = a5();
  CHECK(g.contains(Perm::from_cycles("(1 2)(3 4)", 5)));
  CHECK(!g.contains(Perm::from_cycles("(1 2)", 5)));
}

TEST_CASE("conjugacy classes") {
  auto cls3 = s3().classes();
  REQUIRE(cls3.size() == 3);
  std::vector<std::uint64_t> sizes;
  for (const auto& c : cls3) sizes.push_back(c.size());
  CHECK(sizes == std::vector<std::uint64_t>{1, 3, 2});

  CHECK(s5().classes().size() == 7);

  // abelian: |G| singleton classes
  PermGroup c6(6, {Perm::from_cycles("(1 2 3 4 5 6)", 6)});
  CHECK(c6.classes().size() == 6);

  // sizes sum to |G|, each divides |G|, centralizer order * size = |G|
  for (const PermGroup& g : {s4(), a5()}) {
    std::uint64_t total = 0;
    for (const auto& c : g.classes()) {
      total += c.size();
      CHECK(g.order() % c.size() == 0);
      CHECK(centralizer(g, c.rep).order() * c.size() == g.order());
    }
    CHECK(total == g.order());
  }
}

TEST_CASE("centralizer and normalizer") {
  PermGroup g = s3();
  CHECK(centralizer(g, Perm::identity(3)).order() == 6);
  PermGroup h(3, {Perm::from_cycles("(1 2)", 3)});
  CHECK(normalizer(g, h).order() == 2);
  // V4 is normal in S4
  CHECK(normalizer(s4(), v4()).order() == 24);
  CHECK(is_normal(s4(), v4()));
}

TEST_CASE("sylow and p-core") {
  CHECK(sylow_p(s4(), 2).order() == 8);
  CHECK(sylow_p(s4(), 3).order() == 3);
  PermGroup core = p_core(s4(), 2);
  CHECK(core.order() == 4);
  CHECK(is_normal(s4(), core));
  CHECK(p_core(a5(), 2).is_trivial());
  // Lagrange on every subgroup-producing operation
  CHECK(s4().order() % sylow_p(s4(), 2).order() == 0);
}

TEST_CASE("p-core is the largest normal p-subgroup (exhaustive cross-check)") {
  PermGroup g = s4();
  PermGroup core = p_core(g, 2);
  // every normal 2-subgroup generated by a class must lie in the core
  for (const auto& c : g.classes()) {
    if (c.rep.order() != 2 && c.rep.order() != 4) continue;
    PermGroup ncl = normal_closure(g, {c.rep});
    if (ncl.order() == p_part(ncl.order(), 2)) CHECK(core.contains_group(ncl));
  }
}

TEST_CASE("quotient groups") {
  PermGroup g = s3();
  PermGroup a3(3, {Perm::from_cycles("(1 2 3)", 3)});
  Quotient q = quotient_group(g, a3);
  CHECK(q.group.order() == 2);
  CHECK(q.pi.kernel().order() == 3);

  Quotient q2 = quotient_group(s4(), v4());
  CHECK(q2.group.order() == 6);
  CHECK(q2.group.classes().size() == 3);  // iso to S3
  CHECK(q2.pi.kernel().canonical_key() == v4().canonical_key());

  Quotient q3 = quotient_group(g, PermGroup::trivial(3));
  CHECK(q3.group.order() == 6);
  CHECK(q3.pi.is_bijective());

  CHECK_THROWS(quotient_group(s3(), PermGroup(3, {Perm::from_cycles("(1 2)", 3)})));
}

TEST_CASE("subgroup conjugacy") {
  PermGroup g = s3();
  PermGroup h1(3, {Perm::from_cycles("(1 2)", 3)});
  PermGroup h2(3, {Perm::from_cycles("(1 3)", 3)});
  auto c = subgroup_conjugacy(g, h1, h2);
  REQUIRE(c.has_value());
  CHECK(conjugate_subgroup(h1, *c).canonical_key() == h2.canonical_key());
  CHECK(subgroup_conjugacy(g, h1, h1).has_value());

  PermGroup h3(4, {Perm::from_cycles("(1 2)", 4), Perm::from_cycles("(3 4)", 4)});
  CHECK(!subgroup_conjugacy(s4(), v4(), h3).has_value());
}

TEST_CASE("derived subgroup and center") {
  CHECK(derived_subgroup(s4()).order() == 12);
  CHECK(derived_subgroup(s3()).order() == 3);
  CHECK(center(s3()).is_trivial());
  PermGroup d8(4, {Perm::from_cycles("(1 2 3 4)", 4), Perm::from_cycles("(1 3)", 4)});
  CHECK(center(d8).order() == 2);
}

TEST_CASE("semidirect products") {
  // C3 x| C2 by inversion = S3-shaped group of order 6, nonabelian
  PermGroup c3(3, {Perm::from_cycles("(1 2 3)", 3)});
  AutAction inv(AbstractGroup::cyclic(2), c3, {1}, {{Perm::from_cycles("(1 3 2)", 3)}});
  SemidirectProduct sd = semidirect_product(inv);
  CHECK(sd.group.order() == 6);
  CHECK(sd.group.classes().size() == 3);

  // trivial action: direct factor
  AutAction trivact = AutAction::trivial(c3);
  CHECK(semidirect_product(trivact).group.order() == 3);

  // V4 x| C3 permuting the involutions = A4-shaped (order 12, 4 classes)
  PermGroup v = v4();
  Perm a = Perm::from_cycles("(1 2)(3 4)", 4);
  Perm b = Perm::from_cycles("(1 3)(2 4)", 4);
  Perm ab = a * b;
  REQUIRE(v.generators().size() == 2);
  // build the automorphism sending each sorted generator to the "next" involution
  std::vector<Perm> imgs;
  for (const Perm& g : v.generators()) {
    if (g == a) imgs.push_back(b);
    else if (g == b) imgs.push_back(ab);
    else imgs.push_back(a);
  }
  AutAction rot2(AbstractGroup::cyclic(3), v, {1}, {imgs});
  SemidirectProduct sd2 = semidirect_product(rot2);
  CHECK(sd2.group.order() == 12);
  CHECK(sd2.group.classes().size() == 4);
}

TEST_CASE("group homs check well-definedness") {
  PermGroup c4(4, {Perm::from_cycles("(1 2 3 4)", 4)});
  PermGroup c2(2, {Perm::from_cycles("(1 2)", 2)});
  GroupHom f(c4, c2, {Perm::from_cycles("(1 2)", 2)});
  CHECK(f.kernel().order() == 2);
  // sending an order-4 generator to an order-3 image is not a hom
  PermGroup c3(3, {Perm::from_cycles("(1 2 3)", 3)});
  CHECK_THROWS(GroupHom(c4, c3, {Perm::from_cycles("(1 2 3)", 3)}));
}

TEST_CASE("order cap") {
  std::uint64_t saved = PermGroup::max_order;
  PermGroup::max_order = 100;
  CHECK_THROWS_AS(s5(), cap_exceeded);
  PermGroup::max_order = saved;
}
