#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <weightsmith/clifford.hpp>
#include <weightsmith/corpus.hpp>

using namespace weightsmith;

namespace {

NormalPair s3_pair(std::uint64_t p) {
  return make_normal_pair(symmetric_group(3), alternating_group(3), p);
}

NormalPair gl3_pair(std::uint64_t p) { return make_normal_pair(gl2_3(), sl2(3), p); }

NormalPair s5_pair(std::uint64_t p) {
  return make_normal_pair(symmetric_group(5), alternating_group(5), p);
}

NormalPair self_pair(PermGroup g, std::uint64_t p) {
  PermGroup copy = g;
  return make_normal_pair(std::move(g), std::move(copy), p);
}

Weight orbit_rep(const PermGroup& g, std::uint64_t p, size_t i) {
  return weight_orbits(g, p).at(i).rep;
}

}  // namespace

TEST_CASE("normal pair validation") {
  CHECK_NOTHROW(s3_pair(2));
  CHECK_THROWS_AS(make_normal_pair(symmetric_group(4), symmetric_group(3), 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_normal_pair(symmetric_group(3), alternating_group(3), 6),
                  std::invalid_argument);
  CHECK(has_abelian_quotient(s3_pair(2)));
  CHECK_FALSE(has_abelian_quotient(make_normal_pair(symmetric_group(4),
                                                    PermGroup::trivial(4), 2)));
}

TEST_CASE("relative defect zero sets") {
  auto ts3 = CharacterTable::of(symmetric_group(3));
  auto ta3 = CharacterTable::of(alternating_group(3));
  // both extensions of the trivial character are linear: empty at p = 2
  CHECK(rdz(*ts3, *ta3, 0, 2).empty());
  // the degree-2 character carries the full 2-part over omega
  std::vector<int> over_omega = rdz(*ts3, *ta3, 1, 2);
  REQUIRE(over_omega.size() == 1);
  CHECK(ts3->degree(over_omega[0]) == 2);
  // p coprime to the index: rdz = Irr(H | chi)
  CHECK(rdz(*ts3, *ta3, 1, 5) == irr_over(*ts3, *ta3, 1));
  CHECK(rdz(*ts3, *ta3, 0, 5) == irr_over(*ts3, *ta3, 0));
}

TEST_CASE("dgn context worked example") {
  NormalPair pr = s3_pair(2);
  // Alp(A3) at p = 2: three weights over Q = 1, thetas 0 (trivial), 1, 2
  auto orbs = weight_orbits(pr.g, 2);
  REQUIRE(orbs.size() == 3);
  Weight w_triv = orbs[0].rep;
  CHECK(w_triv.theta == 0);

  PermGroup c2(3, {Perm::from_cycles("(1 2)", 3)});
  auto ctx = dgn_context(pr, w_triv, c2);
  REQUIRE(ctx.has_value());
  // M/Q = S3, covering block is principal, C_{A3}(C2) = 1
  CHECK(ctx->mq.group.order() == 6);
  CHECK(ctx->big.is_principal);
  CHECK(ctx->cnd.is_trivial());
  CHECK(ctx->tcnd->degree(ctx->pi_theta) == 1);
  // L/Qt is trivial, so pibar is the trivial character
  CHECK(ctx->tlq->group().is_trivial());
  CHECK(ctx->pibar == 0);

  // degenerate candidate Qt = Q: correspondent is theta itself
  auto ctx0 = dgn_context(pr, w_triv, PermGroup::trivial(3));
  REQUIRE(ctx0.has_value());
  CHECK(ctx0->d.is_trivial());
  CHECK(ctx0->cnd.order() == 3);
  CHECK(ctx0->tcnd->character(ctx0->pi_theta) ==
        transport_cf(*w_triv.tq, w_triv.tq->character(w_triv.theta),
                     GroupHom(w_triv.quot.group, ctx0->cnd,
                              [&] {
                                std::vector<Perm> imgs;
                                for (const Perm& g : w_triv.quot.group.generators())
                                  imgs.push_back(ctx0->mq.pi.image(
                                      w_triv.quot.pi.some_preimage(g)));
                                return imgs;
                              }()),
                     *ctx0->tcnd));

  // omega is not C2-invariant: no context for Qt = C2
  Weight w_omega = orbs[1].rep;
  CHECK_FALSE(dgn_context(pr, w_omega, c2).has_value());
}

TEST_CASE("dgn equivariance") {
  for (auto pr : {gl3_pair(3), gl3_pair(2), s3_pair(2)}) {
    for (const WeightOrbit& o : weight_orbits(pr.g, pr.p)) {
      const Weight& w = o.rep;
      for (const PermGroup& qt : candidate_qtilde(pr, w)) {
        auto ctx = dgn_context(pr, w, qt);
        if (!ctx) continue;
        PermGroup nq = w.q.is_trivial() ? pr.gt : normalizer(pr.gt, w.q);
        PermGroup stab = intersection(nq, qt.is_trivial() ? pr.gt : normalizer(pr.gt, qt));
        for (const Perm& x : stab.generators()) {
          Weight wx = w;
          wx.theta = conjugated_theta(w, x);
          auto ctx2 = dgn_context(pr, wx, qt);
          REQUIRE(ctx2.has_value());
          // conjugation by x induces an automorphism of M/Q fixing D,
          // hence of C_{N/Q}(D); the correspondent must transform along it
          std::vector<Perm> imgs;
          for (const Perm& gen : ctx->cnd.generators())
            imgs.push_back(ctx->mq.pi.image(ctx->mq.pi.some_preimage(gen).conjugated_by(x)));
          GroupHom f(ctx->cnd, ctx2->cnd, imgs);
          int moved = ctx2->tcnd->find_character(
              transport_cf(*ctx->tcnd, ctx->tcnd->character(ctx->pi_theta), f, *ctx2->tcnd));
          CHECK(moved == ctx2->pi_theta);
        }
      }
    }
  }
}

TEST_CASE("covering worked example") {
  NormalPair pr = s3_pair(2);
  auto gorbs = weight_orbits(pr.g, 2);
  auto gtorbs = weight_orbits(pr.gt, 2);
  REQUIRE(gtorbs.size() == 2);
  Weight wt_chi2 = gtorbs[0].rep;  // (1, chi2)
  Weight wt_c2 = gtorbs[1].rep;    // (C2, 1)
  REQUIRE(wt_chi2.q.is_trivial());
  REQUIRE(wt_c2.q.order() == 2);

  Weight w_triv = gorbs[0].rep, w_omega = gorbs[1].rep, w_omegabar = gorbs[2].rep;
  CHECK(covers(pr, wt_c2, w_triv).has_value());
  CHECK_FALSE(covers(pr, wt_c2, w_omega).has_value());
  CHECK(covers(pr, wt_chi2, w_omega).has_value());
  CHECK(covers(pr, wt_chi2, w_omegabar).has_value());
  CHECK_FALSE(covers(pr, wt_chi2, w_triv).has_value());

  auto rec = covers(pr, wt_c2, w_triv);
  CHECK(rec->transcript.size() == 5);
}

TEST_CASE("covering for the identical pair") {
  for (std::uint64_t p : {2, 3}) {
    NormalPair pr = self_pair(symmetric_group(4), p);
    auto orbs = weight_orbits(pr.g, p);
    for (size_t i = 0; i < orbs.size(); ++i)
      for (size_t j = 0; j < orbs.size(); ++j) {
        // with Gt = G a weight covers exactly its own orbit
        bool c = covers(pr, orbs[i].rep, orbs[j].rep).has_value();
        CHECK(c == (i == j));
      }
  }
}

TEST_CASE("covering is conjugation compatible") {
  NormalPair pr = gl3_pair(3);
  auto gtorbs = weight_orbits(pr.gt, 3);
  auto gorbs = weight_orbits(pr.g, 3);
  int checked = 0;
  for (const WeightOrbit& ot : gtorbs)
    for (const WeightOrbit& o : gorbs) {
      if (!covers(pr, ot.rep, o.rep)) continue;
      for (const Perm& x : pr.gt.generators()) {
        CHECK(covers(pr, conjugate_weight(ot.rep, x), conjugate_weight(o.rep, x)).has_value());
        ++checked;
      }
    }
  CHECK(checked > 0);
}

TEST_CASE("covered orbits") {
  // every weight of S3 over A3 at p = 2 covers exactly one orbit
  NormalPair pr = s3_pair(2);
  auto gtorbs = weight_orbits(pr.gt, 2);
  CoveredOrbit c0 = covered_orbit(pr, gtorbs[0].rep);
  CHECK(c0.pass);
  CHECK(c0.g_orbits == std::vector<int>{1, 2});  // {omega, omega-bar} fuse
  CoveredOrbit c1 = covered_orbit(pr, gtorbs[1].rep);
  CHECK(c1.pass);
  CHECK(c1.g_orbits == std::vector<int>{0});

  // identical pair: a weight covers its own orbit
  NormalPair prid = self_pair(symmetric_group(3), 3);
  auto orbs = weight_orbits(prid.g, 3);
  for (size_t i = 0; i < orbs.size(); ++i) {
    CoveredOrbit c = covered_orbit(prid, orbs[i].rep);
    CHECK(c.pass);
    CHECK(c.g_orbits == std::vector<int>{static_cast<int>(i)});
  }

  // exhaustive on SL2(3) inside GL2(3)
  for (std::uint64_t p : {2, 3}) {
    NormalPair prgl = gl3_pair(p);
    for (const WeightOrbit& o : weight_orbits(prgl.gt, p)) CHECK(covered_orbit(prgl, o.rep).pass);
  }
}

TEST_CASE("clifford partition") {
  NormalPair pr = s3_pair(2);
  CliffordPartition part = clifford_partition(pr);
  CHECK(part.pass);
  REQUIRE(part.fused.size() == 2);
  CHECK(part.fused[0] == std::vector<int>{0});
  CHECK(part.fused[1] == std::vector<int>{1, 2});
  // fibers have size 1 and 1
  CHECK(part.covered_class.size() == 2);
  CHECK(std::count(part.covered_class.begin(), part.covered_class.end(), 0) == 1);
  CHECK(std::count(part.covered_class.begin(), part.covered_class.end(), 1) == 1);

  // identity partition for the identical pair
  NormalPair prid = self_pair(alternating_group(4), 2);
  CliffordPartition pid = clifford_partition(prid);
  CHECK(pid.pass);
  CHECK(pid.fused.size() == weight_orbits(prid.g, 2).size());
  for (const auto& c : pid.fused) CHECK(c.size() == 1);

  // A5 inside S5 at p = 5: total partition
  NormalPair pr5 = s5_pair(5);
  CliffordPartition p5 = clifford_partition(pr5);
  CHECK(p5.pass);
  // fiber sizes sum to |Alp(S5)|
  CHECK(p5.covered_class.size() == weight_orbits(pr5.gt, 5).size());
}

TEST_CASE("delta theta consequences") {
  NormalPair pr = s3_pair(2);
  auto gorbs = weight_orbits(pr.g, 2);
  // degenerate context Qt = Q
  DeltaThetaReport d0 = delta_theta_checks(pr, gorbs[0].rep, PermGroup::trivial(3));
  CHECK(d0.pass);
  CHECK(d0.lhs == d0.rhs);
  // worked example: w = (1, 1), Qt = C2, both sides singletons
  PermGroup c2(3, {Perm::from_cycles("(1 2)", 3)});
  DeltaThetaReport d1 = delta_theta_checks(pr, gorbs[0].rep, c2);
  CHECK(d1.pass);
  CHECK(d1.lhs == 1);
  CHECK(d1.rhs == 1);

  // exhaustive over all covering contexts of SL2(3) inside GL2(3)
  for (std::uint64_t p : {2, 3}) {
    NormalPair prgl = gl3_pair(p);
    int contexts = 0;
    for (const WeightOrbit& o : weight_orbits(prgl.g, p))
      for (const PermGroup& qt : candidate_qtilde(prgl, o.rep)) {
        DeltaThetaReport d = delta_theta_checks(prgl, o.rep, qt);
        if (!d.context_ok) continue;
        ++contexts;
        CHECK(d.pass);
        CHECK(d.lhs == d.rhs);
      }
    CHECK(contexts > 0);
  }
}

TEST_CASE("hypothesis checks") {
  for (std::uint64_t p : {2, 3}) {
    HypothesisReport h = check_hypothesis(s3_pair(p));
    CHECK(h.abelian_quotient);
    CHECK(h.pass);
    CHECK(h.agree);
    CHECK(h.brauer_side == "UNVERIFIED");
    HypothesisReport hg = check_hypothesis(gl3_pair(p));
    CHECK(hg.pass);
  }
  HypothesisReport h5 = check_hypothesis(s5_pair(2));
  CHECK(h5.pass);
}

TEST_CASE("stabilizer formula") {
  // identical pair: J = G and the formula degenerates
  NormalPair prid = self_pair(symmetric_group(3), 2);
  for (const WeightOrbit& o : weight_orbits(prid.g, 2)) {
    CHECK(jg_weight(prid, o.rep).order() == prid.g.order());
    StabilizerReport r = stabilizer_formula_check(prid, o.rep);
    CHECK(r.pass);
  }
  // p coprime to the index: J is all of Gt
  NormalPair pr3 = s3_pair(3);
  auto orbs3 = weight_orbits(pr3.gt, 3);
  REQUIRE(orbs3.size() == 2);
  for (const WeightOrbit& o : orbs3) {
    CHECK(jg_weight(pr3, o.rep).order() == 6);
    StabilizerReport r = stabilizer_formula_check(pr3, o.rep);
    CHECK(r.pass);
    // the sign twist fuses both weights of S3 into one fiber
    CHECK(r.lin_orbit);
  }
  // p = 2 over the same pair, plus the matrix pair at both primes
  for (const WeightOrbit& o : weight_orbits(symmetric_group(3), 2))
    CHECK(stabilizer_formula_check(s3_pair(2), o.rep).pass);
  for (std::uint64_t p : {2, 3}) {
    NormalPair prgl = gl3_pair(p);
    for (const WeightOrbit& o : weight_orbits(prgl.gt, p))
      CHECK(stabilizer_formula_check(prgl, o.rep).pass);
  }
}

TEST_CASE("orbit bijection") {
  // two singleton linear orbits onto two fused classes
  PiReport r = pi_bijection(s3_pair(2));
  CHECK(r.pass);
  CHECK(r.lin_orbits.size() == 2);
  CHECK(r.fused.size() == 2);
  for (const auto& o : r.lin_orbits) CHECK(o.size() == 1);

  // identity for the identical pair
  PiReport rid = pi_bijection(self_pair(symmetric_group(4), 2));
  CHECK(rid.pass);
  CHECK(rid.lin_orbits.size() == rid.fused.size());

  for (std::uint64_t p : {2, 3}) CHECK(pi_bijection(gl3_pair(p)).pass);
  for (std::uint64_t p : {2, 3, 5}) CHECK(pi_bijection(s5_pair(p)).pass);
}

TEST_CASE("block covering consistency for cover records") {
  for (std::uint64_t p : {2, 3}) {
    for (auto pr : {s3_pair(p), gl3_pair(p)}) {
      CharacterTablePtr tgt = CharacterTable::of(pr.gt);
      CharacterTablePtr tg = CharacterTable::of(pr.g);
      auto gorbs = weight_orbits(pr.g, p);
      auto check_one = [&](const Weight& wt_rep) {
        for (const WeightOrbit& o : gorbs)
          for (const Perm& x : pr.gt.elements()) {
            if (!wt_rep.q.contains_group(conjugate_subgroup(o.rep.q, x))) continue;
            auto rec = covers(pr, wt_rep, conjugate_weight(o.rep, x));
            if (!rec) continue;
            CHECK(covers(block_of_weight(rec->wtilde, tgt), block_of_weight(rec->w, tg)));
            return true;
          }
        return false;
      };
      for (const WeightOrbit& ot : weight_orbits(pr.gt, p)) CHECK(check_one(ot.rep));
    }
  }
}

TEST_CASE("criterion audit") {
  // S3 over A3, trivial outer action
  AuditReport rep = criterion_audit(s3_pair(2));
  REQUIRE(rep.items.size() == 8);
  CHECK(rep.items[0].label == "i.derived-subgroup");
  CHECK(rep.items[0].verdict == Verdict::PASS);  // [S3, S3] = A3
  CHECK(rep.items[1].verdict == Verdict::FAIL);  // C_S3(A3) = A3, but Z(S3) = 1
  CHECK(rep.items[2].verdict == Verdict::PASS);
  CHECK(rep.items[3].verdict == Verdict::UNVERIFIED);
  CHECK(rep.items[4].label == "ii.a.central-counts");
  CHECK(rep.items[4].verdict == Verdict::PASS);
  CHECK(rep.items[5].verdict == Verdict::UNVERIFIED);
  CHECK(rep.items[6].verdict == Verdict::UNVERIFIED);
  CHECK(rep.items[7].verdict == Verdict::PASS);
  CHECK(rep.any_fail);

  // matrix pair at both primes; C_GL(SL) = Z(GL) here, so nothing fails
  for (std::uint64_t p : {2, 3}) {
    AuditReport rg = criterion_audit(gl3_pair(p));
    CHECK_FALSE(rg.any_fail);
    nlohmann::json jg = audit_to_json(rg);
    CHECK(jg["fail"] == false);
  }

  // JSON shape is stable
  nlohmann::json j = audit_to_json(rep);
  CHECK(j["fail"] == true);
  CHECK(j["items"].size() == 8);
  CHECK(j["items"][0]["verdict"] == "PASS");
}

TEST_CASE("criterion audit with a nontrivial outer action") {
  PermGroup a4 = alternating_group(4);
  Perm t = Perm::from_cycles("(1 2)", 4);
  std::vector<Perm> imgs;
  for (const Perm& x : a4.generators()) imgs.push_back(x.conjugated_by(t));
  AutAction act(AbstractGroup::cyclic(2), a4, {1}, {imgs});
  NormalPair pr = make_normal_pair(a4, alternating_group(4), 2, act);

  AuditReport rep = criterion_audit(pr);
  REQUIRE(rep.items.size() == 8);
  CHECK(rep.items[0].verdict == Verdict::FAIL);  // [A4, A4] = V4
  CHECK(rep.items[1].verdict == Verdict::PASS);  // nothing twisted centralizes A4
  CHECK(rep.items[2].verdict == Verdict::PASS);
  CHECK(rep.items[4].verdict == Verdict::PASS);
  CHECK(rep.items[7].verdict == Verdict::PASS);  // factorization + extension in A4 x| C2
  CHECK(rep.any_fail);
}
