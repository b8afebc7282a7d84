#ifndef WEIGHTSMITH_WEIGHTS_HPP
#define WEIGHTSMITH_WEIGHTS_HPP

#include <map>
#include <string>
#include <vector>

#include "blocks.hpp"

namespace weightsmith {

/// Every subgroup of h (small groups only: breadth-first closure over
/// generated subgroups, deduplicated by canonical key).
inline std::vector<PermGroup> all_subgroups(const PermGroup& h) {
  std::vector<PermGroup> subs{PermGroup::trivial(h.degree())};
  std::vector<std::string> keys{subs[0].canonical_key()};
  for (size_t i = 0; i < subs.size(); ++i) {
    for (const Perm& x : h.elements()) {
      if (x.is_identity() || subs[i].contains(x)) continue;
      std::vector<Perm> gens = subs[i].generators();
      gens.push_back(x);
      PermGroup k(h.degree(), gens);
      std::string key = k.canonical_key();
      if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
        keys.push_back(std::move(key));
        subs.push_back(std::move(k));
      }
    }
  }
  return subs;
}

/// Transversal of the G-conjugacy classes of the given subgroups,
/// deterministic: least (order, canonical key) member represents its class.
inline std::vector<PermGroup> subgroup_class_reps(const PermGroup& g,
                                                 std::vector<PermGroup> subs) {
  std::sort(subs.begin(), subs.end(), [](const PermGroup& a, const PermGroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.canonical_key() < b.canonical_key();
  });
  std::vector<PermGroup> reps;
  for (const PermGroup& s : subs) {
    bool known = false;
    for (const PermGroup& r : reps)
      if (subgroup_conjugacy(g, r, s)) {
        known = true;
        break;
      }
    if (!known) reps.push_back(s);
  }
  return reps;
}

inline bool is_p_radical(const PermGroup& g, const PermGroup& q, std::uint64_t p) {
  if (q.order() != p_part(q.order(), p)) return false;
  PermGroup n = q.is_trivial() ? g : normalizer(g, q);
  PermGroup core = p_core(n, p);
  return core.order() == q.order() && core.contains_group(q);
}

/// Transversal of the conjugacy classes of p-radical subgroups
/// (Q = O_p(N_G(Q))), enumerated inside one fixed Sylow p-subgroup.
inline std::vector<PermGroup> p_radical_subgroups(const PermGroup& g, std::uint64_t p) {
  PermGroup syl = sylow_p(g, p);
  std::vector<PermGroup> reps = subgroup_class_reps(g, all_subgroups(syl));
  std::vector<PermGroup> out;
  for (const PermGroup& q : reps)
    if (is_p_radical(g, q, p)) out.push_back(q);
  return out;
}

/// A p-weight (Q, theta): Q a p-subgroup, theta a defect-zero irreducible of
/// N_G(Q)/Q.
struct Weight {
  PermGroup g;        // ambient group
  std::uint64_t p;
  PermGroup q;        // the p-subgroup
  PermGroup n;        // N_G(Q)
  Quotient quot;      // N -> N/Q
  CharacterTablePtr tq;  // table of N/Q
  int theta;          // defect-zero index in tq
};

inline Weight make_weight(const PermGroup& g, std::uint64_t p, const PermGroup& q, int theta) {
  PermGroup n = q.is_trivial() ? g : normalizer(g, q);
  Quotient quot = quotient_group(n, q);
  CharacterTablePtr tq = CharacterTable::of(quot.group);
  if (defect(*tq, theta, p) != 0) throw std::invalid_argument("make_weight: theta not defect zero");
  return Weight{g, p, q, std::move(n), std::move(quot), std::move(tq), theta};
}

inline bool same_weight(const Weight& a, const Weight& b) {
  return a.theta == b.theta && a.q.order() == b.q.order() &&
         a.q.canonical_key() == b.q.canonical_key();
}

/// The quotient isomorphism N_G(Q)/Q -> N_G(Q^x)/Q^x induced by conjugation,
/// built explicitly on generators.
inline GroupHom conjugation_iso(const Weight& w, const Quotient& target, const Perm& x) {
  std::vector<Perm> images;
  for (const Perm& gen : w.quot.group.generators())
    images.push_back(target.pi.image(w.quot.pi.some_preimage(gen).conjugated_by(x)));
  return GroupHom(w.quot.group, target.group, images);
}

/// (Q, theta)^x = (Q^x, theta transported through the conjugation iso).
inline Weight conjugate_weight(const Weight& w, const Perm& x) {
  PermGroup qx = conjugate_subgroup(w.q, x);
  PermGroup nx = qx.is_trivial() ? w.g : normalizer(w.g, qx);
  Quotient quot = quotient_group(nx, qx);
  CharacterTablePtr tq = CharacterTable::of(quot.group);
  GroupHom f = conjugation_iso(w, quot, x);
  int theta = tq->find_character(transport_cf(*w.tq, w.tq->character(w.theta), f, *tq));
  return Weight{w.g, w.p, std::move(qx), std::move(nx), std::move(quot), std::move(tq), theta};
}

namespace detail {

/// Orbits of N_G(Q) on the defect-zero characters of N/Q; each orbit sorted,
/// orbits ordered by least element.
inline std::vector<std::vector<int>> theta_orbits(const Weight& proto) {
  const CharacterTable& tq = *proto.tq;
  std::vector<int> dz = dz_characters(tq, proto.p);
  // conjugation automorphisms of N/Q for each generator of N
  std::vector<GroupHom> autos;
  for (const Perm& ng : proto.n.generators()) autos.push_back(conjugation_iso(proto, proto.quot, ng));
  std::vector<std::vector<int>> orbits;
  std::vector<char> seen(tq.num_chars(), 0);
  for (int th : dz) {
    if (seen[th]) continue;
    std::vector<int> orb{th};
    seen[th] = 1;
    for (size_t i = 0; i < orb.size(); ++i)
      for (const GroupHom& f : autos) {
        int img = tq.find_character(transport_cf(tq, tq.character(orb[i]), f, tq));
        if (!seen[img]) {
          seen[img] = 1;
          orb.push_back(img);
        }
      }
    std::sort(orb.begin(), orb.end());
    orbits.push_back(std::move(orb));
  }
  return orbits;
}

}  // namespace detail

/// A G-orbit of weights: representative plus the N_G(Q)-orbit of theta
/// indices over the canonical radical representative Q.
struct WeightOrbit {
  Weight rep;                // theta = least index in the orbit
  std::vector<int> thetas;   // N-orbit of theta over rep.q, sorted
  std::uint64_t orbit_size;  // size of the G-orbit of (Q, theta)
};

/// All weights over the canonical radical class representatives (one Weight
/// per (Q class, defect-zero theta), before fusion under N_G(Q)).
inline std::vector<Weight> weights_raw(const PermGroup& g, std::uint64_t p) {
  std::vector<Weight> out;
  for (const PermGroup& q : p_radical_subgroups(g, p)) {
    PermGroup n = q.is_trivial() ? g : normalizer(g, q);
    Quotient quot = quotient_group(n, q);
    CharacterTablePtr tq = CharacterTable::of(quot.group);
    for (int th : dz_characters(*tq, p))
      out.push_back(Weight{g, p, q, n, quot, tq, th});
  }
  return out;
}

/// Alp(G): G-orbits of p-weights, canonically ordered by (|Q|, Q key, theta).
inline std::vector<WeightOrbit> weight_orbits(const PermGroup& g, std::uint64_t p) {
  std::vector<WeightOrbit> out;
  for (const PermGroup& q : p_radical_subgroups(g, p)) {
    PermGroup n = q.is_trivial() ? g : normalizer(g, q);
    Quotient quot = quotient_group(n, q);
    CharacterTablePtr tq = CharacterTable::of(quot.group);
    std::vector<int> dz = dz_characters(*tq, p);
    if (dz.empty()) continue;
    Weight proto{g, p, q, n, quot, tq, dz.front()};
    for (const std::vector<int>& orb : detail::theta_orbits(proto)) {
      Weight rep = proto;
      rep.theta = orb.front();
      std::uint64_t size = g.order() / n.order() * orb.size();
      out.push_back(WeightOrbit{std::move(rep), orb, size});
    }
  }
  return out;
}

struct AlperinReport {
  std::uint64_t weight_orbit_count = 0;
  std::uint64_t pregular_classes = 0;
  bool pass = false;
};

/// Conjecture check: |Alp(G)| = number of p-regular classes.
inline AlperinReport alperin_check(const PermGroup& g, std::uint64_t p) {
  AlperinReport r;
  r.weight_orbit_count = weight_orbits(g, p).size();
  r.pregular_classes = pregular_class_count(g, p);
  r.pass = r.weight_orbit_count == r.pregular_classes;
  return r;
}

/// The lift of theta through N -> N/Q, as a class function on N.
inline ClassFn lifted_theta(const Weight& w, const CharacterTable& tn) {
  ClassFn out;
  for (const auto& c : tn.classes())
    out.push_back(w.tq->value(w.theta, w.tq->class_of(w.quot.pi.image(c.rep))));
  return out;
}

/// The p'-order linear character of a central subgroup z under which the
/// lifted theta lies (z must be central in G, hence inside N_G(Q)).
inline int weight_central_character(const Weight& w, const PermGroup& z) {
  if (!center(w.g).contains_group(z))
    throw std::invalid_argument("weight_central_character: not central");
  if (!w.n.contains_group(z)) throw internal_error("weight_central_character: Z outside N_G(Q)");
  auto tz = CharacterTable::of(z);
  ClassFn mu;
  mpz_class d(static_cast<unsigned long>(w.tq->degree(w.theta)));
  for (const auto& c : tz->classes())
    mu.push_back(w.tq->value(w.theta, w.tq->class_of(w.quot.pi.image(c.rep))).divexact(d));
  int idx = tz->find_character(mu);
  if (linear_order(*tz, idx) % w.p == 0)
    throw internal_error("weight_central_character: order divisible by p");
  return idx;
}

/// Alp(G | nu): orbits whose lifted theta lies over nu on Z(G). nu indexes
/// the character table of z.
inline std::vector<WeightOrbit> alp_over_central(const PermGroup& g, std::uint64_t p,
                                                 const PermGroup& z, int nu) {
  auto tz = CharacterTable::of(z);
  if (linear_order(*tz, nu) % p == 0)
    throw std::invalid_argument("alp_over_central: nu has order divisible by p");
  std::vector<WeightOrbit> out;
  for (WeightOrbit& o : weight_orbits(g, p))
    if (weight_central_character(o.rep, z) == nu) out.push_back(std::move(o));
  return out;
}

/// mu . (Q, theta) = (Q, theta * conj(mu)) for mu in Lin(G)_{p'}; mu factors
/// through N/Q because Q lies in its kernel.
inline Weight lin_action(CharacterTablePtr tg, int mu, const Weight& w) {
  if (tg->degree(mu) != 1 || linear_order(*tg, mu) % w.p == 0)
    throw std::invalid_argument("lin_action: mu must be linear of p'-order");
  ClassFn twisted;
  for (int c = 0; c < w.tq->num_classes(); ++c) {
    Perm pre = w.quot.pi.some_preimage(w.tq->classes()[c].rep);
    twisted.push_back(w.tq->value(w.theta, c) * tg->value(mu, tg->class_of(pre)).conj());
  }
  Weight out = w;
  out.theta = w.tq->find_character(twisted);
  if (defect(*w.tq, out.theta, w.p) != 0) throw internal_error("lin_action: left defect zero");
  return out;
}

/// bl(theta')^G for theta' the lift of theta to N_G(Q).
inline PBlock block_of_weight(const Weight& w, CharacterTablePtr tg) {
  CharacterTablePtr tn = CharacterTable::of(w.n);
  int lift_idx = tn->find_character(lifted_theta(w, *tn));
  auto nblocks = block_distribution(tn, w.p);
  const PBlock& bn = block_of_character(nblocks, lift_idx);
  auto ind = block_induction(bn, tg);
  if (!ind) throw internal_error("block_of_weight: induced block undefined");
  return *ind;
}

/// Alp(B): indices into weight_orbits(G, p) attached to block B.
inline std::vector<int> alp_of_block(const PBlock& b, CharacterTablePtr tg) {
  std::vector<int> out;
  std::vector<WeightOrbit> orbits = weight_orbits(tg->group(), b.p);
  for (size_t i = 0; i < orbits.size(); ++i)
    if (block_of_weight(orbits[i].rep, tg).index == b.index) out.push_back(static_cast<int>(i));
  return out;
}

struct BlockwiseEntry {
  int block_index = 0;
  std::uint64_t alp_count = 0;
  std::uint64_t l = 0;
  bool pass = false;
};

/// Blockwise conjecture check: |Alp(B)| = l(B) per block.
inline std::vector<BlockwiseEntry> blockwise_check(const PermGroup& g, std::uint64_t p) {
  CharacterTablePtr tg = CharacterTable::of(g);
  auto blocks = block_distribution(tg, p);
  std::vector<WeightOrbit> orbits = weight_orbits(g, p);
  std::vector<BlockwiseEntry> out;
  for (const PBlock& b : blocks) {
    BlockwiseEntry e;
    e.block_index = b.index;
    for (const WeightOrbit& o : orbits)
      if (block_of_weight(o.rep, tg).index == b.index) ++e.alp_count;
    e.l = l_count(b);
    e.pass = e.alp_count == e.l;
    out.push_back(e);
  }
  return out;
}

}  // namespace weightsmith

#endif
