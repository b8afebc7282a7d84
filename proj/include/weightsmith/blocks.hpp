#ifndef WEIGHTSMITH_BLOCKS_HPP
#define WEIGHTSMITH_BLOCKS_HPP

#include <map>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "chartab.hpp"

namespace weightsmith {

using FpElt = std::vector<std::uint64_t>;  // coefficients over F_p, length m

/// The finite field F_{p^m} together with the reduction map sending
/// cyclotomic integers of conductor dividing E into it: p-power roots of
/// unity go to 1, p'-roots go to powers of a fixed element of exact p'-order.
/// m is minimal with the p'-part of E dividing p^m - 1.
class FpEmbedding {
 public:
  FpEmbedding(std::uint64_t p, std::uint64_t conductor) : p_(p), e_(conductor) {
    if (!is_prime_u64(p)) throw std::invalid_argument("FpEmbedding: p not prime");
    mprime_ = pprime_part(e_, p);
    m_ = 1;
    {
      std::uint64_t pw = p % mprime_;
      while (pw != 1 % mprime_) {
        pw = pw * p % mprime_;
        ++m_;
      }
    }
    build_poly();
    q_ = 1;
    for (std::uint64_t i = 0; i < m_; ++i) q_ *= p_;
    find_root();
    std::uint64_t pa = p_part(e_, p) % mprime_;
    // inverse of the p-part of E modulo the p'-part
    inv_pa_ = 0;
    for (std::uint64_t t = 0; t < mprime_; ++t)
      if (pa * t % mprime_ == 1 % mprime_) {
        inv_pa_ = t;
        break;
      }
    if (mprime_ > 1 && inv_pa_ == 0) throw internal_error("FpEmbedding: no inverse");
  }

  std::uint64_t p() const { return p_; }
  std::uint64_t conductor() const { return e_; }
  std::uint64_t field_degree() const { return m_; }
  std::uint64_t pprime_order() const { return mprime_; }
  const FpElt& root() const { return w_; }

  FpElt zero() const { return FpElt(m_, 0); }
  FpElt one() const {
    FpElt r(m_, 0);
    r[0] = 1 % p_;
    return r;
  }

  FpElt add(const FpElt& a, const FpElt& b) const {
    FpElt r(m_);
    for (std::uint64_t i = 0; i < m_; ++i) r[i] = (a[i] + b[i]) % p_;
    return r;
  }

  FpElt mul(const FpElt& a, const FpElt& b) const {
    std::vector<std::uint64_t> prod(2 * m_ - 1, 0);
    for (std::uint64_t i = 0; i < m_; ++i) {
      if (a[i] == 0) continue;
      for (std::uint64_t j = 0; j < m_; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p_;
    }
    // reduce modulo the defining polynomial (monic, degree m)
    for (std::uint64_t i = 2 * m_ - 2; i >= m_ && i < prod.size(); --i) {
      std::uint64_t c = prod[i];
      if (c == 0) continue;
      prod[i] = 0;
      for (std::uint64_t j = 0; j < m_; ++j)
        prod[i - m_ + j] = (prod[i - m_ + j] + c * (p_ - poly_[j]) % p_) % p_;
    }
    prod.resize(m_);
    return prod;
  }

  FpElt pow(FpElt a, std::uint64_t k) const {
    FpElt r = one();
    while (k) {
      if (k & 1) r = mul(r, a);
      a = mul(a, a);
      k >>= 1;
    }
    return r;
  }

  bool is_zero(const FpElt& a) const {
    for (std::uint64_t x : a)
      if (x != 0) return false;
    return true;
  }

  /// Reduction of a cyclotomic integer with conductor dividing E.
  FpElt reduce(const Cyc& v) const {
    if (e_ % v.conductor() != 0)
      throw std::invalid_argument("FpEmbedding: conductor does not divide ambient conductor");
    Cyc u = v.promoted(static_cast<int>(e_));
    FpElt acc = zero();
    const auto& cs = u.coeffs();
    for (size_t i = 0; i < cs.size(); ++i) {
      if (cs[i] == 0) continue;
      mpz_class r = cs[i] % mpz_class(static_cast<unsigned long>(p_));
      if (r < 0) r += static_cast<unsigned long>(p_);
      std::uint64_t c = r.get_ui();
      if (c == 0) continue;
      // zeta_E^i maps to w^(i / p-part of E), the angle divided by the
      // p-power part which collapses to 1
      FpElt term = pow(w_, i % mprime_ * inv_pa_ % mprime_);
      for (std::uint64_t j = 0; j < m_; ++j) term[j] = term[j] * c % p_;
      acc = add(acc, term);
    }
    return acc;
  }

 private:
  void build_poly() {
    // smallest monic irreducible polynomial of degree m over F_p, by
    // lexicographic low-coefficient order
    std::uint64_t count = 1;
    for (std::uint64_t i = 0; i < m_; ++i) count *= p_;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::vector<std::uint64_t> f(m_ + 1, 0);
      std::uint64_t t = idx;
      for (std::uint64_t i = 0; i < m_; ++i) {
        f[i] = t % p_;
        t /= p_;
      }
      f[m_] = 1;
      if (poly_irreducible(f)) {
        poly_ = f;
        return;
      }
    }
    throw internal_error("FpEmbedding: no irreducible polynomial found");
  }

  // dense polynomials over F_p, low degree first
  std::vector<std::uint64_t> poly_mod(std::vector<std::uint64_t> a,
                                      const std::vector<std::uint64_t>& f) const {
    while (a.size() >= f.size()) {
      std::uint64_t c = a.back();
      if (c != 0) {
        size_t off = a.size() - f.size();
        std::uint64_t inv = fp_inv(f.back(), p_);
        std::uint64_t factor = c * inv % p_;
        for (size_t j = 0; j < f.size(); ++j)
          a[off + j] = (a[off + j] + p_ - factor * f[j] % p_) % p_;
      }
      a.pop_back();
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
  }

  std::vector<std::uint64_t> poly_gcd(std::vector<std::uint64_t> a,
                                      std::vector<std::uint64_t> b) const {
    while (!b.empty()) {
      auto r = poly_mod(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return a;
  }

  std::vector<std::uint64_t> poly_powmod_xp(std::vector<std::uint64_t> x,
                                            const std::vector<std::uint64_t>& f) const {
    // x(t)^p mod f via square and multiply on polynomials
    std::vector<std::uint64_t> r{1};
    std::uint64_t k = p_;
    while (k) {
      if (k & 1) r = poly_mod(poly_mul(r, x), f);
      x = poly_mod(poly_mul(x, x), f);
      k >>= 1;
    }
    return r;
  }

  std::vector<std::uint64_t> poly_mul(const std::vector<std::uint64_t>& a,
                                      const std::vector<std::uint64_t>& b) const {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint64_t> c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p_;
    return c;
  }

  bool poly_irreducible(const std::vector<std::uint64_t>& f) const {
    std::uint64_t m = f.size() - 1;
    if (m == 1) return true;
    // x^(p^m) = x mod f, and x^(p^(m/r)) - x coprime to f for prime r | m
    std::vector<std::uint64_t> t{0, 1};  // x
    std::vector<std::vector<std::uint64_t>> frob(m + 1);
    frob[0] = t;
    for (std::uint64_t i = 1; i <= m; ++i) frob[i] = poly_powmod_xp(frob[i - 1], f);
    auto minus_x = [&](std::vector<std::uint64_t> a) {
      if (a.size() < 2) a.resize(2, 0);
      a[1] = (a[1] + p_ - 1) % p_;
      while (!a.empty() && a.back() == 0) a.pop_back();
      return a;
    };
    if (!minus_x(frob[m]).empty()) return false;
    for (std::uint64_t r = 2; r <= m; ++r) {
      if (m % r != 0 || !is_prime_u64(r)) continue;
      auto g = poly_gcd(f, minus_x(frob[m / r]));
      if (g.size() != 1) return false;
    }
    return true;
  }

  void find_root() {
    if (mprime_ == 1) {
      w_ = one();
      return;
    }
    // deterministic generator of the multiplicative group, then power down
    std::vector<std::uint64_t> pf;
    std::uint64_t t = q_ - 1;
    for (std::uint64_t d = 2; d * d <= t; ++d)
      if (t % d == 0) {
        pf.push_back(d);
        while (t % d == 0) t /= d;
      }
    if (t > 1) pf.push_back(t);
    for (std::uint64_t idx = 1; idx < q_; ++idx) {
      FpElt g(m_);
      std::uint64_t v = idx;
      for (std::uint64_t i = 0; i < m_; ++i) {
        g[i] = v % p_;
        v /= p_;
      }
      bool gen = true;
      for (std::uint64_t r : pf)
        if (pow(g, (q_ - 1) / r) == one()) {
          gen = false;
          break;
        }
      if (gen) {
        w_ = pow(g, (q_ - 1) / mprime_);
        if (pow(w_, mprime_) != one()) throw internal_error("FpEmbedding: root order wrong");
        for (std::uint64_t d = 1; d < mprime_; ++d)
          if (mprime_ % d == 0 && pow(w_, d) == one())
            throw internal_error("FpEmbedding: root order not exact");
        return;
      }
    }
    throw internal_error("FpEmbedding: no generator found");
  }

  std::uint64_t p_, e_, mprime_, m_ = 1, q_ = 0, inv_pa_ = 0;
  std::vector<std::uint64_t> poly_;
  FpElt w_;
};

using FpEmbeddingPtr = std::shared_ptr<const FpEmbedding>;

/// Class indices of p-regular classes (representative order coprime to p).
inline std::vector<int> pregular_classes(const CharacterTable& t, std::uint64_t p) {
  std::vector<int> out;
  for (int c = 0; c < t.num_classes(); ++c)
    if (t.classes()[c].rep.order() % p != 0) out.push_back(c);
  return out;
}

inline std::uint64_t pregular_class_count(const PermGroup& g, std::uint64_t p) {
  std::uint64_t n = 0;
  for (const auto& c : g.classes())
    if (c.rep.order() % p != 0) ++n;
  return n;
}

/// A p-block of the group behind `table`.
struct PBlock {
  CharacterTablePtr table;
  std::uint64_t p = 2;
  int index = 0;                 // position within block_distribution
  std::vector<int> members;      // indices into Irr(G), ascending
  std::uint64_t defect = 0;      // max member defect
  std::vector<int> pregular;     // p-regular class indices
  std::vector<FpElt> lambda;     // reduced central character, aligned with pregular
  FpEmbeddingPtr emb;
  PermGroup defect_rep;          // defect group representative
  bool is_principal = false;
};

/// Lexicographically least conjugate of h in g, for deterministic subgroup
/// representatives.
inline PermGroup canonical_subgroup_rep(const PermGroup& g, const PermGroup& h) {
  PermGroup best = h;
  std::string best_key = h.canonical_key();
  for (const Perm& e : g.elements()) {
    PermGroup c = conjugate_subgroup(h, e);
    std::string k = c.canonical_key();
    if (k < best_key) {
      best_key = std::move(k);
      best = std::move(c);
    }
  }
  return best;
}

namespace detail {

inline std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

/// Reduced central character of chi on the given p-regular classes.
inline std::vector<FpElt> reduced_lambda(const CharacterTable& t, int chi,
                                         const std::vector<int>& preg, const FpEmbedding& emb) {
  ClassFn omega = central_character(t, chi);
  std::vector<FpElt> out;
  for (int c : preg) out.push_back(emb.reduce(omega[c]));
  return out;
}

inline PermGroup find_defect_group(const CharacterTable& t, std::uint64_t p,
                                   const std::vector<int>& preg,
                                   const std::vector<FpElt>& lambda, std::uint64_t defect) {
  const PermGroup& g = t.group();
  if (defect == 0) return PermGroup::trivial(g.degree());
  // defect-class search: p-regular classes by descending class defect
  std::vector<int> order(preg.size());
  for (size_t i = 0; i < preg.size(); ++i) order[i] = static_cast<int>(i);
  auto class_defect = [&](int pos) {
    return p_valuation(g.order() / t.classes()[preg[pos]].size(), p);
  };
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    auto dx = class_defect(x), dy = class_defect(y);
    if (dx != dy) return dx > dy;
    return preg[x] < preg[y];
  });
  for (int pos : order) {
    bool zero = true;
    for (std::uint64_t x : lambda[pos])
      if (x != 0) zero = false;
    if (zero) continue;
    if (class_defect(pos) != defect) continue;
    PermGroup d = sylow_p(centralizer(g, t.classes()[preg[pos]].rep), p);
    if (d.order() != ipow(p, defect)) continue;
    return canonical_subgroup_rep(g, d);
  }
  throw internal_error("defect_group: no defect class found");
}

}  // namespace detail

/// Partition of Irr(G) into p-blocks: characters share a block iff their
/// reduced central characters agree on every p-regular class. Blocks are
/// ordered by least member; the principal block (containing the trivial
/// character) is therefore first.
inline std::vector<PBlock> block_distribution(CharacterTablePtr t, std::uint64_t p) {
  static std::map<std::string, std::vector<PBlock>> memo;
  std::string key = t->group().canonical_key() + "#p" + std::to_string(p);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;

  auto emb = std::make_shared<const FpEmbedding>(p, t->group().exponent());
  std::vector<int> preg = pregular_classes(*t, p);
  std::vector<PBlock> blocks;
  std::vector<std::vector<FpElt>> lambdas;
  for (int chi = 0; chi < t->num_chars(); ++chi) {
    std::vector<FpElt> lam = detail::reduced_lambda(*t, chi, preg, *emb);
    bool placed = false;
    for (size_t b = 0; b < blocks.size(); ++b)
      if (lambdas[b] == lam) {
        blocks[b].members.push_back(chi);
        placed = true;
        break;
      }
    if (!placed) {
      PBlock blk{t, p, static_cast<int>(blocks.size()), {chi}, 0, preg, lam, emb,
                 PermGroup::trivial(t->group().degree()), false};
      blocks.push_back(std::move(blk));
      lambdas.push_back(std::move(lam));
    }
  }
  for (PBlock& b : blocks) {
    for (int chi : b.members) b.defect = std::max(b.defect, defect(*t, chi, p));
    b.is_principal = std::find(b.members.begin(), b.members.end(), t->trivial_char()) !=
                     b.members.end();
    b.defect_rep = detail::find_defect_group(*t, p, preg, b.lambda, b.defect);
  }
  memo.emplace(std::move(key), blocks);
  return blocks;
}

inline const PBlock& block_of_character(const std::vector<PBlock>& blocks, int chi) {
  for (const PBlock& b : blocks)
    if (std::find(b.members.begin(), b.members.end(), chi) != b.members.end()) return b;
  throw std::invalid_argument("block_of_character: index out of range");
}

inline PermGroup defect_group(const PBlock& b) { return b.defect_rep; }

/// Brauer induction b^G of a block of H <= G: the block of G whose reduced
/// central character matches K -> sum over H-classes inside K of lambda_b.
/// Both sides are recomputed in a shared embedding. Empty optional when the
/// sum matches no block of G.
inline std::optional<PBlock> block_induction(const PBlock& b, CharacterTablePtr tg) {
  const PermGroup& h = b.table->group();
  const PermGroup& g = tg->group();
  if (!g.contains_group(h)) throw std::invalid_argument("block_induction: not a subgroup");
  std::uint64_t p = b.p;
  std::uint64_t cond = std::lcm(g.exponent(), h.exponent());
  FpEmbedding emb(p, cond);

  std::vector<int> hpreg = pregular_classes(*b.table, p);
  std::vector<FpElt> hlam = detail::reduced_lambda(*b.table, b.members.front(), hpreg, emb);

  std::vector<int> gpreg = pregular_classes(*tg, p);
  std::vector<FpElt> induced;
  for (int gk : gpreg) {
    FpElt acc = emb.zero();
    for (size_t i = 0; i < hpreg.size(); ++i) {
      if (tg->class_of(b.table->classes()[hpreg[i]].rep) != gk) continue;
      acc = emb.add(acc, hlam[i]);
    }
    induced.push_back(std::move(acc));
  }

  std::vector<PBlock> gblocks = block_distribution(tg, p);
  std::optional<PBlock> found;
  for (const PBlock& gb : gblocks) {
    std::vector<FpElt> glam = detail::reduced_lambda(*tg, gb.members.front(), gpreg, emb);
    if (glam == induced) {
      if (found) throw internal_error("block_induction: lambda matches multiple blocks");
      found = gb;
    }
  }
  return found;
}

/// True iff some member of btilde restricts with a nonzero constituent in b.
/// Requires b's group normal in btilde's group.
inline bool covers(const PBlock& btilde, const PBlock& b) {
  if (!is_normal(btilde.table->group(), b.table->group()))
    throw std::invalid_argument("covers: not a normal subgroup");
  for (int chi : btilde.members) {
    ClassFn res = restrict_cf(*btilde.table, btilde.table->character(chi), *b.table);
    for (int eta : b.members)
      if (!inner_product(*b.table, res, b.table->character(eta)).is_zero()) return true;
  }
  return false;
}

/// Index of the block containing the g-conjugate of (any) member of b, within
/// the block list of the same group.
inline int block_conjugate(const std::vector<PBlock>& blocks, const PBlock& b, const Perm& g) {
  const CharacterTable& t = *b.table;
  ClassFn moved = conjugated_cf(t, t.character(b.members.front()), g);
  return block_of_character(blocks, t.find_character(moved)).index;
}

namespace detail {

/// Rank over the cyclotomic field by fraction-free elimination.
inline std::uint64_t cyc_rank(std::vector<std::vector<Cyc>> m) {
  if (m.empty()) return 0;
  size_t rows = m.size(), cols = m[0].size();
  std::uint64_t rank = 0;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t pr = rows;
    for (size_t i = r; i < rows; ++i)
      if (!m[i][c].is_zero()) {
        pr = i;
        break;
      }
    if (pr == rows) continue;
    std::swap(m[r], m[pr]);
    for (size_t i = r + 1; i < rows; ++i) {
      if (m[i][c].is_zero()) continue;
      Cyc piv = m[r][c], fac = m[i][c];
      for (size_t j = c; j < cols; ++j) m[i][j] = m[i][j] * piv - m[r][j] * fac;
    }
    ++rank;
    ++r;
  }
  return rank;
}

/// Same rank computed modulo a prime ell = 1 mod conductor, as a guard.
inline std::uint64_t modular_rank(const std::vector<std::vector<Cyc>>& m, std::uint64_t cond) {
  if (m.empty()) return 0;
  // deterministic "random" large prime congruent to 1 mod cond
  std::mt19937_64 rng(0x57530002u);
  std::uint64_t t = 100000 + rng() % 900000;
  std::uint64_t ell = cond * t + 1;
  while (!is_prime_u64(ell)) ell += cond;
  // element of exact multiplicative order cond mod ell
  std::uint64_t z = 0;
  if (cond == 1) {
    z = 1;
  } else {
    for (std::uint64_t g = 2; g < ell && z == 0; ++g) {
      std::uint64_t cand = fp_pow(g, (ell - 1) / cond, ell);
      bool exact = true;
      for (std::uint64_t q = 2; q <= cond && exact; ++q) {
        if (cond % q != 0 || !is_prime_u64(q)) continue;
        if (fp_pow(cand, cond / q, ell) == 1) exact = false;
      }
      if (exact) z = cand;
    }
  }
  if (z == 0) throw internal_error("modular_rank: no root of unity");
  FpMat fm;
  for (const auto& row : m) {
    FpVec fr;
    for (const Cyc& v : row) {
      Cyc u = v.promoted(static_cast<int>(cond));
      std::uint64_t acc = 0;
      const auto& cs = u.coeffs();
      for (size_t i = 0; i < cs.size(); ++i) {
        mpz_class red = cs[i] % mpz_class(static_cast<unsigned long>(ell));
        if (red < 0) red += static_cast<unsigned long>(ell);
        acc = (acc + fp_mul(red.get_ui(), fp_pow(z, i, ell), ell)) % ell;
      }
      fr.push_back(acc);
    }
    fm.push_back(std::move(fr));
  }
  return fp_rank(std::move(fm), ell);
}

}  // namespace detail

/// l(B): the number of irreducible Brauer characters in B, computed as the
/// exact rank of the member-character values on p-regular classes. A modular
/// second pass guards the exact elimination.
inline std::uint64_t l_count(const PBlock& b) {
  const CharacterTable& t = *b.table;
  std::vector<std::vector<Cyc>> m;
  for (int chi : b.members) {
    std::vector<Cyc> row;
    for (int c : b.pregular) row.push_back(t.value(chi, c));
    m.push_back(std::move(row));
  }
  std::uint64_t exact = detail::cyc_rank(m);
  std::uint64_t check = detail::modular_rank(m, t.group().exponent());
  if (exact != check) throw internal_error("l_count: exact and modular ranks disagree");
  return exact;
}

/// The unique nu in Lin(Z)_{p'} below every member of B, for Z central in G.
/// Returns an index into the character table of Z.
inline int block_central_pprime_character(const PBlock& b, const PermGroup& z) {
  const CharacterTable& t = *b.table;
  const PermGroup& g = t.group();
  if (!center(g).contains_group(z))
    throw std::invalid_argument("block_central_pprime_character: Z not central");
  auto tz = CharacterTable::of(z);
  std::optional<int> found;
  for (int chi : b.members) {
    // restriction to a central subgroup is degree * linear
    ClassFn mu;
    mpz_class d(static_cast<unsigned long>(t.degree(chi)));
    for (const auto& c : tz->classes())
      mu.push_back(t.value(chi, t.class_of(c.rep)).divexact(d));
    int idx = tz->find_character(mu);
    // p'-part: mu^(p^a * s) with p^a * s = 1 mod o', o' the p'-part of the order
    std::uint64_t o = linear_order(*tz, idx);
    std::uint64_t pa = p_part(o, b.p), oprime = o / pa;
    int nu = tz->trivial_char();
    if (oprime > 1) {
      std::uint64_t s = 0;
      for (std::uint64_t c = 1; c < oprime; ++c)
        if (pa % oprime * c % oprime == 1) {
          s = c;
          break;
        }
      if (s == 0) throw internal_error("block_central_pprime_character: no inverse");
      for (std::uint64_t i = 0; i < pa * s; ++i) nu = linear_product(*tz, nu, idx);
    }
    if (found && *found != nu)
      throw internal_error("block_central_pprime_character: members disagree");
    found = nu;
  }
  if (!found) throw internal_error("block_central_pprime_character: empty block");
  if (linear_order(*tz, *found) % b.p == 0)
    throw internal_error("block_central_pprime_character: order not coprime to p");
  return *found;
}

/// JSON report of the block distribution.
inline nlohmann::json blocks_to_json(const std::vector<PBlock>& blocks) {
  nlohmann::json out = nlohmann::json::array();
  for (const PBlock& b : blocks) {
    nlohmann::json j;
    j["index"] = b.index;
    std::vector<std::uint64_t> degs;
    for (int chi : b.members) degs.push_back(b.table->degree(chi));
    j["members"] = b.members;
    j["member_degrees"] = degs;
    j["defect"] = b.defect;
    j["defect_group_order"] = b.defect_rep.order();
    j["is_principal"] = b.is_principal;
    j["l"] = l_count(b);
    PermGroup zg = center(b.table->group());
    j["central_pprime_character"] = block_central_pprime_character(b, zg);
    out.push_back(std::move(j));
  }
  return out;
}

}  // namespace weightsmith

#endif
