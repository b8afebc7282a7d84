#ifndef WEIGHTSMITH_CHARTAB_HPP
#define WEIGHTSMITH_CHARTAB_HPP

#include <cmath>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "cyclotomic.hpp"
#include "fplin.hpp"
#include "group.hpp"

namespace weightsmith {

using ClassFn = std::vector<Cyc>;  // one value per conjugacy class

/// m_{abc} = #{(x,y) in K_a x K_b : xy = z} for a fixed z in K_c.
inline std::uint64_t class_mult_coefficient(const PermGroup& g, int a, int b, int c) {
  const auto& cls = g.classes();
  if (a < 0 || b < 0 || c < 0 || a >= static_cast<int>(cls.size()) ||
      b >= static_cast<int>(cls.size()) || c >= static_cast<int>(cls.size()))
    throw std::invalid_argument("class_mult_coefficient: bad class index");
  const Perm& z = cls[c].rep;
  std::uint64_t m = 0;
  for (const Perm& x : cls[a].members) {
    Perm y = x.inverse() * z;
    if (g.class_of(y) == b) ++m;
  }
  return m;
}

class CharacterTable;
using CharacterTablePtr = std::shared_ptr<const CharacterTable>;

/// Exact ordinary character table, computed by the Burnside-Dixon method:
/// common eigenvectors of the class matrices over F_ell give the central
/// characters mod ell, degrees are recovered from the orthogonality sum, and
/// values are lifted to cyclotomic integers by Fourier inversion over power
/// maps. Everything downstream of the mod-ell phase is exact.
class CharacterTable {
 public:
  /// Memoized table for g. aux_skip > 0 skips that many admissible auxiliary
  /// primes (used to cross-check independence of the choice of ell).
  static CharacterTablePtr of(const PermGroup& g, int aux_skip = 0) {
    static std::map<std::string, CharacterTablePtr> memo;
    std::string key = g.canonical_key() + "#" + std::to_string(aux_skip);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    CharacterTablePtr t(new CharacterTable(g, aux_skip));
    memo.emplace(std::move(key), t);
    return t;
  }

  const PermGroup& group() const { return g_; }
  int num_classes() const { return static_cast<int>(g_.classes().size()); }
  int num_chars() const { return num_classes(); }
  const std::vector<ConjClass>& classes() const { return g_.classes(); }
  int class_of(const Perm& x) const { return g_.class_of(x); }
  std::uint64_t aux_prime() const { return ell_; }

  /// Identity class is first by the class ordering (rep order ascending).
  int identity_class() const { return 0; }
  /// Trivial character is placed first.
  int trivial_char() const { return 0; }

  std::uint64_t degree(int chi) const { return degrees_.at(chi); }
  const std::vector<std::uint64_t>& degrees() const { return degrees_; }
  const Cyc& value(int chi, int cls) const { return values_.at(chi).at(cls); }
  const ClassFn& character(int chi) const { return values_.at(chi); }

  int inverse_class(int c) const { return inv_class_.at(c); }

  int power_class(int c, long long k) const {
    return g_.class_of(g_.classes().at(c).rep.power(k));
  }

  /// Power maps for each prime q up to the group exponent.
  const std::map<std::uint64_t, std::vector<int>>& power_maps() const { return power_maps_; }

  /// Index of the irreducible with exactly these values; throws if absent.
  int find_character(const ClassFn& vals) const {
    for (int i = 0; i < num_chars(); ++i)
      if (values_[i] == vals) return i;
    throw std::invalid_argument("find_character: no such irreducible");
  }

  bool is_irreducible(const ClassFn& vals) const {
    for (int i = 0; i < num_chars(); ++i)
      if (values_[i] == vals) return true;
    return false;
  }

 private:
  CharacterTable(const PermGroup& g, int aux_skip) : g_(g) { build(aux_skip); }

  friend nlohmann::json table_to_json(const CharacterTable& t);
  friend CharacterTablePtr table_from_json(const nlohmann::json& j);

  CharacterTable(PermGroup g, bool /*raw*/) : g_(std::move(g)) {}

  void build(int aux_skip) {
    const auto& cls = g_.classes();
    int k = static_cast<int>(cls.size());
    if (cls[0].rep.order() != 1) throw internal_error("chartab: identity class not first");
    std::uint64_t n = g_.order();
    std::uint64_t e = g_.exponent();

    // class inverse map and power maps
    inv_class_.resize(k);
    for (int c = 0; c < k; ++c) inv_class_[c] = g_.class_of(cls[c].rep.inverse());
    for (std::uint64_t q = 2; q <= e; ++q) {
      if (!is_prime_u64(q)) continue;
      std::vector<int>& pm = power_maps_[q];
      pm.resize(k);
      for (int c = 0; c < k; ++c) pm[c] = g_.class_of(cls[c].rep.power(static_cast<long long>(q)));
    }

    // m_{abc} tensor
    std::vector<std::vector<std::vector<std::uint64_t>>> m(
        k, std::vector<std::vector<std::uint64_t>>(k, std::vector<std::uint64_t>(k, 0)));
    for (int a = 0; a < k; ++a)
      for (int c = 0; c < k; ++c) {
        const Perm& z = cls[c].rep;
        for (const Perm& x : cls[a].members) ++m[a][g_.class_of(x.inverse() * z)][c];
      }

    int attempts_left = 3;
    while (true) {
      try {
        dixon(m, e, aux_skip);
        break;
      } catch (const internal_error&) {
        if (--attempts_left == 0) throw;
        ++aux_skip;
      }
    }

    mpz_class sum = 0;
    for (std::uint64_t d : degrees_) sum += mpz_class(d) * d;
    if (sum != mpz_class(static_cast<unsigned long>(n)))
      throw internal_error("chartab: degree squares do not sum to group order");
  }

  static std::uint64_t pick_aux_prime(std::uint64_t n, std::uint64_t e, int skip) {
    std::uint64_t lo = static_cast<std::uint64_t>(2.0 * std::sqrt(static_cast<double>(n))) + 1;
    for (std::uint64_t ell = e + 1;; ell += e) {
      if (ell <= lo || !is_prime_u64(ell)) continue;
      if (skip-- == 0) return ell;
    }
  }

  static std::uint64_t primitive_eth_root(std::uint64_t ell, std::uint64_t e) {
    // factor ell - 1, find a generator of F_ell^*, take the power of index e
    std::vector<std::uint64_t> pf;
    std::uint64_t t = ell - 1;
    for (std::uint64_t d = 2; d * d <= t; ++d)
      if (t % d == 0) {
        pf.push_back(d);
        while (t % d == 0) t /= d;
      }
    if (t > 1) pf.push_back(t);
    for (std::uint64_t g = 2; g < ell; ++g) {
      bool gen = true;
      for (std::uint64_t q : pf)
        if (fp_pow(g, (ell - 1) / q, ell) == 1) {
          gen = false;
          break;
        }
      if (gen) return fp_pow(g, (ell - 1) / e, ell);
    }
    throw internal_error("chartab: no generator of F_ell");
  }

  void dixon(const std::vector<std::vector<std::vector<std::uint64_t>>>& m, std::uint64_t e,
             int aux_skip) {
    const auto& cls = g_.classes();
    int k = static_cast<int>(cls.size());
    std::uint64_t n = g_.order();
    std::uint64_t ell = pick_aux_prime(n, e, aux_skip);
    std::uint64_t z = primitive_eth_root(ell, e);

    // class matrices (M_a)_{bc} = m_{abc}; central characters are the common
    // eigenvectors: M_a w = w_a w
    std::vector<FpMat> cm(k, FpMat(k, FpVec(k, 0)));
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b)
        for (int c = 0; c < k; ++c) cm[a][b][c] = m[a][b][c] % ell;

    // split the full space into common eigenspaces
    std::vector<FpMat> spaces;  // column bases, k x d
    {
      FpMat full(k, FpVec(k, 0));
      for (int i = 0; i < k; ++i) full[i][i] = 1;
      spaces.push_back(std::move(full));
    }
    std::mt19937_64 rng(0x5753001u);
    auto all_split = [&] {
      for (const FpMat& s : spaces)
        if (s[0].size() > 1) return false;
      return true;
    };
    for (int pass = 0; pass < k + 64 && !all_split(); ++pass) {
      FpMat mat;
      if (pass < k) {
        mat = cm[pass];
      } else {
        mat.assign(k, FpVec(k, 0));
        for (int a = 0; a < k; ++a) {
          std::uint64_t r = rng() % ell;
          for (int b = 0; b < k; ++b)
            for (int c = 0; c < k; ++c) mat[b][c] = (mat[b][c] + fp_mul(r, cm[a][b][c], ell)) % ell;
        }
      }
      std::vector<FpMat> next;
      for (FpMat& s : spaces) {
        size_t d = s[0].size();
        if (d == 1) {
          next.push_back(std::move(s));
          continue;
        }
        for (FpMat& piece : split_space(s, mat, ell)) next.push_back(std::move(piece));
      }
      spaces = std::move(next);
    }
    if (!all_split()) throw internal_error("chartab: eigenspace splitting did not converge");

    // normalize: each eigenvector scaled so the identity coordinate is 1
    std::vector<FpVec> omegas;
    for (const FpMat& s : spaces) {
      FpVec w(k);
      for (int i = 0; i < k; ++i) w[i] = s[i][0];
      if (w[0] == 0) throw internal_error("chartab: eigenvector vanishes at identity");
      std::uint64_t inv = fp_inv(w[0], ell);
      for (auto& x : w) x = fp_mul(x, inv, ell);
      omegas.push_back(std::move(w));
    }
    if (static_cast<int>(omegas.size()) != k)
      throw internal_error("chartab: wrong number of central characters");

    // degrees: chi(1)^2 = |G| / sum_a w_a w_{a'} / |K_a|; the square root is
    // unique below ell/2 because ell > 2 sqrt|G|
    std::uint64_t sqrt_n = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while ((sqrt_n + 1) * (sqrt_n + 1) <= n) ++sqrt_n;
    std::vector<std::uint64_t> degs(k);
    std::vector<FpVec> chivals(k, FpVec(k));
    for (int i = 0; i < k; ++i) {
      std::uint64_t s = 0;
      for (int a = 0; a < k; ++a) {
        std::uint64_t term = fp_mul(omegas[i][a], omegas[i][inv_class_[a]], ell);
        s = (s + fp_mul(term, fp_inv(cls[a].size() % ell, ell), ell)) % ell;
      }
      std::uint64_t d2 = fp_mul(n % ell, fp_inv(s, ell), ell);
      std::uint64_t d = 0;
      for (std::uint64_t t = 1; t <= sqrt_n; ++t)
        if (fp_mul(t, t, ell) == d2) {
          d = t;
          break;
        }
      if (d == 0) throw internal_error("chartab: no degree matches");
      degs[i] = d;
      for (int a = 0; a < k; ++a)
        chivals[i][a] =
            fp_mul(fp_mul(d % ell, omegas[i][a], ell), fp_inv(cls[a].size() % ell, ell), ell);
    }

    // lift to cyclotomic integers: the eigenvalue multiplicities of the
    // representing matrix at x are recovered by Fourier inversion over the
    // power map of x; each lies in [0, chi(1)] and is read off its residue
    std::vector<std::vector<Cyc>> rows(k, std::vector<Cyc>(k));
    for (int a = 0; a < k; ++a) {
      std::uint64_t o = cls[a].rep.order();
      std::uint64_t za = fp_pow(z, e / o, ell);
      std::vector<int> pow_class(o);
      for (std::uint64_t t = 0; t < o; ++t)
        pow_class[t] = g_.class_of(cls[a].rep.power(static_cast<long long>(t)));
      std::uint64_t oinv = fp_inv(o % ell, ell);
      for (int i = 0; i < k; ++i) {
        Cyc val = Cyc::zero();
        std::uint64_t msum = 0;
        for (std::uint64_t j = 0; j < o; ++j) {
          std::uint64_t mj = 0;
          for (std::uint64_t t = 0; t < o; ++t) {
            std::uint64_t w = fp_pow(za, (o - j % o) * t % o, ell);
            mj = (mj + fp_mul(chivals[i][pow_class[t]], w, ell)) % ell;
          }
          mj = fp_mul(mj, oinv, ell);
          if (mj > degs[i]) throw internal_error("chartab: eigenvalue multiplicity out of range");
          msum += mj;
          if (mj != 0)
            val += mpz_class(static_cast<unsigned long>(mj)) *
                   Cyc::root(static_cast<int>(o), static_cast<long>(j));
        }
        if (msum != degs[i]) throw internal_error("chartab: multiplicities do not sum to degree");
        rows[i][a] = val;
      }
    }

    // deterministic order: degree ascending then lexicographic values; the
    // trivial character is then moved to the front
    std::vector<int> order(k);
    for (int i = 0; i < k; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int x, int y) {
      if (degs[x] != degs[y]) return degs[x] < degs[y];
      for (int a = 0; a < k; ++a) {
        if (rows[x][a] == rows[y][a]) continue;
        return rows[x][a] < rows[y][a];
      }
      return false;
    });
    auto is_trivial_row = [&](int i) {
      if (degs[i] != 1) return false;
      for (int a = 0; a < k; ++a)
        if (!(rows[i][a] == Cyc::one())) return false;
      return true;
    };
    for (size_t pos = 0; pos < order.size(); ++pos)
      if (is_trivial_row(order[pos])) {
        std::rotate(order.begin(), order.begin() + pos, order.begin() + pos + 1);
        break;
      }
    if (!is_trivial_row(order[0])) throw internal_error("chartab: trivial character missing");

    degrees_.clear();
    values_.clear();
    for (int idx : order) {
      degrees_.push_back(degs[idx]);
      values_.push_back(std::move(rows[idx]));
    }
    ell_ = ell;
  }

  /// Splits an invariant subspace (column basis b) into eigenspaces of mat.
  static std::vector<FpMat> split_space(const FpMat& b, const FpMat& mat, std::uint64_t ell) {
    size_t k = b.size(), d = b[0].size();
    FpMat mb = fp_matmul(mat, b, ell);
    FpMat r = fp_solve(b, mb, ell);  // restriction of mat to the subspace
    std::vector<FpMat> out;
    size_t found = 0;
    for (std::uint64_t lam = 0; lam < ell && found < d; ++lam) {
      FpMat shifted = r;
      for (size_t i = 0; i < d; ++i) shifted[i][i] = (shifted[i][i] + ell - lam) % ell;
      std::vector<FpVec> ker = fp_nullspace(std::move(shifted), ell);
      if (ker.empty()) continue;
      FpMat piece(k, FpVec(ker.size(), 0));
      for (size_t j = 0; j < ker.size(); ++j)
        for (size_t i = 0; i < k; ++i) {
          std::uint64_t acc = 0;
          for (size_t t = 0; t < d; ++t) acc = (acc + fp_mul(b[i][t], ker[j][t], ell)) % ell;
          piece[i][j] = acc;
        }
      found += ker.size();
      out.push_back(std::move(piece));
    }
    if (found != d) throw internal_error("chartab: subspace is not semisimple over F_ell");
    return out;
  }

  PermGroup g_;
  std::uint64_t ell_ = 0;
  std::vector<std::uint64_t> degrees_;
  std::vector<ClassFn> values_;
  std::vector<int> inv_class_;
  std::map<std::uint64_t, std::vector<int>> power_maps_;
};

inline std::uint64_t class_mult_coefficient(const CharacterTable& t, int a, int b, int c) {
  return class_mult_coefficient(t.group(), a, b, c);
}

/// <a, b> = (1/|G|) sum_x a(x) conj(b(x)); exact, throws if not an integer
/// combination (inner products of virtual characters always are).
inline Cyc inner_product(const CharacterTable& t, const ClassFn& a, const ClassFn& b) {
  const auto& cls = t.classes();
  Cyc num = Cyc::zero();
  for (size_t c = 0; c < cls.size(); ++c)
    num += mpz_class(static_cast<unsigned long>(cls[c].size())) * (a[c] * b[c].conj());
  return num.divexact(mpz_class(static_cast<unsigned long>(t.group().order())));
}

/// Restriction of a class function of G to the classes of H <= G.
inline ClassFn restrict_cf(const CharacterTable& tg, const ClassFn& vals,
                           const CharacterTable& th) {
  if (!tg.group().contains_group(th.group()))
    throw std::invalid_argument("restrict_cf: not a subgroup");
  ClassFn out;
  for (const auto& c : th.classes()) out.push_back(vals[tg.class_of(c.rep)]);
  return out;
}

/// Induction of a class function of H to G.
inline ClassFn induce_cf(const CharacterTable& th, const ClassFn& vals,
                         const CharacterTable& tg) {
  const PermGroup& g = tg.group();
  const PermGroup& h = th.group();
  if (!g.contains_group(h)) throw std::invalid_argument("induce_cf: not a subgroup");
  ClassFn out;
  for (const auto& c : tg.classes()) {
    Cyc sum = Cyc::zero();
    for (const Perm& x : g.elements()) {
      Perm y = c.rep.conjugated_by(x);
      if (h.contains(y)) sum += vals[th.class_of(y)];
    }
    out.push_back(sum.divexact(mpz_class(static_cast<unsigned long>(h.order()))));
  }
  return out;
}

inline bool lies_over(const CharacterTable& tg, int chi, const CharacterTable& tn, int eta) {
  ClassFn res = restrict_cf(tg, tg.character(chi), tn);
  return !inner_product(tn, res, tn.character(eta)).is_zero();
}

/// Irr(G | eta) for eta an irreducible of a normal subgroup N.
inline std::vector<int> irr_over(const CharacterTable& tg, const CharacterTable& tn, int eta) {
  if (!is_normal(tg.group(), tn.group())) throw std::invalid_argument("irr_over: not normal");
  std::vector<int> out;
  for (int i = 0; i < tg.num_chars(); ++i)
    if (lies_over(tg, i, tn, eta)) out.push_back(i);
  return out;
}

/// Value of the conjugate class function: result(x) = vals(g x g^-1).
inline ClassFn conjugated_cf(const CharacterTable& t, const ClassFn& vals, const Perm& g) {
  ClassFn out;
  for (const auto& c : t.classes()) out.push_back(vals[t.class_of(c.rep.conjugated_by(g))]);
  return out;
}

inline bool is_invariant_cf(const CharacterTable& t, const ClassFn& vals, const PermGroup& h) {
  for (const Perm& g : h.generators())
    if (conjugated_cf(t, vals, g) != vals) return false;
  return true;
}

/// True iff the H-invariant irreducible eta of the normal subgroup N = tn's
/// group extends to a character of H.
inline bool extension_exists(const CharacterTable& th, const CharacterTable& tn, int eta) {
  if (!is_normal(th.group(), tn.group()))
    throw std::invalid_argument("extension_exists: not a normal subgroup");
  if (!is_invariant_cf(tn, tn.character(eta), th.group()))
    throw std::invalid_argument("extension_exists: character is not invariant");
  for (int i = 0; i < th.num_chars(); ++i) {
    if (th.degree(i) != tn.degree(eta)) continue;
    if (restrict_cf(th, th.character(i), tn) == tn.character(eta)) return true;
  }
  return false;
}

/// Multiplicative order of a linear character.
inline std::uint64_t linear_order(const CharacterTable& t, int chi) {
  if (t.degree(chi) != 1) throw std::invalid_argument("linear_order: not linear");
  ClassFn cur = t.character(chi);
  ClassFn one(t.num_classes(), Cyc::one());
  std::uint64_t o = 1;
  while (cur != one) {
    for (int c = 0; c < t.num_classes(); ++c) cur[c] *= t.value(chi, c);
    ++o;
  }
  return o;
}

/// Lin(G)_{p'}: linear characters of order coprime to p, sorted by index.
inline std::vector<int> linear_pprime(const CharacterTable& t, std::uint64_t p) {
  std::vector<int> out;
  for (int i = 0; i < t.num_chars(); ++i)
    if (t.degree(i) == 1 && linear_order(t, i) % p != 0) out.push_back(i);
  return out;
}

/// Index of the product of two linear characters.
inline int linear_product(const CharacterTable& t, int a, int b) {
  if (t.degree(a) != 1 || t.degree(b) != 1)
    throw std::invalid_argument("linear_product: not linear");
  ClassFn prod;
  for (int c = 0; c < t.num_classes(); ++c) prod.push_back(t.value(a, c) * t.value(b, c));
  return t.find_character(prod);
}

/// Pointwise product of a class function with a linear character.
inline ClassFn multiply_cf(const ClassFn& a, const ClassFn& b) {
  ClassFn out;
  for (size_t i = 0; i < a.size(); ++i) out.push_back(a[i] * b[i]);
  return out;
}

/// omega_chi(K) = |K| chi(x_K) / chi(1), an algebraic integer per class.
inline ClassFn central_character(const CharacterTable& t, int chi) {
  ClassFn out;
  mpz_class d(static_cast<unsigned long>(t.degree(chi)));
  for (int c = 0; c < t.num_classes(); ++c)
    out.push_back((mpz_class(static_cast<unsigned long>(t.classes()[c].size())) * t.value(chi, c))
                      .divexact(d));
  return out;
}

/// p-defect of an irreducible: nu_p(|G|) - nu_p(chi(1)).
inline std::uint64_t defect(const CharacterTable& t, int chi, std::uint64_t p) {
  return p_valuation(t.group().order(), p) - p_valuation(t.degree(chi), p);
}

/// dz(G): irreducibles of p-defect zero.
inline std::vector<int> dz_characters(const CharacterTable& t, std::uint64_t p) {
  std::vector<int> out;
  for (int i = 0; i < t.num_chars(); ++i)
    if (defect(t, i, p) == 0) out.push_back(i);
  return out;
}

/// Transport of a class function through an isomorphism f: A -> B.
inline ClassFn transport_cf(const CharacterTable& ta, const ClassFn& vals, const GroupHom& f,
                            const CharacterTable& tb) {
  if (!f.is_bijective()) throw std::invalid_argument("transport_cf: not an isomorphism");
  ClassFn out;
  for (const auto& c : tb.classes()) out.push_back(vals[ta.class_of(f.some_preimage(c.rep))]);
  return out;
}

// ---- serialization ----

inline nlohmann::json cyc_to_json(const Cyc& v) {
  nlohmann::json j;
  j["conductor"] = v.conductor();
  nlohmann::json cs = nlohmann::json::array();
  for (size_t k = 0; k < v.coeffs().size(); ++k)
    if (v.coeffs()[k] != 0) cs.push_back(nlohmann::json::array({k, v.coeffs()[k].get_str()}));
  j["coeffs"] = cs;
  return j;
}

inline Cyc cyc_from_json(const nlohmann::json& j) {
  int n = j.at("conductor").get<int>();
  Cyc out = Cyc::zero();
  for (const auto& pair : j.at("coeffs")) {
    long k = pair.at(0).get<long>();
    mpz_class c(pair.at(1).get<std::string>());
    out += c * Cyc::root(n, k);
  }
  // stored values are canonical, so the rebuilt sum demotes back to them
  return out;
}

inline nlohmann::json table_to_json(const CharacterTable& t) {
  nlohmann::json j;
  j["degree"] = t.group().degree();
  std::vector<std::string> gens;
  for (const Perm& g : t.group().generators()) gens.push_back(g.to_cycles());
  j["generators"] = gens;
  j["order"] = t.group().order();
  j["conductor"] = t.group().exponent();
  j["aux_prime"] = t.aux_prime();
  nlohmann::json cls = nlohmann::json::array();
  for (const auto& c : t.classes()) {
    nlohmann::json cj;
    cj["rep"] = c.rep.to_cycles();
    cj["size"] = c.size();
    cj["element_order"] = c.rep.order();
    cls.push_back(cj);
  }
  j["classes"] = cls;
  nlohmann::json pm;
  for (const auto& [q, v] : t.power_maps()) pm[std::to_string(q)] = v;
  j["power_maps"] = pm;
  j["degrees"] = t.degrees();
  nlohmann::json vals = nlohmann::json::array();
  for (int i = 0; i < t.num_chars(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < t.num_classes(); ++c) row.push_back(cyc_to_json(t.value(i, c)));
    vals.push_back(row);
  }
  j["values"] = vals;
  return j;
}

inline CharacterTablePtr table_from_json(const nlohmann::json& j) {
  int degree = j.at("degree").get<int>();
  std::vector<Perm> gens;
  for (const auto& s : j.at("generators")) gens.push_back(Perm::from_cycles(s.get<std::string>(), degree));
  PermGroup g(degree, gens);
  std::shared_ptr<CharacterTable> t(new CharacterTable(std::move(g), true));
  const auto& cls = t->g_.classes();
  if (cls.size() != j.at("classes").size())
    throw std::invalid_argument("table_from_json: class count mismatch");
  for (size_t c = 0; c < cls.size(); ++c) {
    if (cls[c].rep.to_cycles() != j.at("classes")[c].at("rep").get<std::string>() ||
        cls[c].size() != j.at("classes")[c].at("size").get<std::uint64_t>())
      throw std::invalid_argument("table_from_json: class data mismatch");
  }
  t->ell_ = j.at("aux_prime").get<std::uint64_t>();
  t->degrees_ = j.at("degrees").get<std::vector<std::uint64_t>>();
  for (const auto& [qs, v] : j.at("power_maps").items())
    t->power_maps_[std::stoull(qs)] = v.get<std::vector<int>>();
  t->inv_class_.resize(cls.size());
  for (size_t c = 0; c < cls.size(); ++c)
    t->inv_class_[c] = t->g_.class_of(cls[c].rep.inverse());
  for (const auto& row : j.at("values")) {
    ClassFn r;
    for (const auto& vj : row) r.push_back(cyc_from_json(vj));
    t->values_.push_back(std::move(r));
  }
  if (t->values_.size() != cls.size())
    throw std::invalid_argument("table_from_json: row count mismatch");
  return t;
}

}  // namespace weightsmith

#endif
