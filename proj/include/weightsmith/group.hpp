#ifndef WEIGHTSMITH_GROUP_HPP
#define WEIGHTSMITH_GROUP_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "perm.hpp"

namespace weightsmith {

struct cap_exceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

inline std::uint64_t p_valuation(std::uint64_t n, std::uint64_t p) {
  std::uint64_t v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

inline std::uint64_t p_part(std::uint64_t n, std::uint64_t p) {
  std::uint64_t r = 1;
  while (n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

inline std::uint64_t pprime_part(std::uint64_t n, std::uint64_t p) { return n / p_part(n, p); }

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Stabilizer chain (base and strong generating set), naive deterministic
/// Schreier-Sims. Good enough for the orders this engine caps at.
class StabChain {
 public:
  explicit StabChain(int degree) : degree_(degree) {}

  void extend(const Perm& g) {
    if (g.is_identity() || contains(g)) return;
    sgens_.push_back(g);
    rebuild();
  }

  bool contains(const Perm& g) const {
    auto [res, lvl] = strip(g, 0);
    (void)lvl;
    return res.is_identity();
  }

  std::uint64_t order() const {
    std::uint64_t o = 1;
    for (const auto& t : transversals_) o *= t.size();
    return o;
  }

 private:
  struct dummy {};

  void rebuild() {
    // Iterate to closure: recompute transversals, sift Schreier generators,
    // append any non-trivial residues as strong generators.
    bool stable = false;
    while (!stable) {
      recompute();
      stable = true;
      for (size_t i = 0; i < base_.size() && stable; ++i) {
        std::vector<const Perm*> lgens = level_gens(i);
        for (const auto& [pt, u] : transversals_[i]) {
          for (const Perm* s : lgens) {
            const Perm& usp = transversals_[i].at((*s)(pt));
            Perm schreier = usp.inverse() * (*s) * u;
            auto [res, lvl] = strip(schreier, i + 1);
            (void)lvl;
            if (!res.is_identity()) {
              sgens_.push_back(res);
              stable = false;
              break;
            }
          }
          if (!stable) break;
        }
      }
    }
  }

  void recompute() {
    // Ensure base points cover every strong generator.
    bool grew = true;
    while (grew) {
      grew = false;
      for (const Perm& g : sgens_) {
        bool fixes_all = true;
        for (int b : base_)
          if (g(b) != b) {
            fixes_all = false;
            break;
          }
        if (fixes_all && !g.is_identity()) {
          for (int x = 0; x < degree_; ++x)
            if (g(x) != x) {
              base_.push_back(x);
              break;
            }
          grew = true;
        }
      }
    }
    transversals_.assign(base_.size(), {});
    for (size_t i = 0; i < base_.size(); ++i) {
      auto& tr = transversals_[i];
      tr[base_[i]] = Perm::identity(degree_);
      std::deque<int> queue{base_[i]};
      std::vector<const Perm*> lgens = level_gens(i);
      while (!queue.empty()) {
        int p = queue.front();
        queue.pop_front();
        for (const Perm* s : lgens) {
          int q = (*s)(p);
          if (!tr.count(q)) {
            tr[q] = (*s) * tr[p];
            queue.push_back(q);
          }
        }
      }
    }
  }

  std::vector<const Perm*> level_gens(size_t i) const {
    std::vector<const Perm*> out;
    for (const Perm& g : sgens_) {
      bool ok = true;
      for (size_t j = 0; j < i; ++j)
        if (g(base_[j]) != base_[j]) {
          ok = false;
          break;
        }
      if (ok) out.push_back(&g);
    }
    return out;
  }

  std::pair<Perm, size_t> strip(Perm g, size_t from) const {
    for (size_t i = from; i < base_.size(); ++i) {
      int p = g(base_[i]);
      auto it = transversals_[i].find(p);
      if (it == transversals_[i].end()) return {g, i};
      g = it->second.inverse() * g;
    }
    return {g, base_.size()};
  }

  int degree_;
  std::vector<int> base_;
  std::vector<Perm> sgens_;
  std::vector<std::unordered_map<int, Perm>> transversals_;
};

class PermGroup;
using PermGroupPtr = std::shared_ptr<const PermGroup>;

struct ConjClass {
  Perm rep;                   // lexicographically least member
  std::vector<Perm> members;  // sorted
  std::uint64_t size() const { return members.size(); }
};

/// A finite permutation group given by generators. Immutable after
/// construction; order and membership come from a stabilizer chain, full
/// element enumeration is allowed below the global order cap.
class PermGroup {
 public:
  inline static std::uint64_t max_order = 200000;
  inline static std::uint64_t max_sylow_order = 1024;

  PermGroup(int degree, std::vector<Perm> gens) : degree_(degree) {
    for (auto& g : gens) {
      if (g.degree() != degree) throw degree_mismatch("generator degree mismatch");
      if (!g.is_identity()) gens_.push_back(std::move(g));
    }
    std::sort(gens_.begin(), gens_.end());
    gens_.erase(std::unique(gens_.begin(), gens_.end()), gens_.end());
    chain_ = std::make_shared<StabChain>(degree);
    for (const Perm& g : gens_) chain_->extend(g);
    order_ = chain_->order();
    if (order_ > max_order)
      throw cap_exceeded("group order " + std::to_string(order_) + " exceeds cap " +
                         std::to_string(max_order));
  }

  static PermGroup trivial(int degree) { return PermGroup(degree, {}); }

  int degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return gens_; }
  std::uint64_t order() const { return order_; }
  bool is_trivial() const { return order_ == 1; }

  bool contains(const Perm& g) const {
    if (g.degree() != degree_) return false;
    return chain_->contains(g);
  }

  bool contains_group(const PermGroup& h) const {
    for (const Perm& g : h.gens_)
      if (!contains(g)) return false;
    return true;
  }

  /// Sorted list of all elements (brute-force closure, capped).
  const std::vector<Perm>& elements() const {
    if (elements_.empty()) {
      std::unordered_set<Perm, Perm::Hash> seen;
      std::deque<Perm> queue;
      Perm id = Perm::identity(degree_);
      seen.insert(id);
      queue.push_back(id);
      while (!queue.empty()) {
        Perm x = queue.front();
        queue.pop_front();
        for (const Perm& g : gens_) {
          Perm y = x * g;
          if (seen.insert(y).second) queue.push_back(y);
        }
      }
      elements_.assign(seen.begin(), seen.end());
      std::sort(elements_.begin(), elements_.end());
      if (elements_.size() != order_) throw internal_error("closure does not match chain order");
    }
    return elements_;
  }

  std::uint64_t exponent() const {
    std::uint64_t e = 1;
    for (const auto& c : classes()) {
      std::uint64_t o = c.rep.order();
      std::uint64_t g = std::gcd(e, o);
      e = e / g * o;
    }
    return e;
  }

  const std::vector<ConjClass>& classes() const {
    if (classes_.empty()) {
      const auto& elems = elements();
      std::unordered_set<Perm, Perm::Hash> seen;
      std::vector<ConjClass> out;
      for (const Perm& x : elems) {
        if (seen.count(x)) continue;
        // conjugation orbit of x
        std::vector<Perm> orb{x};
        seen.insert(x);
        for (size_t i = 0; i < orb.size(); ++i) {
          for (const Perm& g : gens_) {
            Perm y = orb[i].conjugated_by(g);
            if (seen.insert(y).second) orb.push_back(y);
          }
        }
        std::sort(orb.begin(), orb.end());
        out.push_back(ConjClass{orb.front(), std::move(orb)});
      }
      std::sort(out.begin(), out.end(), [](const ConjClass& a, const ConjClass& b) {
        auto oa = a.rep.order(), ob = b.rep.order();
        if (oa != ob) return oa < ob;
        if (a.members.size() != b.members.size()) return a.members.size() < b.members.size();
        return a.rep < b.rep;
      });
      classes_ = std::move(out);
      for (size_t i = 0; i < classes_.size(); ++i)
        for (const Perm& m : classes_[i].members) class_index_[m] = static_cast<int>(i);
    }
    return classes_;
  }

  int class_of(const Perm& x) const {
    classes();
    auto it = class_index_.find(x);
    if (it == class_index_.end()) throw std::invalid_argument("class_of: element not in group");
    return it->second;
  }

  struct Hash {};

  /// Canonical string key: degree plus sorted element images. Used for
  /// caching and deterministic identification of subgroups.
  std::string canonical_key() const {
    std::string s = "d" + std::to_string(degree_) + ":";
    for (const Perm& e : elements()) {
      for (int v : e.images()) {
        s += std::to_string(v);
        s += ',';
      }
      s += ';';
    }
    return s;
  }

 private:
  int degree_;
  std::vector<Perm> gens_;
  std::uint64_t order_ = 1;
  std::shared_ptr<StabChain> chain_;
  mutable std::vector<Perm> elements_;
  mutable std::vector<ConjClass> classes_;
  mutable std::unordered_map<Perm, int, Perm::Hash> class_index_;
};

/// Builds a group from a (possibly large) element set, reducing to a small
/// generating set first.
inline PermGroup group_from_elements(int degree, const std::vector<Perm>& elems) {
  StabChain chain(degree);
  std::vector<Perm> gens;
  for (const Perm& e : elems) {
    if (!e.is_identity() && !chain.contains(e)) {
      chain.extend(e);
      gens.push_back(e);
    }
  }
  return PermGroup(degree, gens);
}

inline bool is_subgroup(const PermGroup& g, const PermGroup& h) { return g.contains_group(h); }

inline bool is_normal(const PermGroup& g, const PermGroup& n) {
  if (!g.contains_group(n)) return false;
  for (const Perm& x : g.generators())
    for (const Perm& y : n.generators())
      if (!n.contains(y.conjugated_by(x))) return false;
  return true;
}

inline PermGroup centralizer(const PermGroup& g, const Perm& x) {
  if (!g.contains(x)) throw std::invalid_argument("centralizer: element not in group");
  std::vector<Perm> sel;
  for (const Perm& e : g.elements())
    if (e * x == x * e) sel.push_back(e);
  return group_from_elements(g.degree(), sel);
}

/// Centralizer of a whole subgroup.
inline PermGroup centralizer_of_group(const PermGroup& g, const PermGroup& h) {
  std::vector<Perm> sel;
  for (const Perm& e : g.elements()) {
    bool ok = true;
    for (const Perm& y : h.generators())
      if (e * y != y * e) {
        ok = false;
        break;
      }
    if (ok) sel.push_back(e);
  }
  return group_from_elements(g.degree(), sel);
}

inline PermGroup center(const PermGroup& g) { return centralizer_of_group(g, g); }

inline PermGroup normalizer(const PermGroup& g, const PermGroup& h) {
  if (!g.contains_group(h)) throw std::invalid_argument("normalizer: not a subgroup");
  std::vector<Perm> sel;
  for (const Perm& e : g.elements()) {
    bool ok = true;
    for (const Perm& y : h.generators())
      if (!h.contains(y.conjugated_by(e))) {
        ok = false;
        break;
      }
    if (ok) sel.push_back(e);
  }
  return group_from_elements(g.degree(), sel);
}

inline PermGroup intersection(const PermGroup& a, const PermGroup& b) {
  const PermGroup& small = a.order() <= b.order() ? a : b;
  const PermGroup& big = a.order() <= b.order() ? b : a;
  std::vector<Perm> sel;
  for (const Perm& e : small.elements())
    if (big.contains(e)) sel.push_back(e);
  return group_from_elements(a.degree(), sel);
}

inline PermGroup normal_closure(const PermGroup& g, std::vector<Perm> seeds) {
  std::vector<Perm> cur = std::move(seeds);
  StabChain chain(g.degree());
  std::deque<Perm> queue;
  std::vector<Perm> gens;
  for (const Perm& s : cur)
    if (!s.is_identity() && !chain.contains(s)) {
      chain.extend(s);
      gens.push_back(s);
      queue.push_back(s);
    }
  while (!queue.empty()) {
    Perm x = queue.front();
    queue.pop_front();
    for (const Perm& c : g.generators()) {
      Perm y = x.conjugated_by(c);
      if (!chain.contains(y)) {
        chain.extend(y);
        gens.push_back(y);
        queue.push_back(y);
      }
    }
  }
  return PermGroup(g.degree(), gens);
}

inline PermGroup derived_subgroup(const PermGroup& g) {
  std::vector<Perm> comms;
  for (const Perm& a : g.generators())
    for (const Perm& b : g.generators())
      comms.push_back(a.inverse() * b.inverse() * a * b);
  return normal_closure(g, comms);
}

inline PermGroup sylow_p(const PermGroup& g, std::uint64_t p) {
  if (!is_prime_u64(p)) throw std::invalid_argument("sylow_p: p must be prime");
  std::uint64_t target = p_part(g.order(), p);
  if (target > PermGroup::max_sylow_order)
    throw cap_exceeded("Sylow order exceeds cap");
  std::vector<Perm> pgens;
  PermGroup sub = PermGroup::trivial(g.degree());
  while (sub.order() < target) {
    PermGroup nrm = sub.is_trivial() ? g : normalizer(g, sub);
    bool found = false;
    for (const Perm& x : nrm.elements()) {
      std::uint64_t o = x.order();
      if (o == 1) continue;
      Perm xp = x.power(static_cast<long long>(pprime_part(o, p)));  // p-part of x
      if (xp.is_identity() || sub.contains(xp)) continue;
      pgens.push_back(xp);
      sub = PermGroup(g.degree(), pgens);
      if (p_part(sub.order(), p) != sub.order())
        throw internal_error("sylow_p: non-p-element crept in");
      found = true;
      break;
    }
    if (!found) throw internal_error("sylow_p: stuck below Sylow order");
  }
  return sub;
}

inline PermGroup p_core(const PermGroup& g, std::uint64_t p) {
  PermGroup syl = sylow_p(g, p);
  if (syl.is_trivial()) return syl;
  std::vector<Perm> inter(syl.elements());
  for (const Perm& e : g.elements()) {
    std::vector<Perm> next;
    for (const Perm& x : inter)
      if (syl.contains(x.conjugated_by(e))) next.push_back(x);
    inter = std::move(next);
    if (inter.size() == 1) break;
  }
  // inter = { x in Syl : all G-conjugates of x lie in every conjugate of Syl }
  // i.e. the intersection of all Sylow p-subgroups
  return group_from_elements(g.degree(), inter);
}

inline std::optional<Perm> subgroup_conjugacy(const PermGroup& g, const PermGroup& h1,
                                              const PermGroup& h2) {
  if (h1.order() != h2.order()) return std::nullopt;
  for (const Perm& e : g.elements()) {
    bool ok = true;
    for (const Perm& y : h1.generators())
      if (!h2.contains(y.conjugated_by(e))) {
        ok = false;
        break;
      }
    if (ok) return e;
  }
  return std::nullopt;
}

inline PermGroup conjugate_subgroup(const PermGroup& h, const Perm& g) {
  std::vector<Perm> gens;
  for (const Perm& y : h.generators()) gens.push_back(y.conjugated_by(g));
  return PermGroup(h.degree(), gens);
}

/// Homomorphism between permutation groups, given on generators and
/// completed (and checked for well-definedness) by exhaustive closure.
class GroupHom {
 public:
  GroupHom(PermGroup source, PermGroup target, std::vector<Perm> gen_images)
      : source_(std::move(source)), target_(std::move(target)), gen_images_(std::move(gen_images)) {
    if (gen_images_.size() != source_.generators().size())
      throw std::invalid_argument("GroupHom: one image per generator required");
    build();
  }

  const PermGroup& source() const { return source_; }
  const PermGroup& target() const { return target_; }
  const std::vector<Perm>& gen_images() const { return gen_images_; }

  Perm image(const Perm& x) const {
    auto it = map_.find(x);
    if (it == map_.end()) throw std::invalid_argument("GroupHom: element not in source");
    return it->second;
  }

  /// Lexicographically least preimage.
  Perm some_preimage(const Perm& y) const {
    std::optional<Perm> best;
    for (const auto& [x, fx] : map_)
      if (fx == y && (!best || x < *best)) best = x;
    if (!best) throw std::invalid_argument("GroupHom: element not in image");
    return *best;
  }

  PermGroup kernel() const {
    std::vector<Perm> ker;
    for (const auto& [x, fx] : map_)
      if (fx.is_identity()) ker.push_back(x);
    return group_from_elements(source_.degree(), ker);
  }

  PermGroup image_group() const { return PermGroup(target_.degree(), gen_images_); }

  PermGroup image_of_subgroup(const PermGroup& h) const {
    std::vector<Perm> im;
    for (const Perm& y : h.generators()) im.push_back(image(y));
    return PermGroup(target_.degree(), im);
  }

  PermGroup preimage_of_subgroup(const PermGroup& s) const {
    std::vector<Perm> pre;
    for (const auto& [x, fx] : map_)
      if (s.contains(fx)) pre.push_back(x);
    return group_from_elements(source_.degree(), pre);
  }

  bool is_bijective() const {
    return source_.order() == PermGroup(target_.degree(), gen_images_).order();
  }

 private:
  void build() {
    Perm id_s = Perm::identity(source_.degree());
    Perm id_t = Perm::identity(target_.degree());
    map_[id_s] = id_t;
    std::deque<Perm> queue{id_s};
    const auto& gens = source_.generators();
    while (!queue.empty()) {
      Perm x = queue.front();
      queue.pop_front();
      Perm fx = map_.at(x);
      for (size_t i = 0; i < gens.size(); ++i) {
        Perm y = x * gens[i];
        Perm fy = fx * gen_images_[i];
        auto it = map_.find(y);
        if (it == map_.end()) {
          map_[y] = fy;
          queue.push_back(y);
        } else if (it->second != fy) {
          throw std::invalid_argument("GroupHom: generator images do not respect relations");
        }
      }
    }
    if (map_.size() != source_.order()) throw internal_error("GroupHom: closure mismatch");
  }

  PermGroup source_;
  PermGroup target_;
  std::vector<Perm> gen_images_;
  std::unordered_map<Perm, Perm, Perm::Hash> map_;
};

/// Composition g . f  (apply f first).
inline GroupHom compose(const GroupHom& f, const GroupHom& g) {
  std::vector<Perm> images;
  for (const Perm& gi : f.gen_images()) images.push_back(g.image(gi));
  return GroupHom(f.source(), g.target(), images);
}

struct Quotient {
  PermGroup group;  // faithful permutation representation of G/N on cosets
  GroupHom pi;      // epimorphism G -> G/N
};

/// Faithful action of G/N on the right cosets of N; cosets are identified by
/// their lexicographically least element.
inline Quotient quotient_group(const PermGroup& g, const PermGroup& n) {
  if (!is_normal(g, n)) throw std::invalid_argument("quotient_group: subgroup not normal");
  const auto& nelems = n.elements();
  auto coset_key = [&](const Perm& x) {
    Perm best = nelems.front() * x;
    for (const Perm& e : nelems) {
      Perm y = e * x;
      if (y < best) best = y;
    }
    return best;
  };
  std::unordered_map<Perm, int, Perm::Hash> index;
  std::vector<Perm> reps;
  Perm id = Perm::identity(g.degree());
  Perm k0 = coset_key(id);
  index[k0] = 0;
  reps.push_back(k0);
  std::deque<Perm> queue{k0};
  while (!queue.empty()) {
    Perm r = queue.front();
    queue.pop_front();
    for (const Perm& s : g.generators()) {
      Perm k = coset_key(r * s);
      if (!index.count(k)) {
        index[k] = static_cast<int>(reps.size());
        reps.push_back(k);
        queue.push_back(k);
      }
    }
  }
  int npts = static_cast<int>(reps.size());
  std::vector<Perm> gen_images;
  for (const Perm& s : g.generators()) {
    // Ng |-> Ngs is an anti-action under the b-first composition convention;
    // acting by the inverse yields a homomorphism with kernel exactly N.
    Perm sinv = s.inverse();
    std::vector<int> im(npts);
    for (int i = 0; i < npts; ++i) im[i] = index.at(coset_key(reps[i] * sinv));
    gen_images.emplace_back(std::move(im));
  }
  PermGroup q(npts == 0 ? 1 : npts, gen_images);
  if (q.order() != g.order() / n.order()) throw internal_error("quotient_group: order mismatch");
  return Quotient{q, GroupHom(g, q, gen_images)};
}

/// Finite group given abstractly by a multiplication table.
struct AbstractGroup {
  std::vector<std::vector<int>> mul;  // mul[a][b] = a*b, identity at index 0

  int size() const { return static_cast<int>(mul.size()); }

  int inverse(int a) const {
    for (int b = 0; b < size(); ++b)
      if (mul[a][b] == 0) return b;
    throw internal_error("AbstractGroup: no inverse");
  }

  int element_order(int a) const {
    int x = a, o = 1;
    while (x != 0) {
      x = mul[x][a];
      ++o;
    }
    return o;
  }

  void validate() const {
    int n = size();
    for (int a = 0; a < n; ++a) {
      if (static_cast<int>(mul[a].size()) != n)
        throw std::invalid_argument("AbstractGroup: ragged table");
      if (mul[0][a] != a || mul[a][0] != a)
        throw std::invalid_argument("AbstractGroup: index 0 is not the identity");
      std::vector<char> seen(n, 0);
      for (int b = 0; b < n; ++b) {
        int c = mul[a][b];
        if (c < 0 || c >= n || seen[c]) throw std::invalid_argument("AbstractGroup: not a Latin square");
        seen[c] = 1;
      }
    }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (mul[mul[a][b]][c] != mul[a][mul[b][c]])
            throw std::invalid_argument("AbstractGroup: not associative");
  }

  static AbstractGroup trivial() { return AbstractGroup{{{0}}}; }

  static AbstractGroup cyclic(int k) {
    AbstractGroup g;
    g.mul.assign(k, std::vector<int>(k));
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) g.mul[a][b] = (a + b) % k;
    return g;
  }
};

/// An abstract group E acting on a permutation group H by automorphisms.
/// Automorphisms are stored per E-element as images of H's generators.
class AutAction {
 public:
  AutAction(AbstractGroup e, PermGroup h, std::vector<int> gen_indices,
            std::vector<std::vector<Perm>> gen_autos)
      : e_(std::move(e)), h_(std::move(h)) {
    e_.validate();
    int n = e_.size();
    homs_.assign(n, nullptr);
    autos_.assign(n, {});
    autos_[0] = h_.generators();  // identity automorphism
    std::vector<char> have(n, 0);
    have[0] = 1;
    if (gen_indices.size() != gen_autos.size())
      throw std::invalid_argument("AutAction: generator/automorphism count mismatch");
    for (size_t i = 0; i < gen_indices.size(); ++i) {
      int gi = gen_indices[i];
      check_automorphism(gen_autos[i]);
      autos_[gi] = gen_autos[i];
      have[gi] = 1;
    }
    // complete by closure under multiplication: alpha_{a*g} = alpha_a . alpha_g
    bool grew = true;
    while (grew) {
      grew = false;
      for (int a = 0; a < n; ++a) {
        if (!have[a]) continue;
        for (size_t i = 0; i < gen_indices.size(); ++i) {
          int c = e_.mul[a][gen_indices[i]];
          std::vector<Perm> comp = apply_images(autos_[a], gen_autos[i]);
          if (!have[c]) {
            autos_[c] = comp;
            have[c] = 1;
            grew = true;
          } else if (autos_[c] != comp) {
            throw std::invalid_argument("AutAction: generator maps inconsistent with table");
          }
        }
      }
    }
    for (int a = 0; a < n; ++a)
      if (!have[a]) throw std::invalid_argument("AutAction: generators do not generate E");
  }

  static AutAction trivial(PermGroup h) {
    return AutAction(AbstractGroup::trivial(), std::move(h), {}, {});
  }

  const AbstractGroup& e() const { return e_; }
  const PermGroup& h() const { return h_; }

  /// Automorphism of element a in E, applied to an arbitrary h in H.
  Perm apply(int a, const Perm& x) const { return hom(a).image(x); }

  const GroupHom& hom(int a) const {
    if (!homs_[a]) homs_[a] = std::make_shared<GroupHom>(h_, h_, autos_[a]);
    return *homs_[a];
  }

 private:
  void check_automorphism(const std::vector<Perm>& images) const {
    GroupHom f(h_, h_, images);  // throws if not well defined
    if (!f.is_bijective()) throw std::invalid_argument("AutAction: map is not bijective");
  }

  // alpha_a applied to the generator images defining alpha_g: yields
  // generator images of alpha_a . alpha_g
  std::vector<Perm> apply_images(const std::vector<Perm>& a_images,
                                 const std::vector<Perm>& g_images) const {
    GroupHom fa(h_, h_, a_images);
    std::vector<Perm> out;
    for (const Perm& gi : g_images) out.push_back(fa.image(gi));
    return out;
  }

  AbstractGroup e_;
  PermGroup h_;
  std::vector<std::vector<Perm>> autos_;
  mutable std::vector<std::shared_ptr<GroupHom>> homs_;
};

struct SemidirectProduct {
  PermGroup group;
  std::vector<Perm> h_gens;  // embedded generators of H
  std::vector<Perm> e_elts;  // embedded copy of every E element (index-aligned)
};

/// H x| E acting on |E| disjoint copies of H's points.
inline SemidirectProduct semidirect_product(const AutAction& act) {
  const PermGroup& h = act.h();
  int ne = act.e().size();
  int dh = h.degree();
  std::uint64_t ord = h.order() * static_cast<std::uint64_t>(ne);
  if (ord > PermGroup::max_order) throw cap_exceeded("semidirect product exceeds order cap");
  int deg = ne * dh;
  auto pt = [dh](int f, int x) { return f * dh + x; };
  std::vector<Perm> hg;
  for (const Perm& g : h.generators()) {
    std::vector<int> im(deg);
    for (int f = 0; f < ne; ++f) {
      Perm gi = act.apply(act.e().inverse(f), g);
      for (int x = 0; x < dh; ++x) im[pt(f, x)] = pt(f, gi(x));
    }
    hg.emplace_back(std::move(im));
  }
  std::vector<Perm> eg;
  for (int a = 0; a < ne; ++a) {
    std::vector<int> im(deg);
    for (int f = 0; f < ne; ++f)
      for (int x = 0; x < dh; ++x) im[pt(f, x)] = pt(act.e().mul[a][f], x);
    eg.emplace_back(std::move(im));
  }
  std::vector<Perm> all = hg;
  for (int a = 0; a < ne; ++a)
    if (!eg[a].is_identity()) all.push_back(eg[a]);
  PermGroup g(deg, all);
  if (g.order() != ord) throw internal_error("semidirect_product: order mismatch");
  return SemidirectProduct{std::move(g), std::move(hg), std::move(eg)};
}

}  // namespace weightsmith

#endif
