#ifndef WEIGHTSMITH_CYCLOTOMIC_HPP
#define WEIGHTSMITH_CYCLOTOMIC_HPP

#include <gmpxx.h>

#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace weightsmith {

inline int euler_phi(int n) {
  int r = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      r -= r / p;
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) r -= r / n;
  return r;
}

/// Monic cyclotomic polynomial coefficients, low degree first, cached per n.
inline const std::vector<mpz_class>& cyclotomic_poly(int n) {
  static std::map<int, std::vector<mpz_class>> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  // x^n - 1 divided by Phi_d for every proper divisor d of n
  std::vector<mpz_class> poly(n + 1, 0);
  poly[0] = -1;
  poly[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    const std::vector<mpz_class>& phd = cyclotomic_poly(d);
    // exact division of poly by monic phd
    int dp = static_cast<int>(poly.size()) - 1;
    int dd = static_cast<int>(phd.size()) - 1;
    std::vector<mpz_class> quo(dp - dd + 1, 0);
    std::vector<mpz_class> rem = poly;
    for (int i = dp; i >= dd; --i) {
      mpz_class c = rem[i];
      if (c == 0) continue;
      quo[i - dd] = c;
      for (int j = 0; j <= dd; ++j) rem[i - dd + j] -= c * phd[j];
    }
    for (const mpz_class& r : rem)
      if (r != 0) throw std::logic_error("cyclotomic_poly: non-exact division");
    poly = std::move(quo);
  }
  return cache.emplace(n, std::move(poly)).first->second;
}

/// Exact element of the n-th cyclotomic field, integer combinations of the
/// power basis 1, z, ..., z^(phi(n)-1) with z = primitive n-th root of unity.
/// Canonical: coefficients are reduced modulo Phi_n; equality across
/// conductors goes through the lcm field.
class Cyc {
 public:
  Cyc() : n_(1), c_(1, 0) {}

  explicit Cyc(const mpz_class& k) : n_(1), c_(1, k) {}
  explicit Cyc(long k) : n_(1), c_(1, mpz_class(k)) {}

  static Cyc zero() { return Cyc(); }
  static Cyc one() { return Cyc(1L); }

  /// zeta_n^k
  static Cyc root(int n, long k) {
    k %= n;
    if (k < 0) k += n;
    std::vector<mpz_class> poly(n, 0);
    poly[k] = 1;
    return from_poly(n, std::move(poly)).demoted();
  }

  int conductor() const { return n_; }
  const std::vector<mpz_class>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }

  /// Integer value when the element is a rational integer.
  std::optional<mpz_class> as_integer() const {
    for (size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return std::nullopt;
    return c_[0];
  }

  mpz_class integer_value(const char* what = "value") const {
    auto v = as_integer();
    if (!v) throw std::logic_error(std::string("expected rational integer: ") + what);
    return *v;
  }

  Cyc promoted(int m) const {
    if (m == n_) return *this;
    if (m % n_ != 0) throw std::invalid_argument("Cyc::promoted: conductor does not divide target");
    int f = m / n_;
    std::vector<mpz_class> poly(m, 0);
    for (size_t i = 0; i < c_.size(); ++i) poly[i * f] = c_[i];
    return from_poly(m, std::move(poly));
  }

  friend Cyc operator+(const Cyc& a, const Cyc& b) {
    auto [x, y] = common(a, b);
    for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
    return x.demoted();
  }

  friend Cyc operator-(const Cyc& a, const Cyc& b) {
    auto [x, y] = common(a, b);
    for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] -= y.c_[i];
    return x.demoted();
  }

  Cyc operator-() const {
    Cyc r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  friend Cyc operator*(const Cyc& a, const Cyc& b) {
    auto [x, y] = common(a, b);
    std::vector<mpz_class> poly(2 * x.n_, 0);
    for (size_t i = 0; i < x.c_.size(); ++i) {
      if (x.c_[i] == 0) continue;
      for (size_t j = 0; j < y.c_.size(); ++j) {
        if (y.c_[j] == 0) continue;
        poly[i + j] += x.c_[i] * y.c_[j];
      }
    }
    // fold exponents >= n back first, then reduce mod Phi_n
    for (size_t i = x.n_; i < poly.size(); ++i)
      if (poly[i] != 0) {
        poly[i - x.n_] += poly[i];
        poly[i] = 0;
      }
    poly.resize(x.n_);
    return from_poly(x.n_, std::move(poly)).demoted();
  }

  friend Cyc operator*(const mpz_class& k, const Cyc& a) {
    Cyc r = a;
    for (auto& x : r.c_) x *= k;
    return r;
  }

  Cyc& operator+=(const Cyc& o) { return *this = *this + o; }
  Cyc& operator-=(const Cyc& o) { return *this = *this - o; }
  Cyc& operator*=(const Cyc& o) { return *this = *this * o; }

  /// Galois action zeta -> zeta^k, gcd(k, n) = 1.
  Cyc galois(long k) const {
    long kk = ((k % n_) + n_) % n_;
    if (std::gcd(kk, static_cast<long>(n_)) != 1)
      throw std::invalid_argument("Cyc::galois: exponent not coprime to conductor");
    std::vector<mpz_class> poly(n_, 0);
    for (size_t i = 0; i < c_.size(); ++i) poly[(i * kk) % n_] += c_[i];
    return from_poly(n_, std::move(poly)).demoted();
  }

  /// Complex conjugation zeta -> zeta^(-1).
  Cyc conj() const { return n_ == 1 ? *this : galois(n_ - 1); }

  /// Exact division by a rational integer; throws if not exact.
  Cyc divexact(const mpz_class& d) const {
    if (d == 0) throw std::invalid_argument("Cyc::divexact: division by zero");
    Cyc r = *this;
    for (auto& x : r.c_) {
      if (!mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t()))
        throw std::logic_error("Cyc::divexact: non-exact integer division");
      x /= d;
    }
    return r;
  }

  /// Exact division by another cyclotomic; result verified by
  /// re-multiplication. Requires divisibility in the field with an integral
  /// quotient (as in fraction-free elimination).
  friend Cyc divexact(const Cyc& a, const Cyc& b) {
    if (b.is_zero()) throw std::invalid_argument("divexact: division by zero");
    if (a.is_zero()) return Cyc::zero();
    auto [x, y] = common(a, b);
    // numerator = a * product of nontrivial Galois conjugates of b;
    // denominator = field norm of b (a rational integer)
    Cyc prod = Cyc::one();
    for (int k = 2; k <= x.n_; ++k) {
      if (x.n_ == 1) break;
      if (std::gcd(k, x.n_) != 1) continue;
      prod *= y.galois(k);
    }
    Cyc norm_c = y * prod;
    mpz_class norm = norm_c.integer_value("field norm");
    Cyc q = (x * prod).divexact(norm);
    Cyc check = q * b;
    if (!(check == a)) throw std::logic_error("divexact: verification failed");
    return q;
  }

  friend bool operator==(const Cyc& a, const Cyc& b) {
    if (a.n_ == b.n_) return a.c_ == b.c_;
    auto [x, y] = common(a, b);
    return x.c_ == y.c_;
  }
  friend bool operator!=(const Cyc& a, const Cyc& b) { return !(a == b); }

  /// Deterministic total order (conductor, then coefficients).
  friend bool operator<(const Cyc& a, const Cyc& b) {
    Cyc x = a.demoted(), y = b.demoted();
    if (x.n_ != y.n_) return x.n_ < y.n_;
    for (size_t i = 0; i < x.c_.size(); ++i) {
      int c = cmp(x.c_[i], y.c_[i]);
      if (c != 0) return c < 0;
    }
    return false;
  }

  std::string to_string() const {
    Cyc d = demoted();
    if (auto v = d.as_integer()) return v->get_str();
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < d.c_.size(); ++i) {
      if (d.c_[i] == 0) continue;
      if (!first) os << (d.c_[i] > 0 ? "+" : "");
      os << d.c_[i].get_str();
      if (i > 0) os << "*z" << d.n_ << "^" << i;
      first = false;
    }
    return os.str();
  }

  /// Smallest conductor m | n with the element inside Q(zeta_m).
  Cyc demoted() const {
    Cyc cur = *this;
    bool changed = true;
    while (changed && cur.n_ > 1) {
      changed = false;
      for (int p = 2; p <= cur.n_; ++p) {
        if (cur.n_ % p != 0) continue;
        bool prime = true;
        for (int q = 2; q * q <= p; ++q)
          if (p % q == 0) {
            prime = false;
            break;
          }
        if (!prime) continue;
        if (auto down = cur.try_demote_prime(p)) {
          cur = *down;
          changed = true;
          break;
        }
      }
    }
    return cur;
  }

 private:
  static int cmp(const mpz_class& a, const mpz_class& b) {
    return mpz_cmp(a.get_mpz_t(), b.get_mpz_t());
  }

  static Cyc from_poly(int n, std::vector<mpz_class> poly) {
    const auto& ph = cyclotomic_poly(n);
    int deg = static_cast<int>(ph.size()) - 1;  // = phi(n)
    for (int i = static_cast<int>(poly.size()) - 1; i >= deg; --i) {
      mpz_class c = poly[i];
      if (c == 0) continue;
      poly[i] = 0;
      for (int j = 0; j < deg; ++j) poly[i - deg + j] -= c * ph[j];
    }
    poly.resize(deg);
    Cyc r;
    r.n_ = n;
    r.c_ = std::move(poly);
    return r;
  }

  /// Tries to rewrite in conductor n/p; succeeds iff the element lies in the
  /// subfield. Solved by expressing each basis power of zeta_{n/p} in the
  /// ambient basis and matching coefficients by Gaussian elimination.
  std::optional<Cyc> try_demote_prime(int p) const {
    int m = n_ / p;
    int phin = euler_phi(n_), phim = euler_phi(m);
    // columns: promoted basis elements zeta_m^j (j < phim), rows: ambient basis
    std::vector<std::vector<mpz_class>> mat(phin, std::vector<mpz_class>(phim + 1, 0));
    for (int j = 0; j < phim; ++j) {
      Cyc col = Cyc::root(m, j).promoted(n_);
      for (int i = 0; i < phin; ++i) mat[i][j] = col.c_[i];
    }
    for (int i = 0; i < phin; ++i) mat[i][phim] = c_[i];
    // exact fraction-free elimination, solving mat * x = rhs over Q
    std::vector<int> pivot_col(phin, -1);
    int row = 0;
    std::vector<std::vector<mpz_class>> a = mat;
    std::vector<int> piv_rows;
    for (int col = 0; col < phim && row < phin; ++col) {
      int pr = -1;
      for (int r = row; r < phin; ++r)
        if (a[r][col] != 0) {
          pr = r;
          break;
        }
      if (pr < 0) continue;
      std::swap(a[row], a[pr]);
      for (int r = 0; r < phin; ++r) {
        if (r == row || a[r][col] == 0) continue;
        mpz_class g = gcd(a[row][col], a[r][col]);
        mpz_class fr = a[row][col] / g, fs = a[r][col] / g;
        for (int cidx = 0; cidx <= phim; ++cidx) a[r][cidx] = a[r][cidx] * fr - a[row][cidx] * fs;
      }
      pivot_col[row] = col;
      piv_rows.push_back(row);
      ++row;
    }
    // consistency: zero rows must have zero rhs
    for (int r = row; r < phin; ++r)
      if (a[r][phim] != 0) return std::nullopt;
    std::vector<mpz_class> x(phim, 0);
    for (int r = 0; r < row; ++r) {
      int col = pivot_col[r];
      if (!mpz_divisible_p(a[r][phim].get_mpz_t(), a[r][col].get_mpz_t())) return std::nullopt;
      x[col] = a[r][phim] / a[r][col];
    }
    Cyc cand;
    cand.n_ = m;
    cand.c_ = std::move(x);
    if (!(cand.promoted(n_).c_ == c_)) return std::nullopt;
    return cand;
  }

  static std::pair<Cyc, Cyc> common(const Cyc& a, const Cyc& b) {
    int l = std::lcm(a.n_, b.n_);
    return {a.promoted(l), b.promoted(l)};
  }

  int n_;
  std::vector<mpz_class> c_;
};

}  // namespace weightsmith

#endif
