#ifndef WEIGHTSMITH_PERM_HPP
#define WEIGHTSMITH_PERM_HPP

#include <cstdint>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace weightsmith {

struct degree_mismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct parse_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A permutation of {0,...,degree-1}, stored as its image sequence.
/// External cycle notation is 1-based; everything internal is 0-based.
class Perm {
 public:
  Perm() = default;

  explicit Perm(std::vector<int> images) : img_(std::move(images)) {
    std::vector<char> seen(img_.size(), 0);
    for (int v : img_) {
      if (v < 0 || v >= static_cast<int>(img_.size()) || seen[v])
        throw std::invalid_argument("image sequence is not a bijection");
      seen[v] = 1;
    }
  }

  static Perm identity(int degree) {
    std::vector<int> im(degree);
    for (int i = 0; i < degree; ++i) im[i] = i;
    return Perm(std::move(im));
  }

  int degree() const { return static_cast<int>(img_.size()); }
  int operator()(int x) const { return img_[x]; }
  const std::vector<int>& images() const { return img_; }

  bool is_identity() const {
    for (int i = 0; i < degree(); ++i)
      if (img_[i] != i) return false;
    return true;
  }

  /// (a*b)(x) = a(b(x))
  friend Perm operator*(const Perm& a, const Perm& b) {
    if (a.degree() != b.degree()) throw degree_mismatch("compose: degree mismatch");
    std::vector<int> im(a.degree());
    for (int i = 0; i < a.degree(); ++i) im[i] = a.img_[b.img_[i]];
    return Perm(std::move(im));
  }

  Perm inverse() const {
    std::vector<int> im(degree());
    for (int i = 0; i < degree(); ++i) im[img_[i]] = i;
    return Perm(std::move(im));
  }

  /// this^g = g * this * g^-1
  Perm conjugated_by(const Perm& g) const {
    if (g.degree() != degree()) throw degree_mismatch("conjugate: degree mismatch");
    std::vector<int> im(degree());
    for (int i = 0; i < degree(); ++i) im[g.img_[i]] = g.img_[img_[i]];
    return Perm(std::move(im));
  }

  Perm power(long long n) const {
    long long o = order();
    n %= o;
    if (n < 0) n += o;
    Perm r = identity(degree());
    Perm base = *this;
    while (n) {
      if (n & 1) r = r * base;
      base = base * base;
      n >>= 1;
    }
    return r;
  }

  long long order() const {
    std::vector<char> seen(degree(), 0);
    long long o = 1;
    for (int i = 0; i < degree(); ++i) {
      if (seen[i]) continue;
      long long len = 0;
      int j = i;
      while (!seen[j]) {
        seen[j] = 1;
        j = img_[j];
        ++len;
      }
      o = lcm_ll(o, len);
    }
    return o;
  }

  friend bool operator==(const Perm& a, const Perm& b) { return a.img_ == b.img_; }
  friend bool operator!=(const Perm& a, const Perm& b) { return a.img_ != b.img_; }
  friend bool operator<(const Perm& a, const Perm& b) { return a.img_ < b.img_; }

  /// "(1 2 3)(4 5)"; identity prints as "()".
  std::string to_cycles() const {
    std::vector<char> seen(degree(), 0);
    std::ostringstream os;
    bool any = false;
    for (int i = 0; i < degree(); ++i) {
      if (seen[i] || img_[i] == i) {
        seen[i] = 1;
        continue;
      }
      any = true;
      os << '(';
      int j = i;
      bool first = true;
      while (!seen[j]) {
        seen[j] = 1;
        if (!first) os << ' ';
        os << (j + 1);
        first = false;
        j = img_[j];
      }
      os << ')';
    }
    if (!any) return "()";
    return os.str();
  }

  /// Parses "(1 2 3)(4 5)" with 1-based points; commas also accepted.
  static Perm from_cycles(const std::string& text, int degree) {
    std::vector<int> im(degree);
    for (int i = 0; i < degree; ++i) im[i] = i;
    std::vector<char> used(degree, 0);
    size_t pos = 0;
    auto skip_ws = [&] {
      while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    };
    skip_ws();
    while (pos < text.size()) {
      if (text[pos] != '(') throw parse_error("expected '(' in cycle notation: " + text);
      ++pos;
      std::vector<int> cyc;
      while (true) {
        skip_ws();
        if (pos < text.size() && text[pos] == ')') {
          ++pos;
          break;
        }
        if (pos < text.size() && text[pos] == ',') {
          ++pos;
          continue;
        }
        size_t start = pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
        if (pos == start) throw parse_error("malformed cycle: " + text);
        int pt = std::stoi(text.substr(start, pos - start));
        if (pt < 1 || pt > degree) throw parse_error("point out of range in cycle: " + text);
        if (used[pt - 1]) throw parse_error("repeated point in cycle notation: " + text);
        used[pt - 1] = 1;
        cyc.push_back(pt - 1);
      }
      for (size_t i = 0; i < cyc.size(); ++i) im[cyc[i]] = cyc[(i + 1) % cyc.size()];
      skip_ws();
    }
    return Perm(std::move(im));
  }

  struct Hash {
    size_t operator()(const Perm& p) const {
      size_t h = 1469598103934665603ull;
      for (int v : p.img_) {
        h ^= static_cast<size_t>(v);
        h *= 1099511628211ull;
      }
      return h;
    }
  };

 private:
  static long long lcm_ll(long long a, long long b) {
    long long g = a;
    long long x = b;
    while (x) {
      long long t = g % x;
      g = x;
      x = t;
    }
    return a / g * b;
  }

  std::vector<int> img_;
};

}  // namespace weightsmith

#endif
