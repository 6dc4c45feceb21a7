#pragma once

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "dpalpha/errors.hpp"

namespace dpa {

// Permutation of {0, ..., n-1}.  Text I/O uses 1-based disjoint-cycle
// notation, e.g. "(1,2)(5,7)".
class Perm {
 public:
  Perm() = default;

  explicit Perm(int n) : img_(n) { std::iota(img_.begin(), img_.end(), 0); }

  explicit Perm(std::vector<int> images) : img_(std::move(images)) {
    std::vector<char> seen(img_.size(), 0);
    for (int v : img_) {
      if (v < 0 || v >= static_cast<int>(img_.size()) || seen[v])
        throw DomainError("malformed permutation: images are not a bijection");
      seen[v] = 1;
    }
  }

  int degree() const { return static_cast<int>(img_.size()); }
  int operator()(int i) const { return img_[i]; }
  const std::vector<int>& images() const { return img_; }

  bool is_identity() const {
    for (int i = 0; i < degree(); ++i)
      if (img_[i] != i) return false;
    return true;
  }

  Perm inverse() const {
    std::vector<int> inv(img_.size());
    for (int i = 0; i < degree(); ++i) inv[img_[i]] = i;
    Perm p;
    p.img_ = std::move(inv);
    return p;
  }

  // (a * b)(x) = a(b(x))
  friend Perm operator*(const Perm& a, const Perm& b) {
    Perm p;
    p.img_.resize(b.img_.size());
    for (int i = 0; i < b.degree(); ++i) p.img_[i] = a.img_[b.img_[i]];
    return p;
  }

  friend bool operator==(const Perm& a, const Perm& b) { return a.img_ == b.img_; }
  friend bool operator<(const Perm& a, const Perm& b) { return a.img_ < b.img_; }

  // Smallest point moved, or -1 for the identity.
  int first_moved() const {
    for (int i = 0; i < degree(); ++i)
      if (img_[i] != i) return i;
    return -1;
  }

  int order() const {
    std::vector<char> done(img_.size(), 0);
    long long ord = 1;
    for (int i = 0; i < degree(); ++i) {
      if (done[i]) continue;
      int len = 0, j = i;
      do {
        done[j] = 1;
        j = img_[j];
        ++len;
      } while (j != i);
      ord = std::lcm(ord, static_cast<long long>(len));
    }
    return static_cast<int>(ord);
  }

  std::vector<std::vector<int>> cycles() const {
    std::vector<std::vector<int>> out;
    std::vector<char> done(img_.size(), 0);
    for (int i = 0; i < degree(); ++i) {
      if (done[i] || img_[i] == i) {
        done[i] = 1;
        continue;
      }
      std::vector<int> cyc;
      int j = i;
      do {
        done[j] = 1;
        cyc.push_back(j);
        j = img_[j];
      } while (j != i);
      out.push_back(std::move(cyc));
    }
    return out;
  }

  std::string cycle_string() const {
    auto cs = cycles();
    if (cs.empty()) return "()";
    std::ostringstream os;
    for (const auto& c : cs) {
      os << '(';
      for (size_t k = 0; k < c.size(); ++k) {
        if (k) os << ',';
        os << c[k] + 1;
      }
      os << ')';
    }
    return os.str();
  }

  // Parses 1-based disjoint-cycle notation on {1..n}.  "()" or an empty
  // string denotes the identity.
  static Perm from_cycle_string(const std::string& s, int n) {
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 0);
    std::vector<char> used(n, 0);
    size_t i = 0;
    auto skip_ws = [&] {
      while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    skip_ws();
    while (i < s.size()) {
      if (s[i] != '(') throw ParseError("expected '(' in cycle notation: " + s);
      ++i;
      std::vector<int> cyc;
      skip_ws();
      while (i < s.size() && s[i] != ')') {
        if (s[i] == ',') {
          ++i;
          skip_ws();
          continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
          throw ParseError("unexpected character in cycle notation: " + s);
        int v = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
          v = v * 10 + (s[i++] - '0');
        if (v < 1 || v > n)
          throw ParseError("point out of range 1.." + std::to_string(n) +
                           " in cycle notation: " + s);
        if (used[v - 1]) throw ParseError("repeated point in cycle notation: " + s);
        used[v - 1] = 1;
        cyc.push_back(v - 1);
        skip_ws();
      }
      if (i >= s.size()) throw ParseError("unterminated cycle in: " + s);
      ++i;  // ')'
      for (size_t k = 0; k + 1 < cyc.size(); ++k) img[cyc[k]] = cyc[k + 1];
      if (cyc.size() > 1) img[cyc.back()] = cyc.front();
      skip_ws();
    }
    return Perm(std::move(img));
  }

 private:
  std::vector<int> img_;
};

}  // namespace dpa
