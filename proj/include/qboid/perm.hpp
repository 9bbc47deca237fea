#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qboid/error.hpp"

namespace qboid {

// Permutation of {0, ..., n-1} stored as an image table.  Points are 0-based
// in memory; every textual form (cycle strings, files) is 1-based.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(int n) : img_(n) { std::iota(img_.begin(), img_.end(), 0); }

  static std::optional<Permutation> from_images(std::vector<int> img) {
    const int n = static_cast<int>(img.size());
    std::vector<char> seen(n, 0);
    for (int v : img) {
      if (v < 0 || v >= n || seen[v]) return std::nullopt;
      seen[v] = 1;
    }
    Permutation p;
    p.img_ = std::move(img);
    return p;
  }

  int size() const { return static_cast<int>(img_.size()); }
  int operator()(int x) const { return img_[x]; }
  const std::vector<int>& images() const { return img_; }

  bool operator==(const Permutation&) const = default;
  auto operator<=>(const Permutation&) const = default;

  bool is_identity() const {
    for (int x = 0; x < size(); ++x)
      if (img_[x] != x) return false;
    return true;
  }

  Permutation inverse() const {
    Permutation r;
    r.img_.resize(img_.size());
    for (int x = 0; x < size(); ++x) r.img_[img_[x]] = x;
    return r;
  }

  // (a * b)(x) = a(b(x)): b acts first.
  friend Permutation operator*(const Permutation& a, const Permutation& b) {
    Permutation r;
    r.img_.resize(a.img_.size());
    for (int x = 0; x < a.size(); ++x) r.img_[x] = a.img_[b.img_[x]];
    return r;
  }

  Permutation conjugated_by(const Permutation& tau) const {
    return tau * (*this) * tau.inverse();
  }

  // Cycles in increasing order of their minimum, each starting at its minimum.
  // Fixed points are included as singletons.
  std::vector<std::vector<int>> cycles() const {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(img_.size(), 0);
    for (int x = 0; x < size(); ++x) {
      if (seen[x]) continue;
      std::vector<int> cyc;
      for (int y = x; !seen[y]; y = img_[y]) {
        seen[y] = 1;
        cyc.push_back(y);
      }
      out.push_back(std::move(cyc));
    }
    return out;
  }

  int cycle_count() const {
    int k = 0;
    std::vector<char> seen(img_.size(), 0);
    for (int x = 0; x < size(); ++x) {
      if (seen[x]) continue;
      ++k;
      for (int y = x; !seen[y]; y = img_[y]) seen[y] = 1;
    }
    return k;
  }

  int fixed_point_count() const {
    int k = 0;
    for (int x = 0; x < size(); ++x)
      if (img_[x] == x) ++k;
    return k;
  }

  // "(1 2)(3 5 4)" with fixed points omitted; identity prints as "()".
  std::string cycle_string() const {
    std::ostringstream os;
    bool any = false;
    for (const auto& cyc : cycles()) {
      if (cyc.size() == 1) continue;
      any = true;
      os << '(';
      for (std::size_t i = 0; i < cyc.size(); ++i) {
        if (i) os << ' ';
        os << cyc[i] + 1;
      }
      os << ')';
    }
    if (!any) return "()";
    return os.str();
  }

  // Parses 1-based cycle notation, e.g. "(1 2)(3 4 5)" or "id".  Commas and
  // extra whitespace are tolerated.  Returns nullopt on malformed input or a
  // repeated point.
  static std::optional<Permutation> parse_cycles(const std::string& text, int n) {
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 0);
    std::vector<char> used(n, 0);

    std::size_t i = 0;
    auto skip_ws = [&] {
      while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ','))
        ++i;
    };
    skip_ws();
    if (text.compare(i, 2, "id") == 0) {
      i += 2;
      skip_ws();
      if (i != text.size()) return std::nullopt;
      return Permutation(n);
    }
    while (i < text.size()) {
      skip_ws();
      if (i == text.size()) break;
      if (text[i] != '(') return std::nullopt;
      ++i;
      std::vector<int> cyc;
      for (;;) {
        skip_ws();
        if (i < text.size() && text[i] == ')') {
          ++i;
          break;
        }
        if (i == text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) return std::nullopt;
        int v = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
          v = v * 10 + (text[i++] - '0');
        if (v < 1 || v > n || used[v - 1]) return std::nullopt;
        used[v - 1] = 1;
        cyc.push_back(v - 1);
      }
      for (std::size_t k = 0; k < cyc.size(); ++k) img[cyc[k]] = cyc[(k + 1) % cyc.size()];
    }
    return from_images(std::move(img));
  }

 private:
  std::vector<int> img_;
};

}  // namespace qboid
