#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <variant>
#include <vector>

#include "wpl/errors.hpp"

namespace wpl {

// A point of the weighted projective line, as a tube index: either the
// exceptional point on arm i (1-based) or an ordinary point named by a label.
struct Exceptional {
  int arm = 1;
  friend bool operator==(const Exceptional&, const Exceptional&) = default;
  friend auto operator<=>(const Exceptional&, const Exceptional&) = default;
};
struct Ordinary {
  std::string label;
  friend bool operator==(const Ordinary&, const Ordinary&) = default;
  friend auto operator<=>(const Ordinary&, const Ordinary&) = default;
};
using PointId = std::variant<Exceptional, Ordinary>;

inline std::string point_name(const PointId& pt) {
  if (const auto* e = std::get_if<Exceptional>(&pt)) return "e" + std::to_string(e->arm);
  return "o:" + std::get<Ordinary>(pt).label;
}

// Element l*c + sum lambda_i * x_i of the rank-one abelian group L(p_1..p_t).
// Values produced by Geometry::normalize satisfy 0 <= lambda_i < p_i.
struct LElement {
  std::int64_t l = 0;
  std::vector<std::int64_t> lambda;
  friend bool operator==(const LElement&, const LElement&) = default;
  friend auto operator<=>(const LElement&, const LElement&) = default;
};

class Geometry {
 public:
  static Geometry make(std::vector<int> weights, std::vector<std::string> ordinary_labels = {}) {
    std::vector<int> sorted = weights;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    static const std::vector<std::vector<int>> kTubular = {
        {2, 2, 2, 2}, {3, 3, 3}, {4, 4, 2}, {6, 3, 2}};
    if (std::find(kTubular.begin(), kTubular.end(), sorted) == kTubular.end()) {
      std::string w;
      for (std::size_t i = 0; i < weights.size(); ++i) {
        w += (i ? "," : "") + std::to_string(weights[i]);
      }
      throw NonTubularWeights("weights (" + w +
                              ") are not of genus one; expected (2,2,2,2), (3,3,3), "
                              "(4,4,2) or (6,3,2)");
    }
    for (std::size_t i = 0; i < ordinary_labels.size(); ++i) {
      const auto& lab = ordinary_labels[i];
      if (!valid_label(lab)) throw InvalidLabel("invalid ordinary point label '" + lab + "'");
      for (std::size_t j = 0; j < i; ++j) {
        if (ordinary_labels[j] == lab) throw DuplicateLabel("duplicate ordinary label '" + lab + "'");
      }
    }
    Geometry g;
    g.weights_ = std::move(weights);
    g.ordinary_ = std::move(ordinary_labels);
    g.p_ = 1;
    for (int w : g.weights_) g.p_ = std::lcm(g.p_, w);
    return g;
  }

  const std::vector<int>& weights() const { return weights_; }
  const std::vector<std::string>& ordinary_labels() const { return ordinary_; }
  int t() const { return static_cast<int>(weights_.size()); }
  int p() const { return p_; }
  int weight(int arm) const { return weights_.at(static_cast<std::size_t>(arm - 1)); }

  bool has_point(const PointId& pt) const {
    if (const auto* e = std::get_if<Exceptional>(&pt)) return e->arm >= 1 && e->arm <= t();
    const auto& lab = std::get<Ordinary>(pt).label;
    return std::find(ordinary_.begin(), ordinary_.end(), lab) != ordinary_.end();
  }

  int tube_rank(const PointId& pt) const {
    if (const auto* e = std::get_if<Exceptional>(&pt)) return weight(e->arm);
    return 1;
  }

  // Exceptional tubes e1..et followed by the declared ordinary points.
  std::vector<PointId> points() const {
    std::vector<PointId> out;
    for (int i = 1; i <= t(); ++i) out.emplace_back(Exceptional{i});
    for (const auto& lab : ordinary_) out.emplace_back(Ordinary{lab});
    return out;
  }

  LElement zero() const { return LElement{0, std::vector<std::int64_t>(weights_.size(), 0)}; }
  LElement c() const { return LElement{1, std::vector<std::int64_t>(weights_.size(), 0)}; }
  LElement x(int arm) const {
    LElement e = zero();
    e.lambda.at(static_cast<std::size_t>(arm - 1)) = 1;
    return normalize(e);
  }

  // Carries excess of lambda_i into l using p_i x_i = c.
  LElement normalize(LElement raw) const {
    if (raw.lambda.size() != weights_.size()) {
      throw std::invalid_argument("LElement has wrong number of arm coefficients");
    }
    for (std::size_t i = 0; i < weights_.size(); ++i) {
      const std::int64_t pi = weights_[i];
      std::int64_t q = raw.lambda[i] / pi;
      std::int64_t r = raw.lambda[i] % pi;
      if (r < 0) {
        r += pi;
        --q;
      }
      raw.l += q;
      raw.lambda[i] = r;
    }
    return raw;
  }

  LElement add(const LElement& a, const LElement& b) const {
    LElement s{a.l + b.l, a.lambda};
    for (std::size_t i = 0; i < s.lambda.size(); ++i) s.lambda[i] += b.lambda.at(i);
    return normalize(std::move(s));
  }
  LElement negate(const LElement& a) const {
    LElement s{-a.l, a.lambda};
    for (auto& v : s.lambda) v = -v;
    return normalize(std::move(s));
  }
  LElement sub(const LElement& a, const LElement& b) const { return add(a, negate(b)); }

  // Dualizing element (t-2)c - sum x_i.
  LElement omega() const {
    LElement w{t() - 2, std::vector<std::int64_t>(weights_.size(), -1)};
    return normalize(std::move(w));
  }

  // Degree of O(x) in units where deg O(c) = p, so deg O(x_i) = p/p_i.
  std::int64_t degree(const LElement& x) const {
    std::int64_t d = x.l * p_;
    for (std::size_t i = 0; i < weights_.size(); ++i) d += x.lambda[i] * (p_ / weights_[i]);
    return d;
  }

  // dim_k Hom(O, O(x)): the graded piece of the coordinate algebra in degree
  // x, which is l+1 for the normal form l c + sum lambda_i x_i when l >= -1.
  std::int64_t sections(const LElement& x) const {
    const LElement n = normalize(x);
    return std::max<std::int64_t>(n.l + 1, 0);
  }

  friend bool operator==(const Geometry& a, const Geometry& b) {
    return a.weights_ == b.weights_ && a.ordinary_ == b.ordinary_;
  }

 private:
  Geometry() = default;

  static bool valid_label(const std::string& s) {
    if (s.empty()) return false;
    for (char ch : s) {
      const bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
                      (ch >= '0' && ch <= '9') || ch == '_';
      if (!ok) return false;
    }
    // e1, e2, ... name exceptional tubes.
    if (s.size() > 1 && s[0] == 'e' &&
        std::all_of(s.begin() + 1, s.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
      return false;
    }
    return true;
  }

  std::vector<int> weights_;
  std::vector<std::string> ordinary_;
  int p_ = 1;
};

}  // namespace wpl
