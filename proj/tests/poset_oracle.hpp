#pragma once

// Independent brute-force enumeration of model structures on a finite poset,
// written without the library. Elements are 0..n-1 with order `leq`; arrows
// are the pairs (a, b) with a < b. Retract closure is automatic in a poset, so
// only closure, two-out-of-three, lifting and functorial factorization are
// checked.

#include <functional>
#include <set>
#include <tuple>
#include <vector>

namespace fcat::oracle {

using Pair = std::pair<int, int>;
using Triple = std::tuple<std::set<Pair>, std::set<Pair>, std::set<Pair>>;
using Order = std::function<bool(int, int)>;

inline std::vector<Triple> poset_models(int n, const Order& leq) {
  std::vector<Pair> arrows, all;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (leq(a, b)) {
        all.push_back({a, b});
        if (a != b) arrows.push_back({a, b});
      }
  const int k = static_cast<int>(arrows.size());
  auto member = [](const std::set<Pair>& s, int a, int b) { return a == b || s.count({a, b}) > 0; };
  auto closed = [&](const std::set<Pair>& s) {
    for (auto [a, b] : s)
      for (auto [c, d] : s)
        if (b == c && !s.count({a, d})) return false;
    return true;
  };
  auto lifts = [&](const std::set<Pair>& l, const std::set<Pair>& r) {
    // a square from (a, b) to (x, y) exists iff a ≤ x and b ≤ y; a lift needs b ≤ x
    for (auto [a, b] : all)
      for (auto [x, y] : all)
        if (member(l, a, b) && member(r, x, y) && leq(a, x) && leq(b, y) && !leq(b, x)) return false;
    return true;
  };
  auto factors = [&](const std::set<Pair>& l, const std::set<Pair>& r) {
    // a middle object per arrow, monotone along every square
    std::vector<std::vector<int>> cands;
    for (auto [a, b] : all) {
      std::vector<int> c;
      for (int m = 0; m < n; ++m)
        if (leq(a, m) && leq(m, b) && member(l, a, m) && member(r, m, b)) c.push_back(m);
      if (c.empty()) return false;
      cands.push_back(c);
    }
    std::vector<int> pick(all.size(), 0);
    while (true) {
      bool ok = true;
      for (size_t i = 0; i < all.size() && ok; ++i)
        for (size_t j = 0; j < all.size() && ok; ++j)
          if (leq(all[i].first, all[j].first) && leq(all[i].second, all[j].second) &&
              !leq(cands[i][pick[i]], cands[j][pick[j]]))
            ok = false;
      if (ok) return true;
      size_t i = 0;
      while (i < all.size() && ++pick[i] == static_cast<int>(cands[i].size())) pick[i++] = 0;
      if (i == all.size()) return false;
    }
  };
  std::vector<Triple> out;
  for (int w = 0; w < (1 << k); ++w)
    for (int c = 0; c < (1 << k); ++c)
      for (int f = 0; f < (1 << k); ++f) {
        std::set<Pair> W, C, F;
        for (int i = 0; i < k; ++i) {
          if (w >> i & 1) W.insert(arrows[i]);
          if (c >> i & 1) C.insert(arrows[i]);
          if (f >> i & 1) F.insert(arrows[i]);
        }
        if (!closed(W) || !closed(C) || !closed(F)) continue;
        bool two3 = true;
        for (auto [a, b] : all)
          for (int d = 0; d < n && two3; ++d)
            if (leq(b, d) && member(W, a, b) + member(W, b, d) + member(W, a, d) == 2) two3 = false;
        if (!two3) continue;
        std::set<Pair> TC, TF;
        for (auto p : C)
          if (W.count(p)) TC.insert(p);
        for (auto p : F)
          if (W.count(p)) TF.insert(p);
        if (!lifts(C, TF) || !lifts(TC, F)) continue;
        if (!factors(C, TF) || !factors(TC, F)) continue;
        out.emplace_back(W, C, F);
      }
  return out;
}

inline std::vector<Triple> chain_models(int n) {
  return poset_models(n, [](int a, int b) { return a <= b; });
}

// subsets of a k-element set under inclusion, encoded as bitmasks
inline std::vector<Triple> boolean_models(int k) {
  return poset_models(1 << k, [](int a, int b) { return (a & ~b) == 0; });
}

}  // namespace fcat::oracle
