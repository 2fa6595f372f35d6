#pragma once

// Internal helper: deterministic enumeration of lattice points on the
// simplex, i.e. compositions of `total` into `parts` nonnegative terms,
// in lexicographic order.

#include <cstdint>
#include <functional>
#include <vector>

namespace cloneq::detail {

inline std::int64_t composition_count(int total, int parts) {
  // binomial(total + parts - 1, parts - 1)
  std::int64_t r = 1;
  for (int i = 1; i <= parts - 1; ++i) {
    r *= (total + i);
    r /= i;
  }
  return r;
}

template <typename F>
void for_each_composition(int total, int parts, F&& f) {
  std::vector<int> c(parts, 0);
  std::function<void(int, int)> rec = [&](int idx, int left) {
    if (idx == parts - 1) {
      c[idx] = left;
      f(static_cast<const std::vector<int>&>(c));
      return;
    }
    for (int v = 0; v <= left; ++v) {
      c[idx] = v;
      rec(idx + 1, left - v);
    }
  };
  if (parts >= 1) rec(0, total);
}

}  // namespace cloneq::detail
