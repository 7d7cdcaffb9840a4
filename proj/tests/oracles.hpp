#pragma once

// Independent reference values used only by tests.

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

namespace oracle {

inline mpz_class double_factorial(int n) {
  mpz_class r = 1;
  for (int k = n; k > 1; k -= 2) r *= k;
  return r;
}

/// <tau_{d_1} ... tau_{d_n}>_g by the string equation and the DVV (Virasoro) recursion.
class Witten {
 public:
  mpq_class operator()(int g, std::vector<int> d) {
    if (g < 0) return 0;
    for (int x : d)
      if (x < 0) return 0;
    int n = static_cast<int>(d.size());
    if (n == 0 || 2 * g - 2 + n <= 0) return 0;
    if (std::accumulate(d.begin(), d.end(), 0) != 3 * g - 3 + n) return 0;
    std::sort(d.begin(), d.end());
    auto key = std::make_pair(g, d);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    mpq_class r = compute(g, d);
    memo_[key] = r;
    return r;
  }

 private:
  mpq_class compute(int g, const std::vector<int>& d) {
    int n = static_cast<int>(d.size());
    if (g == 0 && n == 3) return 1;
    if (g == 1 && n == 1) return mpq_class(1, 24);
    if (d[0] == 0) {
      std::vector<int> rest(d.begin() + 1, d.end());
      mpq_class r = 0;
      for (std::size_t j = 0; j < rest.size(); ++j) {
        --rest[j];
        r += (*this)(g, rest);
        ++rest[j];
      }
      return r;
    }
    int k = d.back() - 1;
    std::vector<int> rest(d.begin(), d.end() - 1);
    mpq_class r = 0;
    for (std::size_t j = 0; j < rest.size(); ++j) {
      std::vector<int> t = rest;
      t[j] += k;
      r += mpq_class(double_factorial(2 * k + 2 * rest[j] + 1), double_factorial(2 * rest[j] - 1)) * (*this)(g, t);
    }
    for (int a = 0; a <= k - 1; ++a) {
      int b = k - 1 - a;
      mpq_class w = mpq_class(double_factorial(2 * a + 1) * double_factorial(2 * b + 1)) / 2;
      std::vector<int> t = rest;
      t.push_back(a);
      t.push_back(b);
      r += w * (*this)(g - 1, t);
      int m = static_cast<int>(rest.size());
      for (int mask = 0; mask < (1 << m); ++mask) {
        std::vector<int> I{a}, J{b};
        for (int j = 0; j < m; ++j) ((mask >> j) & 1 ? I : J).push_back(rest[j]);
        for (int g1 = 0; g1 <= g; ++g1) r += w * (*this)(g1, I) * (*this)(g - g1, J);
      }
    }
    r /= double_factorial(2 * k + 3);
    return r;
  }

  std::map<std::pair<int, std::vector<int>>, mpq_class> memo_;
};

}  // namespace oracle
