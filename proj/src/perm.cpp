#include "opkit/perm.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace opkit {

Perm identity_perm(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

bool is_perm(const Perm& p) {
  std::vector<char> seen(p.size(), 0);
  for (int v : p) {
    if (v < 0 || v >= static_cast<int>(p.size()) || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

bool is_identity(const Perm& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != static_cast<int>(i)) return false;
  return true;
}

Perm compose(const Perm& a, const Perm& b) {
  if (a.size() != b.size()) throw std::invalid_argument("compose: size mismatch");
  Perm r(a.size());
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = a[b[i]];
  return r;
}

Perm inverse(const Perm& p) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<int>(i);
  return r;
}

const std::vector<Perm>& all_perms(int n) {
  static std::mutex mu;
  static std::map<int, std::vector<Perm>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<Perm> out;
  Perm p = identity_perm(n);
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return cache.emplace(n, std::move(out)).first->second;
}

long factorial(int n) {
  long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

int perm_index(const Perm& p) {
  // Lehmer code gives the lexicographic rank.
  int n = static_cast<int>(p.size());
  long rank = 0;
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n; ++j)
      if (p[j] < p[i]) ++smaller;
    rank += smaller * factorial(n - 1 - i);
  }
  return static_cast<int>(rank);
}

std::vector<Perm> adjacent_transpositions(int n) {
  std::vector<Perm> out;
  for (int i = 0; i + 1 < n; ++i) {
    Perm p = identity_perm(n);
    std::swap(p[i], p[i + 1]);
    out.push_back(std::move(p));
  }
  return out;
}

Perm block_sum(const std::vector<Perm>& blocks) {
  Perm r;
  int offset = 0;
  for (const auto& b : blocks) {
    for (int v : b) r.push_back(offset + v);
    offset += static_cast<int>(b.size());
  }
  return r;
}

Perm block_perm(const Perm& pi, const std::vector<int>& sizes) {
  int r = static_cast<int>(pi.size());
  std::vector<int> start(r + 1, 0);
  for (int m = 0; m < r; ++m) start[m + 1] = start[m] + sizes[m];
  Perm out;
  out.reserve(start[r]);
  for (int m = 0; m < r; ++m)
    for (int t = 0; t < sizes[pi[m]]; ++t) out.push_back(start[pi[m]] + t);
  return out;
}

std::vector<Perm> stabilizer(const std::vector<int>& word) {
  std::vector<Perm> out;
  for (const auto& p : all_perms(static_cast<int>(word.size()))) {
    bool ok = true;
    for (std::size_t i = 0; i < word.size() && ok; ++i) ok = word[p[i]] == word[i];
    if (ok) out.push_back(p);
  }
  return out;
}

std::string perm_to_string(const Perm& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(p[i]);
  }
  return s + "]";
}

}  // namespace opkit
