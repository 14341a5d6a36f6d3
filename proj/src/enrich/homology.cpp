#include "opkit/enrich/homology.hpp"

#include <cstdlib>
#include <numeric>
#include <utility>

namespace opkit::enrich {

std::vector<long long> smith_diagonal(IntMatrix m) {
  std::vector<long long> diag;
  std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // Pivot: smallest nonzero absolute value in the remaining block.
    std::size_t pr = rows, pc = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (m[i][j] != 0 && (pr == rows || std::llabs(m[i][j]) < std::llabs(m[pr][pc]))) {
          pr = i;
          pc = j;
        }
    if (pr == rows) break;
    std::swap(m[t], m[pr]);
    for (auto& row : m) std::swap(row[t], row[pc]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        long long q = m[i][t] / m[t][t];
        if (q)
          for (std::size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
        if (m[i][t] != 0) {
          std::swap(m[t], m[i]);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        long long q = m[t][j] / m[t][t];
        if (q)
          for (std::size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
        if (m[t][j] != 0) {
          for (auto& row : m) std::swap(row[t], row[j]);
          clean = false;
        }
      }
      if (clean) {
        // Divisibility: fold in any entry not divisible by the pivot.
        for (std::size_t i = t + 1; i < rows && clean; ++i)
          for (std::size_t j = t + 1; j < cols && clean; ++j)
            if (m[i][j] % m[t][t] != 0) {
              for (std::size_t k = t; k < cols; ++k) m[t][k] += m[i][k];
              clean = false;
            }
      }
    }
    diag.push_back(std::llabs(m[t][t]));
    ++t;
  }
  return diag;
}

std::vector<HomologyGroup> homology(const ChainComplex& c) {
  std::size_t levels = c.ranks.size();
  std::vector<std::vector<long long>> diag(levels + 1);
  for (std::size_t n = 1; n < levels; ++n) diag[n] = smith_diagonal(c.d[n]);
  std::vector<HomologyGroup> out;
  for (std::size_t k = 0; k + 1 < levels; ++k) {
    HomologyGroup h;
    int rk_in = k == 0 ? 0 : static_cast<int>(diag[k].size());
    int rk_out = static_cast<int>(diag[k + 1].size());
    h.rank = c.ranks[k] - rk_in - rk_out;
    for (long long v : diag[k + 1])
      if (v > 1) h.torsion.push_back(v);
    out.push_back(h);
  }
  return out;
}

ChainComplex normalized_chains(const SSet& x, int top) {
  ChainComplex c;
  std::vector<std::vector<int>> basis(top + 1);
  std::vector<int> pos(x.size(), -1);
  for (int n = 0; n <= top; ++n) {
    basis[n] = x.nondegenerate(n);
    for (std::size_t i = 0; i < basis[n].size(); ++i) pos[basis[n][i]] = static_cast<int>(i);
    c.ranks.push_back(static_cast<int>(basis[n].size()));
  }
  c.d.resize(top + 1);
  for (int n = 1; n <= top; ++n) {
    IntMatrix m(c.ranks[n - 1], std::vector<long long>(c.ranks[n], 0));
    for (std::size_t j = 0; j < basis[n].size(); ++j) {
      const auto& faces = x.faces_of(basis[n][j]);
      for (int i = 0; i <= n; ++i)
        if (faces[i].nondegenerate()) m[pos[faces[i].id]][j] += (i % 2 ? -1 : 1);
    }
    c.d[n] = std::move(m);
  }
  return c;
}

std::vector<HomologyGroup> homology(const SSet& x, int max_k) { return homology(normalized_chains(x, max_k + 1)); }

std::vector<HomologyGroup> cone_homology(const SMap& f, int max_k) {
  int top = max_k + 1;
  ChainComplex cx = normalized_chains(f.source, top);
  ChainComplex cy = normalized_chains(f.target, top);
  auto rx = [&](int n) { return n < 0 ? 0 : cx.ranks[n]; };
  // Position of each nondegenerate simplex within its dimension.
  auto positions = [](const SSet& s) {
    std::vector<int> pos(s.size(), -1);
    for (int n = 0; n <= s.max_dim(); ++n) {
      auto ids = s.nondegenerate(n);
      for (std::size_t i = 0; i < ids.size(); ++i) pos[ids[i]] = static_cast<int>(i);
    }
    return pos;
  };
  auto px = positions(f.source), py = positions(f.target);
  ChainComplex cone;
  for (int n = 0; n <= top; ++n) cone.ranks.push_back(rx(n - 1) + cy.ranks[n]);
  cone.d.resize(top + 1);
  for (int n = 1; n <= top; ++n) {
    // Columns: C_{n-1}(X) (+) C_n(Y); rows: C_{n-2}(X) (+) C_{n-1}(Y).
    IntMatrix m(cone.ranks[n - 1], std::vector<long long>(cone.ranks[n], 0));
    int rows_x = rx(n - 2), cols_x = rx(n - 1);
    if (n >= 2)
      for (int i = 0; i < rows_x; ++i)
        for (int j = 0; j < cols_x; ++j) m[i][j] = -cx.d[n - 1][i][j];
    for (int x = 0; x < f.source.size(); ++x) {
      if (f.source.dim(x) != n - 1) continue;
      const Simplex& img = f.on[x];
      if (img.nondegenerate()) m[rows_x + py[img.id]][px[x]] += 1;
    }
    for (int i = 0; i < cy.ranks[n - 1]; ++i)
      for (int j = 0; j < cy.ranks[n]; ++j) m[rows_x + i][cols_x + j] = cy.d[n][i][j];
    cone.d[n] = std::move(m);
  }
  return homology(cone);
}

}  // namespace opkit::enrich
