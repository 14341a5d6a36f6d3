#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace opkit {

// A permutation of {0,...,n-1} in one-line form: p[i] is the image of i.
using Perm = std::vector<int>;

Perm identity_perm(int n);
bool is_perm(const Perm& p);
bool is_identity(const Perm& p);

// (a * b)(i) = a(b(i)).
Perm compose(const Perm& a, const Perm& b);
Perm inverse(const Perm& p);

// All permutations of n letters in lexicographic order. The position of a
// permutation in this list is its `perm_index`.
const std::vector<Perm>& all_perms(int n);
int perm_index(const Perm& p);
long factorial(int n);

// Adjacent transpositions (i i+1), which generate the symmetric group.
std::vector<Perm> adjacent_transpositions(int n);

// a_1 (+) ... (+) a_r acting blockwise on consecutive blocks.
Perm block_sum(const std::vector<Perm>& blocks);

// Block permutation induced by `pi` in Sigma_r on blocks whose sizes, listed
// in the original (target) order, are `sizes`. The source order has block m of
// size sizes[pi[m]]; position t inside source block m goes to position t inside
// target block pi[m].
Perm block_perm(const Perm& pi, const std::vector<int>& sizes);

// Subgroup of Sigma_n fixing the given word: w[p[i]] == w[i] for all i.
std::vector<Perm> stabilizer(const std::vector<int>& word);

std::string perm_to_string(const Perm& p);

}  // namespace opkit
