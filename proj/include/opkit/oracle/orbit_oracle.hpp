#pragma once

#include <map>
#include <vector>

// Brute-force reference computations on symmetric sequences of finite sets,
// written against plain data so that they share nothing with the library.
namespace opkit::oracle {

// Right Sigma_n-sets by arity. gens[n][i][x] = x . (i i+1).
struct PlainSeq {
  std::map<int, int> size;
  std::map<int, std::vector<std::vector<int>>> gens;
};

// Day convolution and substitution product, by union-find over explicit
// representatives using only adjacent-transposition relations.
PlainSeq tensor(const PlainSeq& k, const PlainSeq& l, int bound);
PlainSeq circle(const PlainSeq& k, const PlainSeq& l, int bound);

// Table of marks: for every subgroup H of Sigma_n (in a fixed order), the
// number of points fixed by H. Equal tables mean isomorphic Sigma_n-sets.
std::vector<long> marks(const PlainSeq& k, int n);

}  // namespace opkit::oracle
