#pragma once
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "artifact/multi_index.hpp"
#include "artifact/sparse.hpp"

namespace artifact {

using Mask = std::uint32_t;

inline int popcount(Mask m) { return std::popcount(m); }
inline bool odd(int k) { return (k & 1) != 0; }
inline int parity_sign(int k) { return odd(k) ? -1 : 1; }

// Sign of reordering the concatenation x|y of two increasing odd-letter words into
// increasing order; 0 when they share a letter.
int merge_sign(Mask x, Mask y);

// Sign of moving letter k to the front of the word m (k must be in m).
inline int front_sign(Mask m, int k) { return parity_sign(popcount(m & ((Mask(1) << k) - 1))); }
// Sign of moving letter k to the back of the word m.
inline int back_sign(Mask m, int k) { return parity_sign(popcount(m >> (k + 1))); }

// Sign of the permutation sorting a sequence of graded letters; only pairs of odd
// letters contribute. Equal positions never occur.
int koszul_sort_sign(const std::vector<int>& order, const std::vector<int>& parity);

// Local frame monomial of Lambda L^v (x) S^ B^v. Form bits 0..a-1 carry the A-forms,
// bits a..a+r-1 the B-forms chi_m; I is the symmetric exponent.
struct Word {
  Mask form = 0;
  MultiIndex I;
  friend bool operator<(const Word& x, const Word& y) {
    if (x.form != y.form) return x.form < y.form;
    return x.I < y.I;
  }
  friend bool operator==(const Word& x, const Word& y) { return x.form == y.form && x.I == y.I; }
};

// Sizes shared by every operator acting on words.
struct Frame {
  int a = 0;  // rank A
  int r = 0;  // rank B
  int N = 5;  // truncation order on symmetric weight
  // Polydifferential side: truncate on excess |I| - order instead of |I|, since inserting
  // into slots of order k can lower |I| by k. Excess is additive under the bracket.
  bool byExcess = false;
  int n() const { return a + r; }
  bool keeps(int weight, int order) const { return byExcess ? weight - order <= N : weight <= N; }
  Mask a_bits() const { return (Mask(1) << a) - 1; }
  Mask b_bits() const { return ((Mask(1) << (a + r)) - 1) & ~a_bits(); }
  int b_bit(int m) const { return a + m; }
};

using WeylElement = Vec<Word>;

// Tracks whether a truncation dropped anything.
struct TruncationFlag {
  bool dropped = false;
};

WeylElement wedge_mul(const Frame& f, const WeylElement& x, const WeylElement& y, TruncationFlag* flag = nullptr);
// Interior product with the k-th B-direction, acting as an odd derivation from the left.
WeylElement contract(const Frame& f, int k, const WeylElement& x);

struct CoproductTerm {
  MultiIndex left, right;
  Scalar coeff;
};
std::vector<CoproductTerm> sym_comul(const MultiIndex& J);
Scalar pair_dual(const MultiIndex& K, const MultiIndex& J);

std::string word_string(const Frame& f, const Word& w);

}  // namespace artifact
