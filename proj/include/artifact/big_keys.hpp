#pragma once
#include <vector>

#include "artifact/graded_core.hpp"

namespace artifact {

// Lambda L^v (x) S^B^v (x) Lambda^{|coef|} B. coef = 0 is a function (arity -1).
struct PVKey {
  Word w;
  Mask coef = 0;
  friend bool operator<(const PVKey& x, const PVKey& y) {
    if (x.coef != y.coef) return x.coef < y.coef;
    return x.w < y.w;
  }
  friend bool operator==(const PVKey& x, const PVKey& y) { return x.coef == y.coef && x.w == y.w; }
};

// Lambda L^v (x) S^B^v (x) S(B)^{(x) k+1}, the slots holding d^{J_i}.
struct PDKey {
  Word w;
  std::vector<MultiIndex> J;
  friend bool operator<(const PDKey& x, const PDKey& y) {
    if (x.J.size() != y.J.size()) return x.J.size() < y.J.size();
    if (x.J != y.J) return x.J < y.J;
    return x.w < y.w;
  }
  friend bool operator==(const PDKey& x, const PDKey& y) { return x.J == y.J && x.w == y.w; }
};

using PolyVector = Vec<PVKey>;
using PolyDiffOp = Vec<PDKey>;

inline int arity(const PVKey& k) { return popcount(k.coef) - 1; }
inline int arity(const PDKey& k) { return static_cast<int>(k.J.size()) - 1; }
inline int degree(const PVKey& k) { return popcount(k.w.form) + arity(k); }
inline int degree(const PDKey& k) { return popcount(k.w.form) + arity(k); }
inline int degree(const Word& w) { return popcount(w.form); }

inline int key_order(const Word&) { return 0; }
inline int key_order(const PVKey&) { return 0; }
inline int key_order(const PDKey& k) {
  int s = 0;
  for (const auto& J : k.J) s += J.weight();
  return s;
}

inline const Word& word_of(const Word& w) { return w; }
inline const Word& word_of(const PVKey& k) { return k.w; }
inline const Word& word_of(const PDKey& k) { return k.w; }
inline Word& word_of(Word& w) { return w; }
inline Word& word_of(PVKey& k) { return k.w; }
inline Word& word_of(PDKey& k) { return k.w; }

}  // namespace artifact
