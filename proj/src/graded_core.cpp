#include "artifact/graded_core.hpp"

namespace artifact {

int merge_sign(Mask x, Mask y) {
  if (x & y) return 0;
  int inversions = 0;
  for (Mask rest = y; rest; rest &= rest - 1) {
    int j = std::countr_zero(rest);
    inversions += popcount(x >> (j + 1));
  }
  return parity_sign(inversions);
}

int koszul_sort_sign(const std::vector<int>& order, const std::vector<int>& parity) {
  int s = 1;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < order.size(); ++j)
      if (order[i] > order[j] && odd(parity[i]) && odd(parity[j])) s = -s;
  return s;
}

WeylElement wedge_mul(const Frame& f, const WeylElement& x, const WeylElement& y, TruncationFlag* flag) {
  WeylElement out;
  for (const auto& [wx, cx] : x)
    for (const auto& [wy, cy] : y) {
      int s = merge_sign(wx.form, wy.form);
      if (!s) continue;
      if (wx.I.weight() + wy.I.weight() > f.N) {
        if (flag) flag->dropped = true;
        continue;
      }
      add_term(out, Word{wx.form | wy.form, wx.I + wy.I}, Scalar(s) * cx * cy);
    }
  return out;
}

WeylElement contract(const Frame& f, int k, const WeylElement& x) {
  WeylElement out;
  int bit = f.b_bit(k);
  for (const auto& [w, c] : x) {
    if (!(w.form >> bit & 1)) continue;
    add_term(out, Word{w.form & ~(Mask(1) << bit), w.I}, Scalar(front_sign(w.form, bit)) * c);
  }
  return out;
}

std::vector<CoproductTerm> sym_comul(const MultiIndex& J) {
  std::vector<CoproductTerm> out;
  for (const auto& c : compositions(J, 2)) out.push_back({c.parts[0], c.parts[1], c.coeff});
  return out;
}

Scalar pair_dual(const MultiIndex& K, const MultiIndex& J) { return K == J ? K.factorial() : Scalar(0); }

std::string word_string(const Frame& f, const Word& w) {
  std::string s;
  for (int i = 0; i < f.n(); ++i)
    if (w.form >> i & 1) {
      if (!s.empty()) s += "^";
      s += i < f.a ? "a" + std::to_string(i) : "c" + std::to_string(i - f.a);
    }
  if (s.empty()) s = "1";
  return s + "|" + w.I.str();
}

}  // namespace artifact
