#pragma once
#include "artifact/big_keys.hpp"
#include "artifact/lie_pair.hpp"

namespace artifact {

// delta(omega (x) chi^J) = sum_m chi_m-form ^ omega (x) J_m chi^{J-e_m}, on any key type.
template <class K>
Vec<K> delta_tilde(const Frame& f, const Vec<K>& x) {
  Vec<K> out;
  for (const auto& [key, c] : x) {
    const Word& w = word_of(key);
    for (int m = 0; m < f.r; ++m) {
      if (w.I[m] == 0) continue;
      int bit = f.b_bit(m);
      int s = merge_sign(Mask(1) << bit, w.form);
      if (!s) continue;
      K k2 = key;
      word_of(k2) = Word{w.form | (Mask(1) << bit), w.I - MultiIndex::unit(f.r, m)};
      add_term(out, k2, Scalar(s * w.I[m]) * c);
    }
  }
  return out;
}

// Koszul homotopy 1/(v+|J|) sum_k iota_k omega (x) chi^{J+e_k}; zero when v = 0.
// The scale factor can be disabled to build a deliberately wrong homotopy.
template <class K>
Vec<K> h_tilde(const Frame& f, const Vec<K>& x, TruncationFlag* flag = nullptr, bool scale = true) {
  Vec<K> out;
  for (const auto& [key, c] : x) {
    const Word& w = word_of(key);
    int v = popcount(w.form & f.b_bits());
    if (v == 0) continue;
    if (!f.keeps(w.I.weight() + 1, key_order(key))) {
      if (flag) flag->dropped = true;
      continue;
    }
    Scalar factor = scale ? Scalar(1, v + w.I.weight()) : Scalar(1);
    for (int k = 0; k < f.r; ++k) {
      int bit = f.b_bit(k);
      if (!(w.form >> bit & 1)) continue;
      K k2 = key;
      word_of(k2) = Word{w.form & ~(Mask(1) << bit), w.I + MultiIndex::unit(f.r, k)};
      add_term(out, k2, Scalar(front_sign(w.form, bit)) * factor * c);
    }
  }
  return out;
}

// Terms surviving sigma: no B-form and |J| = 0.
inline bool sigma_keeps(const Frame& f, const Word& w) { return (w.form & f.b_bits()) == 0 && w.I.is_zero(); }

template <class K>
Vec<K> ce_tilde(const LiePair& p, const Vec<K>& x) {
  Vec<K> out;
  for (const auto& [key, c] : x)
    for (const auto& [m, d] : d_CE(p, word_of(key).form)) {
      K k2 = key;
      word_of(k2).form = m;
      add_term(out, k2, c * d);
    }
  return out;
}

template <class K>
Vec<K> truncate_weight(const Vec<K>& x, int maxWeight) {
  return filtered(x, [&](const K& k) { return word_of(k).I.weight() <= maxWeight; });
}

WeylElement delta(const Frame& f, const WeylElement& x);
WeylElement h_homotopy(const Frame& f, const WeylElement& x);
Vec<Mask> sigma_proj(const Frame& f, const WeylElement& x);
WeylElement tau_incl(const Frame& f, const Vec<Mask>& alpha);

// Fedosov data. Every vertical field is stored as a polyvector of arity 0 and form degree 1:
// the element sum_l lambda^l (x) theta_l.
struct FedosovData {
  const LiePair* pair = nullptr;
  Frame frame;   // symmetric-weight truncation (Weyl algebra, polyvectors)
  Frame dframe;  // excess truncation (polydifferential operators)
  Connection conn;
  Tensor3 gam;             // adapted-basis Christoffel symbols
  PolyVector deltaField;   // sum_m chi_m-form (x) d_m, so that [deltaField, -] = delta~
  PolyVector nablaField;   // sum_l lambda^l (x) nabla_l, nabla_l = -Gamma^k_{l,c} chi_c d_k
  PolyVector X;            // X^nabla
  PolyVector rho() const;  // nablaField + X
  PolyVector theta() const;  // -deltaField + nablaField + X
  int iterations = 0;
};

PolyVector delta_field(const Frame& f);
PolyVector nabla_field(const LiePair& p, const Tensor3& gam, const Frame& f);
// Throws std::runtime_error on non-convergence.
FedosovData solve_fedosov(const LiePair& pair, const Connection& conn, int N);

WeylElement d_L_nabla(const FedosovData& fd, const WeylElement& x);
WeylElement apply_Q(const FedosovData& fd, const WeylElement& x);
// d_CE(Theta) + 1/2 [Theta, Theta], which vanishes iff Q^2 = 0.
PolyVector maurer_cartan_defect(const FedosovData& fd);
PolyVector curvature_field(const FedosovData& fd);

WeylElement as_weyl(const PolyVector& x);
PolyVector from_weyl(const WeylElement& x);

}  // namespace artifact
