#include "artifact/poly_structures.hpp"

namespace artifact {

namespace {

void schouten_terms(const Frame& f, const PVKey& x, const Scalar& cx, const PVKey& y, const Scalar& cy,
                    PolyVector& out, TruncationFlag* flag) {
  int sf = merge_sign(x.w.form, y.w.form);
  if (!sf) return;
  int s0 = sf * parity_sign((popcount(x.coef) + 1) * popcount(y.w.form));
  Mask form = x.w.form | y.w.form;
  const MultiIndex& I = x.w.I;
  const MultiIndex& K = y.w.I;
  bool over = I.weight() + K.weight() - 1 > f.N;
  for (int k = 0; k < f.r; ++k) {
    Mask bit = Mask(1) << k;
    // (P d/dxi_k from the right)(d_{chi_k} Q)
    if ((x.coef & bit) && K[k] > 0) {
      if (over) {
        if (flag) flag->dropped = true;
      } else {
        Mask rest = x.coef & ~bit;
        int s = merge_sign(rest, y.coef);
        if (s)
          add_term(out, PVKey{Word{form, I + K - MultiIndex::unit(f.r, k)}, rest | y.coef},
                   Scalar(s0 * back_sign(x.coef, k) * s * K[k]) * cx * cy);
      }
    }
    // - (d_{chi_k} P)(d/dxi_k Q from the left)
    if ((y.coef & bit) && I[k] > 0) {
      if (over) {
        if (flag) flag->dropped = true;
      } else {
        Mask rest = y.coef & ~bit;
        int s = merge_sign(x.coef, rest);
        if (s)
          add_term(out, PVKey{Word{form, I + K - MultiIndex::unit(f.r, k)}, x.coef | rest},
                   Scalar(-s0 * front_sign(y.coef, k) * s * I[k]) * cx * cy);
      }
    }
  }
}

// x o_i y in the phi-representation.
void insert_terms(const Frame& f, const PDKey& x, int i, const PDKey& y, const Scalar& c, PolyDiffOp& out,
                  TruncationFlag* flag) {
  const int v = arity(y);
  const MultiIndex& I = x.w.I;
  const MultiIndex& K = y.w.I;
  for (const auto& comp : compositions(x.J[i], v + 2)) {
    const MultiIndex& Pm = comp.parts[0];
    Scalar fall = falling(K, Pm);
    if (sgn(fall) == 0) continue;
    MultiIndex coefI = I + K - Pm;
    PDKey z;
    z.w = Word{0, coefI};
    z.J.reserve(x.J.size() + y.J.size() - 1);
    for (int t = 0; t < i; ++t) z.J.push_back(x.J[t]);
    for (int t = 0; t <= v; ++t) z.J.push_back(comp.parts[t + 1] + y.J[t]);
    for (std::size_t t = i + 1; t < x.J.size(); ++t) z.J.push_back(x.J[t]);
    if (!f.keeps(coefI.weight(), key_order(z))) {
      if (flag) flag->dropped = true;
      continue;
    }
    add_term(out, z, c * comp.coeff * fall);
  }
}

// Fiber star product on forms-free keys; the caller supplies the combined form.
void star_terms(const Frame& f, const PDKey& x, const PDKey& y, const Scalar& c, PolyDiffOp& out,
                TruncationFlag* flag) {
  const int u = arity(x), v = arity(y);
  for (int i = 0; i <= u; ++i) insert_terms(f, x, i, y, Scalar(parity_sign(i * v)) * c, out, flag);
}

}  // namespace

PolyVector schouten(const Frame& f, const PolyVector& x, const PolyVector& y, TruncationFlag* flag) {
  PolyVector out;
  for (const auto& [kx, cx] : x)
    for (const auto& [ky, cy] : y) schouten_terms(f, kx, cx, ky, cy, out, flag);
  return out;
}

PolyVector wedge_pv(const Frame& f, const PolyVector& x, const PolyVector& y, TruncationFlag* flag) {
  PolyVector out;
  for (const auto& [kx, cx] : x)
    for (const auto& [ky, cy] : y) {
      int s1 = merge_sign(kx.w.form, ky.w.form);
      int s2 = merge_sign(kx.coef, ky.coef);
      if (!s1 || !s2) continue;
      if (kx.w.I.weight() + ky.w.I.weight() > f.N) {
        if (flag) flag->dropped = true;
        continue;
      }
      int s = s1 * s2 * parity_sign(popcount(kx.coef) * popcount(ky.w.form));
      add_term(out, PVKey{Word{kx.w.form | ky.w.form, kx.w.I + ky.w.I}, kx.coef | ky.coef}, Scalar(s) * cx * cy);
    }
  return out;
}

PolyVector lie_derivative_Q(const FedosovData& fd, const PolyVector& x) {
  PolyVector out = ce_tilde(*fd.pair, x);
  axpy(out, Scalar(1), schouten(fd.frame, fd.theta(), x));
  return out;
}

PolyVector lie_derivative_rho(const FedosovData& fd, const PolyVector& x) {
  PolyVector out = ce_tilde(*fd.pair, x);
  axpy(out, Scalar(1), schouten(fd.frame, fd.rho(), x));
  return out;
}

SymElem phi_apply(const Frame& f, const PDKey& op, const std::vector<SymElem>& inputs) {
  SymElem acc;
  acc[op.w.I] = 1;
  for (std::size_t s = 0; s < op.J.size(); ++s) {
    SymElem d;
    for (const auto& [K, c] : inputs.at(s)) {
      Scalar fall = falling(K, op.J[s]);
      if (sgn(fall) != 0) add_term(d, K - op.J[s], c * fall);
    }
    SymElem next;
    for (const auto& [A, ca] : acc)
      for (const auto& [B, cb] : d)
        if (A.weight() + B.weight() <= f.N) add_term(next, A + B, ca * cb);
    acc = std::move(next);
  }
  return acc;
}

PolyDiffOp star(const Frame& f, const PolyDiffOp& x, const PolyDiffOp& y, TruncationFlag* flag) {
  PolyDiffOp out;
  for (const auto& [kx, cx] : x)
    for (const auto& [ky, cy] : y) {
      int sf = merge_sign(kx.w.form, ky.w.form);
      if (!sf) continue;
      int s0 = sf * parity_sign(arity(kx) * popcount(ky.w.form));
      PolyDiffOp part;
      star_terms(f, kx, ky, Scalar(s0) * cx * cy, part, flag);
      Mask form = kx.w.form | ky.w.form;
      for (auto& [k, c] : part) {
        PDKey k2 = k;
        k2.w.form = form;
        add_term(out, k2, c);
      }
    }
  return out;
}

PolyDiffOp gerstenhaber(const Frame& f, const PolyDiffOp& x, const PolyDiffOp& y, TruncationFlag* flag) {
  PolyDiffOp out;
  for (const auto& [kx, cx] : x)
    for (const auto& [ky, cy] : y) {
      int sf = merge_sign(kx.w.form, ky.w.form);
      if (!sf) continue;
      const int u = arity(kx), v = arity(ky);
      int s0 = sf * parity_sign(u * popcount(ky.w.form));
      PolyDiffOp part;
      star_terms(f, kx, ky, Scalar(s0) * cx * cy, part, flag);
      star_terms(f, ky, kx, Scalar(-s0 * parity_sign(u * v)) * cx * cy, part, flag);
      Mask form = kx.w.form | ky.w.form;
      for (auto& [k, c] : part) {
        PDKey k2 = k;
        k2.w.form = form;
        add_term(out, k2, c);
      }
    }
  return out;
}

PolyDiffOp mult_element(const Frame& f) {
  PDKey m;
  m.w = Word{0, MultiIndex(f.r)};
  m.J = {MultiIndex(f.r), MultiIndex(f.r)};
  return single(m);
}

PolyDiffOp field_to_pd(const PolyVector& v) {
  PolyDiffOp out;
  for (const auto& [k, c] : v) {
    if (popcount(k.coef) != 1) throw std::logic_error("field_to_pd: arity-0 input expected");
    PDKey d;
    d.w = k.w;
    d.J = {MultiIndex::unit(k.w.I.r, std::countr_zero(k.coef))};
    add_term(out, d, c);
  }
  return out;
}

PolyDiffOp hochschild_d(const Frame& f, const PolyDiffOp& x) {
  PolyDiffOp out;
  for (const auto& [k, c] : x) {
    DSmallKey s{k.w.form, k.J};
    for (const auto& [t, d] : hochschild_d(s)) {
      PDKey z;
      z.w = k.w;
      z.J = t.K;
      add_term(out, z, c * d);
    }
  }
  (void)f;
  return out;
}

PolyDiffOp bracket_m(const Frame& f, const PolyDiffOp& x) { return gerstenhaber(f, mult_element(f), x); }

PolyDiffOp bracket_Q_plus_m(const FedosovData& fd, const PolyDiffOp& x) {
  PolyDiffOp out = ce_tilde(*fd.pair, x);
  axpy(out, Scalar(1), gerstenhaber(fd.dframe, field_to_pd(fd.theta()), x));
  axpy(out, Scalar(1), bracket_m(fd.dframe, x));
  return out;
}

PolyDiffOp bracket_rho(const FedosovData& fd, const PolyDiffOp& x) {
  PolyDiffOp out = ce_tilde(*fd.pair, x);
  axpy(out, Scalar(1), gerstenhaber(fd.dframe, field_to_pd(fd.rho()), x));
  return out;
}

PolyDiffOp hkr(const PolyVector& x) {
  PolyDiffOp out;
  for (const auto& [k, c] : x) {
    std::vector<int> letters;
    for (Mask m = k.coef; m; m &= m - 1) letters.push_back(std::countr_zero(m));
    std::vector<int> perm(letters.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
    do {
      std::vector<int> par(perm.size(), 1);
      int s = koszul_sort_sign(perm, par);
      PDKey d;
      d.w = k.w;
      for (int p : perm) d.J.push_back(MultiIndex::unit(k.w.I.r, letters[p]));
      add_term(out, d, Scalar(s) * c);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return out;
}

PolyVector hkr_inv(const PolyDiffOp& x) {
  PolyVector out;
  for (const auto& [k, c] : x) {
    Mask coef = 0;
    int prev = -1;
    bool ok = true;
    for (const auto& J : k.J) {
      if (J.weight() != 1) {
        ok = false;
        break;
      }
      int l = 0;
      while (J[l] == 0) ++l;
      if (l <= prev) {
        ok = false;
        break;
      }
      prev = l;
      coef |= Mask(1) << l;
    }
    if (ok) add_term(out, PVKey{k.w, coef}, c);
  }
  return out;
}

Vec<TSmallKey> cup(const TSmallKey& x, const TSmallKey& y) {
  Vec<TSmallKey> out;
  int s1 = merge_sign(x.aMask, y.aMask), s2 = merge_sign(x.coef, y.coef);
  if (!s1 || !s2) return out;
  add_term(out, TSmallKey{x.aMask | y.aMask, x.coef | y.coef},
           Scalar(s1 * s2 * parity_sign(popcount(x.coef) * popcount(y.aMask))));
  return out;
}

Vec<DSmallKey> cup(const DSmallKey& x, const DSmallKey& y) {
  Vec<DSmallKey> out;
  int s1 = merge_sign(x.aMask, y.aMask);
  if (!s1) return out;
  DSmallKey z{x.aMask | y.aMask, x.K};
  z.K.insert(z.K.end(), y.K.begin(), y.K.end());
  // Slots of x carry degree u + 1 past the forms and slots of y.
  const int u = arity(x), v = arity(y);
  int s = s1 * parity_sign((u + 1) * (popcount(y.aMask) + v + 1));
  add_term(out, z, Scalar(s));
  return out;
}

}  // namespace artifact
