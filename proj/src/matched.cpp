#include "artifact/matched.hpp"

#include <bit>
#include <map>
#include <stdexcept>

namespace artifact {

bool matched_detect(const LiePair& pair) { return pair.matched(); }

MatchedData matched_direct(const LiePair& pair) {
  if (!pair.matched()) throw std::invalid_argument("pair is not matched: j(B) is not closed under the bracket");
  MatchedData md;
  md.pair = &pair;
  const int a = pair.a, r = pair.r;
  md.cB.assign(r, Matrix(r, ScalarVec(r)));
  for (int m = 0; m < r; ++m)
    for (int k = 0; k < r; ++k)
      for (int l = 0; l < r; ++l) md.cB[m][k][l] = pair.cad[a + m][a + k][a + l];
  md.nablaA.assign(r, Matrix(a, ScalarVec(a)));
  for (int m = 0; m < r; ++m)
    for (int j = 0; j < a; ++j) {
      ScalarVec v = pair.bott_on_a(m, j);  // nabla_{b_m} a_j = sum_i v_i a_i
      for (int i = 0; i < a; ++i) md.nablaA[m][i][j] = -v[i];
    }
  std::vector<int> all(r);
  for (int m = 0; m < r; ++m) all[m] = m;
  md.UB = std::make_shared<Enveloping>(md.cB, all);
  return md;
}

Vec<Mask> bott_on_forms(const MatchedData& md, int m, Mask xi) {
  Vec<Mask> out;
  const int a = md.pair->a;
  for (Mask rest = xi; rest; rest &= rest - 1) {
    int i = std::countr_zero(rest);
    int s0 = front_sign(xi, i);
    Mask without = xi & ~(Mask(1) << i);
    for (int j = 0; j < a; ++j) {
      const Scalar& c = md.nablaA[m][i][j];
      if (sgn(c) == 0) continue;
      int s1 = merge_sign(Mask(1) << j, without);
      if (!s1) continue;
      add_term(out, without | (Mask(1) << j), c * s0 * s1);
    }
  }
  return out;
}

namespace {

// Generators of the odd-Poisson model: bits 0..a-1 are lambda^i, bits a..a+r-1 are b_m.
using Poly = Vec<Mask>;

Poly gen_bracket(const MatchedData& md, int x, int y) {
  const int a = md.pair->a, r = md.pair->r;
  Poly out;
  bool xb = x >= a, yb = y >= a;
  if (xb && yb) {
    for (int k = 0; k < r; ++k)
      if (sgn(md.cB[x - a][y - a][k]) != 0) add_term(out, Mask(1) << (a + k), md.cB[x - a][y - a][k]);
  } else if (xb && !yb) {
    for (const auto& [f, c] : bott_on_forms(md, x - a, Mask(1) << y)) add_term(out, f, c);
  } else if (!xb && yb) {
    for (const auto& [f, c] : bott_on_forms(md, y - a, Mask(1) << x)) add_term(out, f, -c);
  }
  return out;
}

Poly mul(const Poly& x, const Poly& y) {
  Poly out;
  for (const auto& [mx, cx] : x)
    for (const auto& [my, cy] : y) {
      int s = merge_sign(mx, my);
      if (s) add_term(out, mx | my, cx * cy * s);
    }
  return out;
}

// Biderivation of degree -1: [X, yY'] = [X,y]Y' + (-1)^{|X|-1} y[X,Y'],
// [xX', y] = x[X',y] + [x,y]X' for generators x, y of degree 1.
Poly bracket_mono(const MatchedData& md, Mask X, Mask Y) {
  if (!X || !Y) return {};
  if (popcount(Y) > 1) {
    int y = std::countr_zero(Y);
    Mask Yr = Y & (Y - 1);
    Poly out = mul(bracket_mono(md, X, Mask(1) << y), single(Yr));
    Poly second = mul(single(Mask(1) << y), bracket_mono(md, X, Yr));
    axpy(out, Scalar(parity_sign(popcount(X) - 1)), second);
    return out;
  }
  int y = std::countr_zero(Y);
  if (popcount(X) > 1) {
    int x = std::countr_zero(X);
    Mask Xr = X & (X - 1);
    Poly out = mul(single(Mask(1) << x), bracket_mono(md, Xr, Y));
    axpy(out, Scalar(1), mul(gen_bracket(md, x, y), single(Xr)));
    return out;
  }
  return gen_bracket(md, std::countr_zero(X), y);
}

}  // namespace

Vec<TSmallKey> direct_schouten(const MatchedData& md, const TSmallKey& x, const TSmallKey& y) {
  const int a = md.pair->a;
  Mask X = x.aMask | (x.coef << a), Y = y.aMask | (y.coef << a);
  Vec<TSmallKey> out;
  for (const auto& [m, c] : bracket_mono(md, X, Y))
    add_term(out, TSmallKey{m & ((Mask(1) << a) - 1), m >> a}, c);
  return out;
}

Vec<std::pair<Mask, MultiIndex>> ub_mul(const MatchedData& md, const MultiIndex& K, Mask eta, const MultiIndex& w) {
  using Key = std::pair<Mask, MultiIndex>;
  Vec<Key> cur = single(Key{eta, w});
  // b^K = b_0^{k_0} ... b_{r-1}^{k_{r-1}} acts from the right end first.
  for (int m = K.r - 1; m >= 0; --m)
    for (int t = 0; t < K[m]; ++t) {
      Vec<Key> next;
      for (const auto& [key, c] : cur) {
        for (const auto& [f, cf] : bott_on_forms(md, m, key.first)) add_term(next, Key{f, key.second}, c * cf);
        for (const auto& [u, cu] : md.UB->left_mul_gen(m, key.second)) add_term(next, Key{key.first, u}, c * cu);
      }
      cur = std::move(next);
    }
  return cur;
}

std::string to_string(SignConvention c) { return c == SignConvention::Literal ? "literal" : "koszul"; }

Vec<DSmallKey> direct_star(const MatchedData& md, const DSmallKey& x, const DSmallKey& y, SignConvention conv) {
  Vec<DSmallKey> out;
  const int u = arity(x), v = arity(y);
  const int r = md.pair->r;
  for (int k = 0; k <= u; ++k) {
    int sk = parity_sign(k * v);
    for (const auto& comp : compositions(x.K[k], v + 1 < 1 ? 1 : v + 1)) {
      if (v == -1) {
        // Inserting a function: only the counit part survives, d_k acting on eta.
        for (const auto& [key, c] : ub_mul(md, x.K[k], y.aMask, MultiIndex(r))) {
          if (!key.second.is_zero()) continue;
          int s = merge_sign(x.aMask, key.first);
          if (!s) continue;
          DSmallKey z{x.aMask | key.first, {}};
          for (int t = 0; t <= u; ++t)
            if (t != k) z.K.push_back(x.K[t]);
          add_term(out, z, c * s * sk);
        }
        continue;
      }
      // Slot 0 of y carries eta; the other slots multiply plainly in U(B).
      std::vector<UElem> rest;
      bool zero = false;
      for (int t = 1; t <= v; ++t) {
        rest.push_back(md.UB->mul_monomial(comp.parts[t], single(y.K[t])));
        if (rest.back().empty()) zero = true;
      }
      if (zero) continue;
      for (const auto& [key, c0] : ub_mul(md, comp.parts[0], y.aMask, y.K[0])) {
        int s = merge_sign(x.aMask, key.first);
        if (!s) continue;
        std::vector<UElem> slots;
        for (int t = 0; t < k; ++t) slots.push_back(single(x.K[t]));
        slots.push_back(single(key.second));
        for (const auto& w : rest) slots.push_back(w);
        for (int t = k + 1; t <= u; ++t) slots.push_back(single(x.K[t]));
        axpy(out, Scalar(1), tensor_slots(x.aMask | key.first, slots, comp.coeff * c0 * s * sk));
      }
    }
  }
  if (conv == SignConvention::Koszul && odd(u * popcount(y.aMask))) out = scaled(out, Scalar(-1));
  return out;
}

Vec<DSmallKey> direct_gerstenhaber(const MatchedData& md, const DSmallKey& x, const DSmallKey& y, SignConvention c) {
  const int u = arity(x), v = arity(y);
  Vec<DSmallKey> out = direct_star(md, x, y, c);
  int e = c == SignConvention::Literal ? u * v : degree(x) * degree(y);
  axpy(out, Scalar(-parity_sign(e)), direct_star(md, y, x, c));
  return out;
}

Vec<DSmallKey> to_quotient_basis(const MatchedData& md, const Enveloping& env, const Vec<DSmallKey>& x) {
  const LiePair& p = *md.pair;
  std::vector<ScalarVec> gens(p.r, ScalarVec(p.n));
  for (int m = 0; m < p.r; ++m)
    for (int k = 0; k < p.n; ++k) gens[m][k] = p.split[k][m];
  Vec<DSmallKey> out;
  for (const auto& [key, c] : x) {
    std::vector<UElem> slots;
    for (const auto& K : key.K) slots.push_back(convert_basis(single(K), env, gens));
    axpy(out, Scalar(1), tensor_slots(key.aMask, slots, c));
  }
  return out;
}

}  // namespace artifact
