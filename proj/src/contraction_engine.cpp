#include "artifact/contraction_engine.hpp"
#include <algorithm>

#include "artifact/poly_structures.hpp"

namespace artifact {

// Each h rho step raises the filtration by one; excess starts no lower than minus the input
// order, so 3N + n + 1 steps cover every input the checks feed in.
int series_bound(const FedosovData& fd) { return 3 * fd.frame.N + fd.pair->n + 1; }

TContraction instantiate_tpoly_base(const FedosovData& fd, bool scaledH) {
  const Frame f = fd.frame;
  TContraction c;
  c.name = "tpoly";
  c.sigma = [f](const PVKey& k) {
    Vec<TSmallKey> out;
    if (sigma_keeps(f, k.w)) add_term(out, TSmallKey{k.w.form, k.coef}, Scalar(1));
    return out;
  };
  c.tau = [f](const TSmallKey& s) { return single(PVKey{Word{s.aMask, MultiIndex(f.r)}, s.coef}); };
  c.h = memoize<PVKey, PVKey>([f, scaledH](const PVKey& k) { return h_tilde(f, single(k), nullptr, scaledH); });
  c.D = [f](const PVKey& k) { return scaled(delta_tilde(f, single(k)), Scalar(-1)); };
  c.d = [](const TSmallKey&) { return Vec<TSmallKey>{}; };
  c.comparable = [f](const PVKey& k, int slack) { return k.w.I.weight() <= f.N - slack; };
  return c;
}

DContraction instantiate_dpoly_base(const FedosovData& fd, const Pbw& pbw, bool scaledH) {
  const Frame f = fd.dframe;
  const Pbw* pb = &pbw;
  DContraction c;
  c.name = "dpoly";
  c.sigma = memoize<DSmallKey, PDKey>([f, pb](const PDKey& k) {
    if (!sigma_keeps(f, k.w)) return Vec<DSmallKey>{};
    std::vector<UElem> slots;
    for (const auto& J : k.J) slots.push_back(pb->pbw(J));
    return tensor_slots(k.w.form, slots);
  });
  c.tau = memoize<PDKey, DSmallKey>([f, pb](const DSmallKey& s) {
    PolyDiffOp acc;
    PDKey start;
    start.w = Word{s.aMask, MultiIndex(f.r)};
    acc[start] = 1;
    for (const auto& K : s.K) {
      SymElem slot = pb->pbw_inv(single(K));
      PolyDiffOp next;
      for (const auto& [key, x] : acc)
        for (const auto& [J, y] : slot) {
          PDKey k2 = key;
          k2.J.push_back(J);
          add_term(next, k2, x * y);
        }
      acc = std::move(next);
    }
    return acc;
  });
  c.h = memoize<PDKey, PDKey>([f, scaledH](const PDKey& k) { return h_tilde(f, single(k), nullptr, scaledH); });
  c.D = memoize<PDKey, PDKey>([f](const PDKey& k) {
    auto v = bracket_m(f, single(k));
    axpy(v, Scalar(-1), delta_tilde(f, single(k)));
    return v;
  });
  auto sigma = c.sigma;
  auto tau = c.tau;
  c.d = memoize<DSmallKey, DSmallKey>(
      [f, sigma, tau](const DSmallKey& s) { return apply_op(sigma, bracket_m(f, tau(s))); });
  c.comparable = [f](const PDKey& k, int slack) { return k.w.I.weight() - key_order(k) <= f.N - slack; };
  c.bigSlack = [](const PDKey& k) { return std::max(0, key_order(k) - k.w.I.weight()); };
  c.smallSlack = [](const DSmallKey& s) { return order(s); };
  return c;
}

KeyOp<PVKey> tpoly_rho(const FedosovData& fd) {
  const FedosovData* p = &fd;
  return [p](const PVKey& k) { return lie_derivative_rho(*p, single(k)); };
}

KeyOp<PDKey> dpoly_rho(const FedosovData& fd) {
  const FedosovData* p = &fd;
  return [p](const PDKey& k) { return bracket_rho(*p, single(k)); };
}

TContraction instantiate_tpoly(const FedosovData& fd) {
  return perturb(instantiate_tpoly_base(fd), tpoly_rho(fd), series_bound(fd));
}

DContraction instantiate_dpoly(const FedosovData& fd, const Pbw& pbw) {
  return perturb(instantiate_dpoly_base(fd, pbw), dpoly_rho(fd), series_bound(fd));
}

std::vector<TSmallKey> tsmall_basis(const Frame& f) {
  std::vector<TSmallKey> out;
  for (Mask coef = 0; coef < (Mask(1) << f.r); ++coef)
    for (Mask a = 0; a < (Mask(1) << f.a); ++a) out.push_back({a, coef});
  return out;
}

static void slot_tuples(int r, int slots, int maxSlot, int maxTotal, std::vector<MultiIndex>& cur,
                        std::vector<std::vector<MultiIndex>>& out) {
  if (static_cast<int>(cur.size()) == slots) {
    out.push_back(cur);
    return;
  }
  int used = 0;
  for (const auto& K : cur) used += K.weight();
  for (const auto& K : indices_up_to(r, std::min(maxSlot, maxTotal - used))) {
    cur.push_back(K);
    slot_tuples(r, slots, maxSlot, maxTotal, cur, out);
    cur.pop_back();
  }
}

Vec<DSmallKey> dpoly_small_differential(const LiePair& p, const Enveloping& env, const DSmallKey& x) {
  Vec<DSmallKey> out = d_A_U(p, env, x);
  axpy(out, Scalar(parity_sign(popcount(x.aMask) + arity(x))), hochschild_d(x));
  return out;
}

std::vector<DSmallKey> dsmall_basis(const Frame& f, int maxArity, int maxSlotOrder, int maxTotalOrder) {
  std::vector<DSmallKey> out;
  for (int k = -1; k <= maxArity; ++k) {
    std::vector<std::vector<MultiIndex>> tuples;
    std::vector<MultiIndex> cur;
    slot_tuples(f.r, k + 1, maxSlotOrder, maxTotalOrder, cur, tuples);
    for (const auto& t : tuples)
      for (Mask a = 0; a < (Mask(1) << f.a); ++a) out.push_back({a, t});
  }
  return out;
}

std::vector<Word> word_basis(const Frame& f, int maxWeight) {
  std::vector<Word> out;
  for (const auto& I : indices_up_to(f.r, maxWeight))
    for (Mask form = 0; form < (Mask(1) << f.n()); ++form) out.push_back({form, I});
  return out;
}

std::vector<PVKey> tbig_basis(const Frame& f, int maxWeight) {
  std::vector<PVKey> out;
  for (const auto& w : word_basis(f, maxWeight))
    for (Mask coef = 0; coef < (Mask(1) << f.r); ++coef) out.push_back({w, coef});
  return out;
}

std::vector<PDKey> dbig_basis(const Frame& f, int maxWeight, int maxArity, int maxSlotOrder) {
  std::vector<PDKey> out;
  for (int k = -1; k <= maxArity; ++k) {
    std::vector<std::vector<MultiIndex>> tuples;
    std::vector<MultiIndex> cur;
    slot_tuples(f.r, k + 1, maxSlotOrder, 1 << 20, cur, tuples);
    for (const auto& w : word_basis(f, maxWeight))
      for (const auto& t : tuples) out.push_back({w, t});
  }
  return out;
}

static std::string mask_str(Mask m, const char* prefix) {
  std::string s;
  for (int i = 0; m >> i; ++i)
    if (m >> i & 1) s += (s.empty() ? "" : "^") + std::string(prefix) + std::to_string(i);
  return s.empty() ? "1" : s;
}

std::string show_key(const Frame& f, const PVKey& k) { return word_string(f, k.w) + " (x) " + mask_str(k.coef, "d"); }

std::string show_key(const Frame& f, const PDKey& k) {
  std::string s = word_string(f, k.w) + " (x) ";
  if (k.J.empty()) return s + "[]";
  for (std::size_t i = 0; i < k.J.size(); ++i) s += (i ? "|" : "") + k.J[i].str();
  return s;
}

std::string show_key(const Frame&, const TSmallKey& k) { return mask_str(k.aMask, "a") + " (x) " + mask_str(k.coef, "d"); }

std::string show_key(const Frame&, const DSmallKey& k) {
  std::string s = mask_str(k.aMask, "a") + " (x) ";
  if (k.K.empty()) return s + "[]";
  for (std::size_t i = 0; i < k.K.size(); ++i) s += (i ? "|" : "") + k.K[i].str();
  return s;
}

}  // namespace artifact
