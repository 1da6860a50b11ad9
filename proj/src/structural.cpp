#include "artifact/structural.hpp"

#include <algorithm>

#include "artifact/poly_structures.hpp"

namespace artifact {

namespace {

void note_failure(IdentityCheck& chk, const std::string& witness) {
  if (!chk.failures) chk.witness = witness;
  ++chk.failures;
}

PolyVector vertical_unit(int r, int k) { return single(PVKey{Word{0, MultiIndex(r)}, Mask(1) << k}); }

template <class K>
Vec<K> constant_part(const Vec<K>& x) {
  return filtered(x, [](const K& k) { return k.w.I.is_zero() && k.w.form == 0; });
}

PolyDiffOp as_slot(const SymElem& s) {
  PolyDiffOp out;
  for (const auto& [J, c] : s) add_term(out, PDKey{Word{0, MultiIndex(J.r)}, {J}}, c);
  return out;
}

int input_slack(const PDKey& x) { return std::max(0, key_order(x) - x.w.I.weight()); }

bool vanishes_below(const PolyDiffOp& x, int bound) {
  for (const auto& [k, c] : x)
    if (k.w.I.weight() - key_order(k) <= bound) return false;
  return true;
}

}  // namespace

PolyVector flash_field(const Pbw& pbw, const ScalarVec& l, int W) {
  const int r = pbw.pair().r;
  PolyVector out;
  for (const auto& M : indices_up_to(r, W)) {
    const SymElem s = pbw.nabla_flash(l, single(M));
    for (int k = 0; k < r; ++k)
      if (auto it = s.find(MultiIndex::unit(r, k)); it != s.end())
        add_term(out, PVKey{Word{0, M}, Mask(1) << k}, -it->second / M.factorial());
  }
  return out;
}

IdentityCheck check_flash_bott(const Pbw& pbw, const Frame& f) {
  IdentityCheck chk("pr_0 [nabla_a, d_j] = Bott_a d_j");
  const LiePair& p = pbw.pair();
  for (int i = 0; i < p.a; ++i) {
    const PolyVector V = flash_field(pbw, p.basis_vector(p.aIdx[i]), 2);
    for (int j = 0; j < p.r; ++j) {
      ++chk.checked;
      PolyVector got = constant_part(schouten(f, V, vertical_unit(p.r, j)));
      PolyVector want;
      const ScalarVec b = p.bott(i, j);
      for (int k = 0; k < p.r; ++k) axpy(want, b[k], vertical_unit(p.r, k));
      if (!difference(got, want).empty()) note_failure(chk, "a" + std::to_string(i) + ", d" + std::to_string(j));
    }
  }
  return chk;
}

IdentityCheck check_flash_pd(const Pbw& pbw, const Frame& f, int maxOrder) {
  IdentityCheck chk("pr_0 [nabla_a, d^J] = nabla_a(d^J)");
  const LiePair& p = pbw.pair();
  for (int i = 0; i < p.a; ++i) {
    const ScalarVec a = p.basis_vector(p.aIdx[i]);
    const PolyDiffOp V = field_to_pd(flash_field(pbw, a, maxOrder + 1));
    for (const auto& J : indices_up_to(p.r, maxOrder)) {
      ++chk.checked;
      PolyDiffOp got = constant_part(gerstenhaber(f, V, single(PDKey{Word{0, MultiIndex(p.r)}, {J}})));
      PolyDiffOp want = as_slot(pbw.nabla_flash(a, single(J)));
      if (!difference(got, want).empty()) note_failure(chk, "a" + std::to_string(i) + ", d^" + J.str());
    }
  }
  return chk;
}

IdentityCheck check_flash_fedosov(const FedosovData& fd, const Pbw& pbw) {
  IdentityCheck chk("A-components of rho = dual of nabla^flash");
  const LiePair& p = *fd.pair;
  const PolyVector rho = fd.rho();
  for (int i = 0; i < p.a; ++i) {
    ++chk.checked;
    PolyVector got;
    for (const auto& [k, c] : rho)
      if (k.w.form == (Mask(1) << i) && k.w.I.weight() <= fd.frame.N)
        add_term(got, PVKey{Word{0, k.w.I}, k.coef}, c);
    PolyVector want = flash_field(pbw, p.basis_vector(p.aIdx[i]), fd.frame.N);
    if (!difference(got, want).empty()) note_failure(chk, "a" + std::to_string(i));
  }
  return chk;
}

IdentityCheck check_rho_m(const FedosovData& fd, const std::vector<PDKey>& basis) {
  IdentityCheck chk("[rho, m] = 0 and [rho, -] commutes with the signed [m, -]");
  const Frame& f = fd.dframe;
  ++chk.checked;
  if (!vanishes_below(bracket_rho(fd, mult_element(f)), f.N - 1)) note_failure(chk, "[rho, m]");
  for (const auto& x : basis) {
    ++chk.checked;
    PolyDiffOp v = bracket_rho(fd, bracket_m(f, single(x)));
    axpy(v, Scalar(1), bracket_m(f, bracket_rho(fd, single(x))));
    if (!vanishes_below(v, f.N - 1 - input_slack(x))) note_failure(chk, show_key(fd.frame, x));
  }
  return chk;
}

IdentityCheck check_double_complex(const FedosovData& fd, const std::vector<PDKey>& basis) {
  IdentityCheck chk("[m,-] and [-delta,-] form a double complex");
  const Frame& f = fd.dframe;
  const PolyDiffOp minusDelta = field_to_pd(scaled(fd.deltaField, Scalar(-1)));
  auto d = [&](const PolyDiffOp& x) { return gerstenhaber(f, minusDelta, x); };
  auto m = [&](const PolyDiffOp& x) { return bracket_m(f, x); };
  for (const auto& x : basis) {
    ++chk.checked;
    const PolyDiffOp e = single(x);
    PolyDiffOp anti = d(m(e));
    axpy(anti, Scalar(1), m(d(e)));
    const int bound = f.N - 2 - input_slack(x);
    if (!vanishes_below(anti, bound) || !vanishes_below(m(m(e)), bound) || !vanishes_below(d(d(e)), bound))
      note_failure(chk, show_key(fd.frame, x));
  }
  return chk;
}

std::vector<IdentityCheck> check_tau_morphism(const FedosovData& fd, const TContraction& c, const MatchedData& md) {
  const Frame& f = fd.frame;
  const LiePair& p = *fd.pair;
  auto low = [&](const PolyVector& x) {
    return filtered(x, [&](const PVKey& k) { return k.w.I.weight() <= f.N - 1; });
  };
  auto tau = [&](const Vec<TSmallKey>& x) { return apply_op(c.tau, x); };
  std::vector<TSmallKey> fns, fields;
  for (Mask xi = 0; xi < (Mask(1) << p.a); ++xi) {
    fns.push_back(TSmallKey{xi, 0});
    for (int b = 0; b < p.r; ++b) fields.push_back(TSmallKey{xi, Mask(1) << b});
  }
  IdentityCheck product("tau'(xi eta (x) b) = tau'(xi) tau'(eta (x) b)");
  IdentityCheck fieldField("[tau'(xi (x) b), tau'(eta (x) c)] = tau'[xi (x) b, eta (x) c]");
  IdentityCheck fieldFn("[tau'(xi (x) b), tau'(eta)] = tau'[xi (x) b, eta]");
  auto show2 = [&](const TSmallKey& x, const TSmallKey& y) { return show_key(f, x) + " , " + show_key(f, y); };
  for (const auto& xi : fns)
    for (const auto& y : fields) {
      ++product.checked;
      auto lhs = low(tau(cup(xi, y)));
      auto rhs = low(wedge_pv(f, c.tau(xi), c.tau(y)));
      if (!difference(lhs, rhs).empty()) note_failure(product, show2(xi, y));
    }
  for (const auto& x : fields) {
    for (const auto& y : fields) {
      ++fieldField.checked;
      auto lhs = low(schouten(f, c.tau(x), c.tau(y)));
      auto rhs = low(tau(direct_schouten(md, x, y)));
      if (!difference(lhs, rhs).empty()) note_failure(fieldField, show2(x, y));
    }
    for (const auto& eta : fns) {
      ++fieldFn.checked;
      auto lhs = low(schouten(f, c.tau(x), c.tau(eta)));
      auto rhs = low(tau(direct_schouten(md, x, eta)));
      if (!difference(lhs, rhs).empty()) note_failure(fieldFn, show2(x, eta));
    }
  }
  return {product, fieldField, fieldFn};
}

}  // namespace artifact
