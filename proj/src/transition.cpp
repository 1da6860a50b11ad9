#include "artifact/transition.hpp"

#include <stdexcept>

#include "artifact/poly_structures.hpp"

namespace artifact {

namespace {

Matrix matmul(const Matrix& x, const Matrix& y) {
  const std::size_t n = x.size(), m = y.empty() ? 0 : y[0].size();
  Matrix out(n, ScalarVec(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < y.size(); ++k) {
      if (sgn(x[i][k]) == 0) continue;
      for (std::size_t j = 0; j < m; ++j) out[i][j] += x[i][k] * y[k][j];
    }
  return out;
}

// d^J acting on a function of the fibre.
SymElem derive(const MultiIndex& J, const SymElem& g) {
  SymElem out;
  for (const auto& [K, c] : g) {
    Scalar fall = falling(K, J);
    if (sgn(fall) != 0) add_term(out, K - J, c * fall);
  }
  return out;
}

int total_order(const std::vector<MultiIndex>& J) {
  int s = 0;
  for (const auto& j : J) s += j.weight();
  return s;
}

void note_failure(IdentityCheck& chk, const std::string& witness) {
  if (!chk.failures) chk.witness = witness;
  ++chk.failures;
}

}  // namespace

Transition::Transition(const Pbw& p1, const Pbw& p2, int W) : p1_(&p1), p2_(&p2), W_(W) {
  const LiePair& a = p1.pair();
  const LiePair& b = p2.pair();
  if (a.n != b.n || a.aIdx != b.aIdx || a.cIdx != b.cIdx || a.spec.bracket != b.spec.bracket)
    throw std::invalid_argument("transition: the two choices live on different pairs");
  if (W > p1.max_weight() || W > p2.max_weight()) throw std::out_of_range("transition: PBW tables too short");
  r_ = a.r;
  M_ = matmul(a.Yinv, b.Y);
  // <psi^v chi_m, d^K> = <chi_m, psi d^K>, and <chi^K, d^K> = K!.
  dualGen_.assign(r_, {});
  dualInvGen_.assign(r_, {});
  for (const auto& K : indices_up_to(r_, W)) {
    if (K.is_zero()) continue;
    SymElem fwd = psi(single(K)), bwd = psi_inv(single(K));
    for (int m = 0; m < r_; ++m) {
      MultiIndex e = MultiIndex::unit(r_, m);
      if (auto it = fwd.find(e); it != fwd.end()) add_term(dualGen_[m], K, it->second / K.factorial());
      if (auto it = bwd.find(e); it != bwd.end()) add_term(dualInvGen_[m], K, it->second / K.factorial());
    }
  }
}

Transition Transition::dilated(const Scalar& c) const {
  Transition t = *this;
  t.dualMemo_.clear();
  t.dualInvMemo_.clear();
  t.conjMemo_.clear();
  for (auto& g : t.dualGen_) g = scaled(g, c);
  for (auto& g : t.dualInvGen_) {
    SymElem h;
    for (const auto& [K, v] : g) {
      Scalar pw(1);
      for (int i = 0; i < K.weight(); ++i) pw /= c;
      add_term(h, K, v * pw);
    }
    g = std::move(h);
  }
  return t;
}

SymElem Transition::apply_sym(const Pbw& from, const Pbw& to, const SymElem& s) const {
  return to.pbw_inv(from.pbw(s));
}

SymElem Transition::psi(const SymElem& s) const { return apply_sym(*p2_, *p1_, s); }
SymElem Transition::psi_inv(const SymElem& s) const { return apply_sym(*p1_, *p2_, s); }

SymElem Transition::mul(const SymElem& x, const SymElem& y) const {
  SymElem out;
  for (const auto& [A, ca] : x)
    for (const auto& [B, cb] : y)
      if (A.weight() + B.weight() <= W_) add_term(out, A + B, ca * cb);
  return out;
}

SymElem Transition::dual_monomial(const std::vector<SymElem>& gens, const MultiIndex& I,
                                  std::map<MultiIndex, SymElem>& memo) const {
  if (auto it = memo.find(I); it != memo.end()) return it->second;
  SymElem v;
  if (I.is_zero()) {
    v = single(I);
  } else {
    int m = 0;
    while (I[m] == 0) ++m;
    v = mul(gens[m], dual_monomial(gens, I - MultiIndex::unit(r_, m), memo));
  }
  return memo.emplace(I, v).first->second;
}

SymElem Transition::dual(const SymElem& f) const {
  SymElem out;
  for (const auto& [I, c] : f)
    if (I.weight() <= W_) axpy(out, c, dual_monomial(dualGen_, I, dualMemo_));
  return out;
}

SymElem Transition::dual_inv(const SymElem& f) const {
  SymElem out;
  for (const auto& [I, c] : f)
    if (I.weight() <= W_) axpy(out, c, dual_monomial(dualInvGen_, I, dualInvMemo_));
  return out;
}

const Vec<std::pair<MultiIndex, MultiIndex>>& Transition::conj_slot(const MultiIndex& J) const {
  if (auto it = conjMemo_.find(J); it != conjMemo_.end()) return it->second;
  // Order is preserved by conjugation, so the coefficients c_{J'}, |J'| <= |J|, follow from
  // the values on chi^K, |K| <= |J|, by a triangular solve in the partial order.
  std::map<MultiIndex, SymElem> c;
  for (const auto& K : indices_up_to(r_, J.weight())) {
    SymElem e = dual(derive(J, dual_inv(single(K))));
    for (const auto& [Jp, cJp] : c) {
      if (!Jp.precedes(K)) continue;
      axpy(e, -falling(K, Jp), mul(cJp, single(K - Jp)));
    }
    c[K] = scaled(e, Scalar(1) / K.factorial());
  }
  Vec<std::pair<MultiIndex, MultiIndex>> out;
  for (const auto& [Jp, cJp] : c)
    for (const auto& [L, v] : cJp)
      if (L.weight() <= W_ - J.weight()) add_term(out, std::pair{L, Jp}, v);
  return conjMemo_.emplace(J, std::move(out)).first->second;
}

Vec<Mask> Transition::convert_forms(Mask form) const {
  Vec<Mask> acc = single(Mask(0));
  const int n = static_cast<int>(M_.size());
  for (Mask rest = form; rest; rest &= rest - 1) {
    int l = std::countr_zero(rest);
    Vec<Mask> next;
    for (const auto& [m, c] : acc)
      for (int j = 0; j < n; ++j) {
        if (sgn(M_[l][j]) == 0) continue;
        int s = merge_sign(m, Mask(1) << j);
        if (s) add_term(next, m | (Mask(1) << j), c * M_[l][j] * s);
      }
    acc = std::move(next);
  }
  return acc;
}

PolyDiffOp Transition::push(const Frame& f, const PolyDiffOp& x) const {
  using Partial = std::pair<MultiIndex, std::vector<MultiIndex>>;
  PolyDiffOp out;
  for (const auto& [k, c] : x) {
    const int exact = W_ - total_order(k.J);
    std::map<Partial, Scalar> acc;
    for (const auto& [L, v] : dual(single(k.w.I)))
      if (L.weight() <= exact) acc[{L, {}}] += v;
    for (const auto& J : k.J) {
      std::map<Partial, Scalar> next;
      const auto& slot = conj_slot(J);
      for (const auto& [p, v] : acc)
        for (const auto& [lj, w] : slot) {
          MultiIndex L = p.first + lj.first;
          if (L.weight() > exact) continue;
          auto Js = p.second;
          Js.push_back(lj.second);
          next[{L, Js}] += v * w;
        }
      acc = std::move(next);
    }
    const Vec<Mask> forms = convert_forms(k.w.form);
    for (const auto& [p, v] : acc) {
      if (sgn(v) == 0 || !f.keeps(p.first.weight(), total_order(p.second))) continue;
      for (const auto& [fm, cf] : forms) add_term(out, PDKey{Word{fm, p.first}, p.second}, c * v * cf);
    }
  }
  return out;
}

PolyVector Transition::push(const Frame& f, const PolyVector& x) const { return hkr_inv(push(f, hkr(x))); }

IdentityCheck check_linear_part(const Transition& t, const DContraction& c1, const DContraction& c2,
                                const FedosovData& fd2, const std::vector<DSmallKey>& basis) {
  IdentityCheck chk{"sigma_2 psi_* tau'_1 = id (polydifferential)"};
  for (const auto& s : basis) {
    ++chk.checked;
    auto v = apply_op(c2.sigma, t.push(fd2.dframe, c1.tau(s)));
    if (!difference(v, single(s)).empty()) note_failure(chk, show_key(fd2.frame, s));
  }
  return chk;
}

IdentityCheck check_linear_part(const Transition& t, const TContraction& c1, const TContraction& c2,
                                const FedosovData& fd2, const std::vector<TSmallKey>& basis) {
  IdentityCheck chk{"sigma_2 psi_* tau'_1 = id (polyvector)"};
  for (const auto& s : basis) {
    ++chk.checked;
    auto v = apply_op(c2.sigma, t.push(fd2.frame, c1.tau(s)));
    if (!difference(v, single(s)).empty()) note_failure(chk, show_key(fd2.frame, s));
  }
  return chk;
}

IdentityCheck check_intertwining(const Transition& t, const FedosovData& fd1, const FedosovData& fd2,
                                 const std::vector<PDKey>& basis) {
  IdentityCheck chk{"psi_* [Q_1 + m, -] = [Q_2 + m, -] psi_*"};
  const Frame& f = fd2.dframe;
  for (const auto& x : basis) {
    ++chk.checked;
    const int bound = f.N - 1 - std::max(0, key_order(x) - x.w.I.weight());
    auto lhs = t.push(f, bracket_Q_plus_m(fd1, single(x)));
    auto rhs = bracket_Q_plus_m(fd2, t.push(f, single(x)));
    auto diff = filtered(difference(lhs, rhs),
                         [&](const PDKey& k) { return k.w.I.weight() - key_order(k) <= bound; });
    if (!diff.empty()) note_failure(chk, show_key(fd1.frame, x));
  }
  return chk;
}

IdentityCheck check_intertwining(const Transition& t, const FedosovData& fd1, const FedosovData& fd2,
                                 const std::vector<PVKey>& basis) {
  IdentityCheck chk{"psi_* L_{Q_1} = L_{Q_2} psi_*"};
  const Frame& f = fd2.frame;
  for (const auto& x : basis) {
    ++chk.checked;
    auto lhs = t.push(f, lie_derivative_Q(fd1, single(x)));
    auto rhs = lie_derivative_Q(fd2, t.push(f, single(x)));
    auto diff = filtered(difference(lhs, rhs), [&](const PVKey& k) { return k.w.I.weight() <= f.N - 1; });
    if (!diff.empty()) note_failure(chk, show_key(fd1.frame, x));
  }
  return chk;
}

IdentityCheck check_leading_term(const Transition& t, const Frame& f, const std::vector<PDKey>& basis) {
  IdentityCheck chk{"leading term of psi_*"};
  for (const auto& x : basis) {
    if (x.w.form != 0) continue;
    ++chk.checked;
    const int w = x.w.I.weight();
    auto got = filtered(t.push(f, single(x)), [&](const PDKey& k) { return k.w.I.weight() <= w; });
    std::map<std::vector<MultiIndex>, Scalar> acc{{{}, Scalar(1)}};
    for (const auto& J : x.J) {
      std::map<std::vector<MultiIndex>, Scalar> next;
      for (const auto& [Js, v] : acc)
        for (const auto& [Jp, c] : t.psi_inv(single(J))) {
          auto K = Js;
          K.push_back(Jp);
          next[K] += v * c;
        }
      acc = std::move(next);
    }
    PolyDiffOp want;
    for (const auto& [Js, v] : acc) add_term(want, PDKey{Word{0, x.w.I}, Js}, v);
    if (!difference(got, want).empty()) note_failure(chk, show_key(f, x));
  }
  return chk;
}

IdentityCheck check_psi_duality(const Transition& t, int w) {
  IdentityCheck chk{"psi coalgebra map, psi^v dual algebra map"};
  using Pair = std::pair<MultiIndex, MultiIndex>;
  const int r = t.rank();
  for (const auto& K : indices_up_to(r, w)) {
    ++chk.checked;
    const SymElem s = t.psi(single(K));
    Vec<Pair> lhs, rhs;
    for (const auto& [J, c] : s)
      for (const auto& term : sym_comul(J)) add_term(lhs, Pair{term.left, term.right}, c * term.coeff);
    for (const auto& term : sym_comul(K))
      for (const auto& [A, ca] : t.psi(single(term.left)))
        for (const auto& [B, cb] : t.psi(single(term.right))) add_term(rhs, Pair{A, B}, term.coeff * ca * cb);
    bool ok = difference(lhs, rhs).empty();
    for (const auto& I : indices_up_to(r, w)) {
      const SymElem d = t.dual(single(I));
      auto it = d.find(K);
      Scalar left = it == d.end() ? Scalar(0) : it->second * K.factorial();
      auto jt = s.find(I);
      Scalar right = jt == s.end() ? Scalar(0) : jt->second * I.factorial();
      if (left != right) ok = false;
    }
    const SymElem back = filtered(t.dual_inv(t.dual(single(K))),
                                  [&](const MultiIndex& L) { return L.weight() <= t.max_weight(); });
    if (!difference(back, single(K)).empty()) ok = false;
    if (!ok) note_failure(chk, "d^" + K.str());
  }
  return chk;
}

}  // namespace artifact
