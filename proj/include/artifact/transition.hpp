#pragma once
#include <map>
#include <string>
#include <vector>

#include "artifact/contraction_engine.hpp"
#include "artifact/pbw.hpp"

namespace artifact {

// Transition between two (j, nabla) choices on the same pair: psi = pbw_1^{-1} pbw_2 on S(B),
// its dual psi^v on S^(B^v) (an algebra automorphism for the evaluation pairing), and the
// induced push-forward of vertical polydifferential operators and polyvectors,
// D |-> psi^v o D o (psi^v)^{-1}, with Lambda L^v rewritten from adapted frame 1 to frame 2.
class Transition {
 public:
  // Series are kept exactly up to symmetric weight W; both PBW tables must reach W.
  Transition(const Pbw& p1, const Pbw& p2, int W);
  int max_weight() const { return W_; }
  int rank() const { return r_; }

  SymElem psi(const SymElem& s) const;
  SymElem psi_inv(const SymElem& s) const;
  // Functions on the fibre, keyed by chi^I.
  SymElem dual(const SymElem& f) const;
  SymElem dual_inv(const SymElem& f) const;
  // psi^v d^J (psi^v)^{-1} = sum c_{L,J'} chi^L d^{J'}, keyed by (L, J'); exact for |L| <= W - |J|.
  const Vec<std::pair<MultiIndex, MultiIndex>>& conj_slot(const MultiIndex& J) const;
  // lambda_1^l = sum_j M[l][j] lambda_2^j, M = Y_1^{-1} Y_2.
  Vec<Mask> convert_forms(Mask form) const;

  // Output keys are kept when f.keeps(|I|, order) and the coefficient is exact.
  PolyDiffOp push(const Frame& f, const PolyDiffOp& x) const;
  PolyVector push(const Frame& f, const PolyVector& x) const;

  // Negative control: psi^v precomposed with the fibre dilation chi -> c chi. Still an algebra
  // automorphism, but it rescales delta and so cannot intertwine the two differentials.
  Transition dilated(const Scalar& c) const;

 private:
  SymElem apply_sym(const Pbw& from, const Pbw& to, const SymElem& s) const;
  SymElem dual_monomial(const std::vector<SymElem>& gens, const MultiIndex& I,
                        std::map<MultiIndex, SymElem>& memo) const;
  SymElem mul(const SymElem& x, const SymElem& y) const;

  const Pbw* p1_;
  const Pbw* p2_;
  int W_;
  int r_;
  Matrix M_;
  std::vector<SymElem> dualGen_, dualInvGen_;
  mutable std::map<MultiIndex, SymElem> dualMemo_, dualInvMemo_;
  mutable std::map<MultiIndex, Vec<std::pair<MultiIndex, MultiIndex>>> conjMemo_;
};

// Linear part of the comparison L-infinity isomorphism: sigma_2 (id (x) psi^v_*) tau'_1 = id.
IdentityCheck check_linear_part(const Transition& t, const DContraction& c1, const DContraction& c2,
                                const FedosovData& fd2, const std::vector<DSmallKey>& basis);
IdentityCheck check_linear_part(const Transition& t, const TContraction& c1, const TContraction& c2,
                                const FedosovData& fd2, const std::vector<TSmallKey>& basis);
// (id (x) psi^v_*) [Q_1 + m, x] = [Q_2 + m, (id (x) psi^v_*) x], and the polyvector analogue
// with the Lie derivatives along Q_1, Q_2.
IdentityCheck check_intertwining(const Transition& t, const FedosovData& fd1, const FedosovData& fd2,
                                 const std::vector<PDKey>& basis);
IdentityCheck check_intertwining(const Transition& t, const FedosovData& fd1, const FedosovData& fd2,
                                 const std::vector<PVKey>& basis);
// Terms of psi^v_*(chi^I d^{J_0} ... d^{J_k}) of fibre weight <= |I| are exactly
// chi^I psi^{-1}(d^{J_0}) ... psi^{-1}(d^{J_k}). Inputs carry no forms.
IdentityCheck check_leading_term(const Transition& t, const Frame& f, const std::vector<PDKey>& basis);
// psi is a coalgebra map and <psi^v f, s> = <f, psi s>, on all weights <= w.
IdentityCheck check_psi_duality(const Transition& t, int w);

}  // namespace artifact
