#pragma once
#include <vector>

#include "artifact/big_keys.hpp"
#include "artifact/pbw.hpp"
#include "artifact/weyl_fedosov.hpp"

namespace artifact {

// Schouten bracket of formal vertical polyvector fields with Lambda L^v coefficients:
// [w (x) P, e (x) Q] = (-1)^{|P||e|} w^e (x) [P,Q].
PolyVector schouten(const Frame& f, const PolyVector& x, const PolyVector& y, TruncationFlag* flag = nullptr);
PolyVector wedge_pv(const Frame& f, const PolyVector& x, const PolyVector& y, TruncationFlag* flag = nullptr);
PolyVector lie_derivative_Q(const FedosovData& fd, const PolyVector& x);
PolyVector lie_derivative_rho(const FedosovData& fd, const PolyVector& x);

// phi-representation: chi^I (x) d^{J_0} (x) ... acting by chi^I d^{J_0}(f_0) ... d^{J_k}(f_k).
SymElem phi_apply(const Frame& f, const PDKey& op, const std::vector<SymElem>& inputs);
PolyDiffOp star(const Frame& f, const PolyDiffOp& x, const PolyDiffOp& y, TruncationFlag* flag = nullptr);
PolyDiffOp gerstenhaber(const Frame& f, const PolyDiffOp& x, const PolyDiffOp& y, TruncationFlag* flag = nullptr);
PolyDiffOp mult_element(const Frame& f);
PolyDiffOp field_to_pd(const PolyVector& v);  // arity-0 polyvectors as first-order operators
// Literal coalgebra Hochschild coboundary on the S(B) slots; forms and chi untouched.
PolyDiffOp hochschild_d(const Frame& f, const PolyDiffOp& x);
PolyDiffOp bracket_m(const Frame& f, const PolyDiffOp& x);  // [1 (x) m, -]
PolyDiffOp bracket_Q_plus_m(const FedosovData& fd, const PolyDiffOp& x);
PolyDiffOp bracket_rho(const FedosovData& fd, const PolyDiffOp& x);

// Polyvector to the skew-symmetrized multiderivation, and back.
PolyDiffOp hkr(const PolyVector& x);
PolyVector hkr_inv(const PolyDiffOp& x);

// Cup products on the small spaces.
Vec<TSmallKey> cup(const TSmallKey& x, const TSmallKey& y);
Vec<DSmallKey> cup(const DSmallKey& x, const DSmallKey& y);

}  // namespace artifact
