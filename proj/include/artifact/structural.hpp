#pragma once
#include <vector>

#include "artifact/contraction_engine.hpp"
#include "artifact/matched.hpp"

namespace artifact {

// The flat connection nabla^flash_l dualized to a vertical vector field on S^(B^v):
// V_l chi_k = -sum_M <chi_k, nabla^flash_l d^M> chi^M / M!, kept to weight W.
// `l` is in original coordinates.
PolyVector flash_field(const Pbw& pbw, const ScalarVec& l, int W);

// pr_0 [V_a, d_j] = Bott_a d_j for every A-basis a and B-index j (polyvector bracket).
IdentityCheck check_flash_bott(const Pbw& pbw, const Frame& f);
// pr_0 [V_a, d^J] = nabla^flash_a(d^J) for |J| <= maxOrder (Gerstenhaber bracket).
IdentityCheck check_flash_pd(const Pbw& pbw, const Frame& f, int maxOrder);
// The A-form components of the Fedosov field rho agree with V_a: both describe nabla^flash.
IdentityCheck check_flash_fedosov(const FedosovData& fd, const Pbw& pbw);

// [rho, m] = 0, and [rho, [m, x]] + [m, [rho, x]] = 0 on `basis`.
IdentityCheck check_rho_m(const FedosovData& fd, const std::vector<PDKey>& basis);
// [m,-] and [-delta,-] square to zero and anticommute on `basis`.
IdentityCheck check_double_complex(const FedosovData& fd, const std::vector<PDKey>& basis);

// Morphism identities of tau' towards the direct matched structure (polyvector side):
// tau'(xi eta (x) b) = tau'(xi) tau'(eta (x) b), and tau' carries the direct Schouten
// brackets [xi (x) b, eta (x) c], [xi (x) b, eta] to the big ones.
std::vector<IdentityCheck> check_tau_morphism(const FedosovData& fd, const TContraction& c, const MatchedData& md);

}  // namespace artifact
