#pragma once
#include <memory>
#include <string>
#include <vector>

#include "artifact/pbw.hpp"

namespace artifact {

// Direct structures of a matched pair L = A |><| B: the dg Lie algebroid A[1] (+) B over
// A[1], with polyvectors Lambda A^v (x) Lambda^{.+1} B and polydifferential operators
// Lambda A^v (x) U(B)^{(x) .+1}.
struct MatchedData {
  const LiePair* pair = nullptr;
  Tensor3 cB;      // [b_m, b_n] = sum_k cB[m][n][k] b_k
  Tensor3 nablaA;  // nabla_{b_m} lambda^i = sum_j nablaA[m][i][j] lambda^j (dual of the B-action on A)
  std::shared_ptr<Enveloping> UB;  // U(B) in ordered monomials of b_0..b_{r-1}
};

bool matched_detect(const LiePair& pair);
// Throws std::invalid_argument when j(B) is not a subalgebra.
MatchedData matched_direct(const LiePair& pair);

// Bott action of b_m on Lambda A^v, extended as an even derivation.
Vec<Mask> bott_on_forms(const MatchedData& md, int m, Mask xi);

// Schouten bracket of Lambda A^v (x) Lambda B as the biderivation of degree -1 generated by
// [b_m, b_n], [b_m, lambda] = nabla_{b_m} lambda and [lambda, lambda'] = 0.
Vec<TSmallKey> direct_schouten(const MatchedData& md, const TSmallKey& x, const TSmallKey& y);

// Left multiplication in U(A[1] (+) B) = Lambda A^v (x) U(B): (1 (x) b^K) . (eta (x) w),
// the generators passing eta through the Bott action (shuffle formula).
Vec<std::pair<Mask, MultiIndex>> ub_mul(const MatchedData& md, const MultiIndex& K, Mask eta, const MultiIndex& w);

enum class SignConvention {
  Literal,  // phi * psi and [phi,psi] = phi*psi - (-1)^{uv} psi*phi with arities only
  Koszul    // additionally (-1)^{u|eta|} on insertion and total degrees in the bracket sign
};
std::string to_string(SignConvention c);

// Gerstenhaber star and bracket on Lambda A^v (x) U(B)^{(x) k+1}; keys carry U(B) monomials.
Vec<DSmallKey> direct_star(const MatchedData& md, const DSmallKey& x, const DSmallKey& y, SignConvention c);
Vec<DSmallKey> direct_gerstenhaber(const MatchedData& md, const DSmallKey& x, const DSmallKey& y, SignConvention c);

// U(B) monomials rewritten in the U/UA basis of `env`, slot by slot, via b_m -> j(b_m).
Vec<DSmallKey> to_quotient_basis(const MatchedData& md, const Enveloping& env, const Vec<DSmallKey>& x);

}  // namespace artifact
