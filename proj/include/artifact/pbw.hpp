#pragma once
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "artifact/lie_pair.hpp"

namespace artifact {

// Elements of S(B) in the basis d^J, and of U(L)/U(L)A in ordered monomials; both are
// sparse maps on multi-indices, kept apart by naming only.
using SymElem = Vec<MultiIndex>;
using UElem = Vec<MultiIndex>;

// Ordered-monomial normal form in U(g)/U(g)h for a basis g_0..g_{n-1} of g whose
// "dropped" generators span the subalgebra h. Monomials are exponents over the kept
// generators, in the order given. With no dropped generators this is U(g) itself.
class Enveloping {
 public:
  Enveloping(Tensor3 c, std::vector<int> kept);
  int rank() const { return static_cast<int>(kept_.size()); }
  int dim() const { return static_cast<int>(c_.size()); }
  const UElem& left_mul_gen(int g, const MultiIndex& K) const;
  UElem left_mul_gen(int g, const UElem& u) const;
  UElem left_mul(const ScalarVec& v, const UElem& u) const;  // v in this basis
  UElem mul_monomial(const MultiIndex& K, const UElem& u) const;
  UElem one() const { return single(MultiIndex(rank())); }

 private:
  Tensor3 c_;
  std::vector<int> kept_;
  std::vector<int> pos_;
  mutable std::map<std::pair<int, MultiIndex>, UElem> memo_;
};

// Rewrites a U/UA element from one PBW basis to another. gens[k] gives the k-th kept
// generator of the source in the target's basis coordinates.
UElem convert_basis(const UElem& u, const Enveloping& target, const std::vector<ScalarVec>& gens);

class Pbw {
 public:
  Pbw(const LiePair& pair, const Connection& conn, int maxWeight);
  const Enveloping& env() const { return *env_; }
  int max_weight() const { return W_; }
  const UElem& pbw(const MultiIndex& J) const;
  UElem pbw(const SymElem& s) const;
  SymElem pbw_inv(const UElem& u) const;
  // pbw^{-1}(l . pbw(s)), l in original coordinates.
  SymElem nabla_flash(const ScalarVec& l, const SymElem& s) const;
  // Left multiplication by j(d_m) on U/UA.
  UElem mul_j(int m, const UElem& u) const;
  const LiePair& pair() const { return *pair_; }

 private:
  const LiePair* pair_;
  Tensor3 gam_;  // adapted connection
  int W_;
  std::shared_ptr<Enveloping> env_;
  std::map<MultiIndex, UElem> table_;
};

// Small-space key on the polydifferential side: Lambda A^v (x) (U/UA)^{(x) k+1}.
struct DSmallKey {
  Mask aMask = 0;
  std::vector<MultiIndex> K;
  friend auto operator<=>(const DSmallKey&, const DSmallKey&) = default;
};
inline int arity(const DSmallKey& k) { return static_cast<int>(k.K.size()) - 1; }
int degree(const DSmallKey& k);
int order(const DSmallKey& k);  // total PBW order

Vec<DSmallKey> d_A_U(const LiePair& pair, const Enveloping& env, const DSmallKey& x);
// Hochschild coboundary on the U/UA tensor factor, untouched forms.
Vec<DSmallKey> hochschild_d(const DSmallKey& x);
// Coproduct on U/UA ordered monomials (binomial splitting).
std::vector<std::pair<std::pair<MultiIndex, MultiIndex>, Scalar>> u_coproduct(const MultiIndex& K);

// Tensor product of U/UA elements, slot by slot, keeping aMask.
Vec<DSmallKey> tensor_slots(Mask aMask, const std::vector<UElem>& slots, const Scalar& c = Scalar(1));

}  // namespace artifact
