#include "artifact/pbw.hpp"

#include <stdexcept>

namespace artifact {

Enveloping::Enveloping(Tensor3 c, std::vector<int> kept) : c_(std::move(c)), kept_(std::move(kept)) {
  pos_.assign(c_.size(), -1);
  for (int i = 0; i < rank(); ++i) pos_[kept_[i]] = i;
}

const UElem& Enveloping::left_mul_gen(int g, const MultiIndex& K) const {
  auto key = std::make_pair(g, K);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  UElem out;
  int first = -1;
  for (int i = 0; i < rank(); ++i)
    if (K[i] > 0) {
      first = i;
      break;
    }
  if (first < 0) {
    if (pos_[g] >= 0) add_term(out, MultiIndex::unit(rank(), pos_[g]), Scalar(1));
  } else if (pos_[g] >= 0 && pos_[g] <= first) {
    add_term(out, K + MultiIndex::unit(rank(), pos_[g]), Scalar(1));
  } else {
    // g y rest = y (g rest) + [g,y] rest
    MultiIndex rest = K - MultiIndex::unit(rank(), first);
    int y = kept_[first];
    UElem inner = left_mul_gen(g, rest);
    out = left_mul_gen(y, inner);
    for (int k = 0; k < dim(); ++k)
      if (sgn(c_[g][y][k]) != 0) axpy(out, c_[g][y][k], left_mul_gen(k, rest));
  }
  return memo_.emplace(key, std::move(out)).first->second;
}

UElem Enveloping::left_mul_gen(int g, const UElem& u) const {
  UElem out;
  for (const auto& [K, c] : u) axpy(out, c, left_mul_gen(g, K));
  return out;
}

UElem Enveloping::left_mul(const ScalarVec& v, const UElem& u) const {
  UElem out;
  for (int g = 0; g < dim(); ++g)
    if (sgn(v[g]) != 0) axpy(out, v[g], left_mul_gen(g, u));
  return out;
}

UElem Enveloping::mul_monomial(const MultiIndex& K, const UElem& u) const {
  UElem out = u;
  for (int i = rank() - 1; i >= 0; --i)
    for (int t = 0; t < K[i]; ++t) out = left_mul_gen(kept_[i], out);
  return out;
}

UElem convert_basis(const UElem& u, const Enveloping& target, const std::vector<ScalarVec>& gens) {
  UElem out;
  for (const auto& [K, c] : u) {
    UElem acc = target.one();
    for (int i = K.r - 1; i >= 0; --i)
      for (int t = 0; t < K[i]; ++t) acc = target.left_mul(gens[i], acc);
    axpy(out, c, acc);
  }
  return out;
}

Pbw::Pbw(const LiePair& pair, const Connection& conn, int maxWeight) : pair_(&pair), W_(maxWeight) {
  gam_ = adapted_gamma(pair, conn);
  env_ = std::make_shared<Enveloping>(pair.spec.bracket, pair.cIdx);
  const int r = pair.r;
  table_[MultiIndex(r)] = env_->one();
  for (int w = 1; w <= W_; ++w)
    for (const auto& J : indices_of_weight(r, w)) {
      UElem acc;
      for (int m = 0; m < r; ++m) {
        if (J[m] == 0) continue;
        MultiIndex rest = J - MultiIndex::unit(r, m);
        UElem term = mul_j(m, table_.at(rest));
        // nabla_{j d_m} extended to S(B) as a derivation
        SymElem nab;
        for (int c = 0; c < r; ++c) {
          if (rest[c] == 0) continue;
          MultiIndex base = rest - MultiIndex::unit(r, c);
          for (int k = 0; k < r; ++k) {
            const Scalar& g = gam_[pair.a + m][c][k];
            if (sgn(g) != 0) add_term(nab, base + MultiIndex::unit(r, k), Scalar(rest[c]) * g);
          }
        }
        for (const auto& [K, c] : nab) axpy(term, -c, table_.at(K));
        axpy(acc, Scalar(J[m]), term);
      }
      table_[J] = scaled(acc, Scalar(1, w));
    }
}

UElem Pbw::mul_j(int m, const UElem& u) const {
  ScalarVec v(pair_->n);
  for (int i = 0; i < pair_->n; ++i) v[i] = pair_->split[i][m];
  return env_->left_mul(v, u);
}

const UElem& Pbw::pbw(const MultiIndex& J) const {
  auto it = table_.find(J);
  if (it == table_.end()) throw std::out_of_range("pbw: weight " + std::to_string(J.weight()) + " exceeds table");
  return it->second;
}

UElem Pbw::pbw(const SymElem& s) const {
  UElem out;
  for (const auto& [J, c] : s) axpy(out, c, pbw(J));
  return out;
}

SymElem Pbw::pbw_inv(const UElem& u) const {
  SymElem out;
  UElem rest = u;
  while (!rest.empty()) {
    // a term of maximal order is a leading term of pbw of the same index
    auto best = rest.begin();
    for (auto it = rest.begin(); it != rest.end(); ++it)
      if (it->first.weight() > best->first.weight()) best = it;
    MultiIndex K = best->first;
    Scalar c = best->second;
    add_term(out, K, c);
    axpy(rest, -c, pbw(K));
  }
  return out;
}

SymElem Pbw::nabla_flash(const ScalarVec& l, const SymElem& s) const { return pbw_inv(env_->left_mul(l, pbw(s))); }

int degree(const DSmallKey& k) { return popcount(k.aMask) + arity(k); }

int order(const DSmallKey& k) {
  int s = 0;
  for (const auto& K : k.K) s += K.weight();
  return s;
}

Vec<DSmallKey> tensor_slots(Mask aMask, const std::vector<UElem>& slots, const Scalar& c) {
  Vec<DSmallKey> acc;
  acc[DSmallKey{aMask, {}}] = c;
  for (const auto& slot : slots) {
    Vec<DSmallKey> next;
    for (const auto& [key, x] : acc)
      for (const auto& [K, y] : slot) {
        DSmallKey k2 = key;
        k2.K.push_back(K);
        add_term(next, k2, x * y);
      }
    acc = std::move(next);
  }
  return acc;
}

Vec<DSmallKey> d_A_U(const LiePair& p, const Enveloping& env, const DSmallKey& x) {
  Vec<DSmallKey> out;
  for (const auto& [m, c] : d_A(p, x.aMask)) add_term(out, DSmallKey{m, x.K}, c);
  for (int j = 0; j < p.a; ++j) {
    int s0 = merge_sign(Mask(1) << j, x.aMask);
    if (!s0) continue;
    for (std::size_t t = 0; t < x.K.size(); ++t)
      for (const auto& [K, c] : env.left_mul_gen(p.aIdx[j], x.K[t])) {
        DSmallKey y{x.aMask | (Mask(1) << j), x.K};
        y.K[t] = K;
        add_term(out, y, Scalar(s0) * c);
      }
  }
  return out;
}

std::vector<std::pair<std::pair<MultiIndex, MultiIndex>, Scalar>> u_coproduct(const MultiIndex& K) {
  std::vector<std::pair<std::pair<MultiIndex, MultiIndex>, Scalar>> out;
  for (const auto& t : sym_comul(K)) out.push_back({{t.left, t.right}, t.coeff});
  return out;
}

Vec<DSmallKey> hochschild_d(const DSmallKey& x) {
  Vec<DSmallKey> out;
  const int q = static_cast<int>(x.K.size());
  if (q == 0) return out;  // 1 - 1
  const int r = x.K[0].r;
  DSmallKey front = x;
  front.K.insert(front.K.begin(), MultiIndex(r));
  add_term(out, front, Scalar(1));
  for (int i = 0; i < q; ++i)
    for (const auto& [lr, c] : u_coproduct(x.K[i])) {
      DSmallKey y = x;
      y.K[i] = lr.first;
      y.K.insert(y.K.begin() + i + 1, lr.second);
      add_term(out, y, Scalar(parity_sign(i + 1)) * c);
    }
  DSmallKey back = x;
  back.K.push_back(MultiIndex(r));
  add_term(out, back, Scalar(parity_sign(q + 1)));
  return out;
}

}  // namespace artifact
