#pragma once
#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "artifact/contraction_engine.hpp"

namespace artifact {

// Shifted parity |t| = deg + 1 of a small-space element viewed in the suspension.
template <class KS>
using ParityFn = std::function<int(const KS&)>;

// Graded-symmetric brackets l_k of degree +1 on the suspension, evaluated lazily on
// arbitrary basis tuples. Sorting a tuple costs the Koszul sign in shifted parities.
template <class KS>
struct LInfinity {
  std::function<Vec<KS>(const std::vector<KS>&)> sorted_bracket;  // tuple already sorted
  ParityFn<KS> parity;
  std::string name;

  Vec<KS> operator()(std::vector<KS> t) const {
    std::vector<int> idx(t.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int i, int j) { return t[i] < t[j]; });
    std::vector<int> rank(t.size()), par(t.size());
    std::vector<KS> sorted;
    sorted.reserve(t.size());
    for (std::size_t p = 0; p < idx.size(); ++p) {
      rank[idx[p]] = static_cast<int>(p);
      sorted.push_back(t[idx[p]]);
    }
    for (std::size_t i = 0; i < t.size(); ++i) par[i] = parity(t[i]);
    for (std::size_t p = 1; p < sorted.size(); ++p)
      if (sorted[p] == sorted[p - 1] && odd(parity(sorted[p]))) return {};
    int s = koszul_sort_sign(rank, par);
    auto v = sorted_bracket(sorted);
    return s > 0 ? v : scaled(v, Scalar(-1));
  }
};

// Sign of moving the letters selected by `sub` in front of the others, both keeping order.
inline int unshuffle_sign(unsigned sub, const std::vector<int>& par) {
  int s = 1;
  int oddOthers = 0;
  for (std::size_t i = 0; i < par.size(); ++i) {
    bool in = (sub >> i) & 1u;
    if (in) {
      if (odd(par[i]) && odd(oddOthers)) s = -s;
    } else if (odd(par[i])) {
      ++oddOthers;
    }
  }
  return s;
}

// Homotopy transfer through a contraction via the Maurer-Cartan generating function:
// F(x) = tau'(x) + h'(1/2 [F,F]), with parameters eps_i of parity |t_i| in front.
// F_S = (-1)^{|t_S|} h'(C_S), C_S = sum over unordered splits of
// (-1)^{|t_U||F_T|} eps(T,U) [F_T, F_U], |F_T| = 1 + |t_T|; P_S = sigma(C_S) and
// P_i = (-1)^{|t_i|} d'(e_i). Then l_k(t_S) = (-1)^kappa P_S.
template <class KB, class KS>
class Transfer {
 public:
  using BigBracket = std::function<Vec<KB>(const Vec<KB>&, const Vec<KB>&)>;
  // Throws FiltrationError when a tuple exceeds what the truncation resolves exactly.
  using BudgetCheck = std::function<void(const std::vector<KS>&)>;

  Transfer(Contraction<KB, KS> c, BigBracket bracket, ParityFn<KS> parity, BudgetCheck budget)
      : c_(std::move(c)), bracket_(std::move(bracket)), parity_(std::move(parity)), budget_(std::move(budget)) {}

  const Contraction<KB, KS>& contraction() const { return c_; }

  // Shifted bracket on a sorted tuple.
  Vec<KS> sorted_ell(const std::vector<KS>& t) {
    if (auto it = ell_.find(t); it != ell_.end()) return it->second;
    budget_(t);
    int kappa = 0, before = 0;
    for (const auto& x : t) {
      int p = parity_(x);
      kappa += p * (1 + before);
      before += p;
    }
    Vec<KS> v = P(t);
    if (odd(kappa)) v = scaled(v, Scalar(-1));
    return ell_.emplace(t, v).first->second;
  }

  LInfinity<KS> linf() {
    LInfinity<KS> L;
    L.sorted_bracket = [this](const std::vector<KS>& t) { return sorted_ell(t); };
    L.parity = parity_;
    L.name = c_.name;
    return L;
  }

  // Unshifted binary bracket sigma'[tau' x, tau' y].
  Vec<KS> lambda2(const KS& x, const KS& y) {
    budget_({x, y});
    return apply_op(c_.sigma, bracket_(F({x}), F({y})));
  }

  // Big-side representative F of a tuple (exposed for tests).
  const Vec<KB>& F(const std::vector<KS>& t) {
    if (auto it = F_.find(t); it != F_.end()) return it->second;
    Vec<KB> v;
    if (t.size() == 1) {
      v = c_.tau(t[0]);
    } else {
      int ps = 0;
      for (const auto& x : t) ps += parity_(x);
      v = apply_op(c_.h, C(t));
      if (odd(ps)) v = scaled(v, Scalar(-1));
    }
    return F_.emplace(t, std::move(v)).first->second;
  }

 private:
  const Vec<KB>& C(const std::vector<KS>& t) {
    if (auto it = C_.find(t); it != C_.end()) return it->second;
    const std::size_t k = t.size();
    std::vector<int> par(k);
    for (std::size_t i = 0; i < k; ++i) par[i] = parity_(t[i]);
    Vec<KB> out;
    const unsigned full = (1u << k) - 1;
    // Unordered splits: T always holds position 0.
    for (unsigned T = 1; T < full; T += 2) {
      std::vector<KS> tT, tU;
      int pT = 0, pU = 0;
      for (std::size_t i = 0; i < k; ++i) {
        if ((T >> i) & 1u) {
          tT.push_back(t[i]);
          pT += par[i];
        } else {
          tU.push_back(t[i]);
          pU += par[i];
        }
      }
      int s = unshuffle_sign(T, par) * parity_sign(pU * (1 + pT));
      const Vec<KB>& fT = F(tT);
      const Vec<KB>& fU = F(tU);
      if (fT.empty() || fU.empty()) continue;
      axpy(out, Scalar(s), bracket_(fT, fU));
    }
    return C_.emplace(t, std::move(out)).first->second;
  }

  Vec<KS> P(const std::vector<KS>& t) {
    if (t.size() == 1) {
      auto v = c_.d(t[0]);
      return odd(parity_(t[0])) ? scaled(v, Scalar(-1)) : v;
    }
    return apply_op(c_.sigma, C(t));
  }

  Contraction<KB, KS> c_;
  BigBracket bracket_;
  ParityFn<KS> parity_;
  BudgetCheck budget_;
  std::map<std::vector<KS>, Vec<KB>> F_, C_;
  std::map<std::vector<KS>, Vec<KS>> ell_;
};

struct JacobiReport {
  int arity = 0;
  long checked = 0;
  long failures = 0;
  std::string witness;
  bool pass() const { return failures == 0; }
};

// Generalized Jacobi identity of total arity n on the tuple t:
// sum over i and unshuffles S|S^c with |S| = i of eps l_{n-i+1}(l_i(t_S), t_{S^c}) = 0.
template <class KS>
Vec<KS> jacobi_defect(const LInfinity<KS>& L, const std::vector<KS>& t) {
  const std::size_t n = t.size();
  std::vector<int> par(n);
  for (std::size_t i = 0; i < n; ++i) par[i] = L.parity(t[i]);
  Vec<KS> out;
  for (unsigned S = 1; S < (1u << n); ++S) {
    std::vector<KS> in, rest;
    for (std::size_t i = 0; i < n; ++i) ((S >> i) & 1u ? in : rest).push_back(t[i]);
    int s = unshuffle_sign(S, par);
    Vec<KS> inner = L(in);
    for (const auto& [b, cb] : inner) {
      std::vector<KS> outer{b};
      outer.insert(outer.end(), rest.begin(), rest.end());
      axpy(out, Scalar(s) * cb, L(outer));
    }
  }
  return out;
}

// Exhaustive check on all multisets of size n drawn from `basis`, skipping repeated odd
// elements (they vanish by symmetry) and tuples rejected by `admit`.
template <class KS, class Show>
JacobiReport check_jacobi(const LInfinity<KS>& L, const std::vector<KS>& basis, int n,
                          const std::function<bool(const std::vector<KS>&)>& admit, Show&& show) {
  JacobiReport rep;
  rep.arity = n;
  std::vector<std::size_t> idx(n, 0);
  std::vector<KS> sorted = basis;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t m = sorted.size();
  if (m == 0) return rep;
  std::function<void(int, std::size_t)> rec = [&](int pos, std::size_t from) {
    if (pos == n) {
      std::vector<KS> t;
      for (int i = 0; i < n; ++i) t.push_back(sorted[idx[i]]);
      for (int i = 1; i < n; ++i)
        if (idx[i] == idx[i - 1] && odd(L.parity(t[i]))) return;
      if (!admit(t)) return;
      ++rep.checked;
      if (!jacobi_defect(L, t).empty()) {
        if (rep.failures == 0) {
          std::string w;
          for (const auto& x : t) w += (w.empty() ? "" : " , ") + show(x);
          rep.witness = "(" + w + ")";
        }
        ++rep.failures;
      }
      return;
    }
    for (std::size_t j = from; j < m; ++j) {
      idx[pos] = j;
      rec(pos + 1, j);
    }
  };
  rec(0, 0);
  return rep;
}

template <class KS>
struct CorruptedLInfinity {
  LInfinity<KS> L;
  std::vector<KS> target;  // empty when no l_2 entry feeds a further bracket
};

// Negative control: l_2 with its sign flipped on one sorted pair of `basis`, every other
// bracket untouched. The pair is the first whose value feeds l_1 or l_2 again, so the flip
// is visible to the identities at arity <= 3.
template <class KS>
CorruptedLInfinity<KS> corrupt_l2(const LInfinity<KS>& L, const std::vector<KS>& basis) {
  std::vector<KS> sorted = basis;
  std::sort(sorted.begin(), sorted.end());
  auto feeds = [&](const Vec<KS>& v) {
    for (const auto& [k, c] : v) {
      if (!L({k}).empty()) return true;
      for (const auto& z : sorted)
        if (!L({k, z}).empty()) return true;
    }
    return false;
  };
  CorruptedLInfinity<KS> out{L, {}};
  for (std::size_t i = 0; i < sorted.size() && out.target.empty(); ++i)
    for (std::size_t j = i; j < sorted.size(); ++j) {
      auto v = L({sorted[i], sorted[j]});
      if (!v.empty() && feeds(v)) {
        out.target = {sorted[i], sorted[j]};
        break;
      }
    }
  auto inner = L.sorted_bracket;
  auto target = out.target;
  out.L.sorted_bracket = [inner, target](const std::vector<KS>& t) {
    auto v = inner(t);
    if (t == target) v = scaled(v, Scalar(-1));
    return v;
  };
  out.L.name = L.name + "/corrupted";
  return out;
}

using TTransfer = Transfer<PVKey, TSmallKey>;
using DTransfer = Transfer<PDKey, DSmallKey>;

std::unique_ptr<TTransfer> make_t_transfer(const FedosovData& fd, const TContraction& perturbed);
std::unique_ptr<DTransfer> make_d_transfer(const FedosovData& fd, const DContraction& perturbed);
int t_parity(const TSmallKey& k);
int d_parity(const DSmallKey& k);
// Smallest truncation resolving l_k exactly on a D-side tuple: N >= total order + 1.
int d_required_trunc(const std::vector<DSmallKey>& t);

}  // namespace artifact
