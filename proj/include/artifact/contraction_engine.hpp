#pragma once
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "artifact/big_keys.hpp"
#include "artifact/pbw.hpp"
#include "artifact/weyl_fedosov.hpp"

namespace artifact {

template <class K>
using KeyOp = std::function<Vec<K>(const K&)>;

template <class KOut, class KIn>
Vec<KOut> apply_op(const std::function<Vec<KOut>(const KIn&)>& op, const Vec<KIn>& x) {
  Vec<KOut> out;
  for (const auto& [k, c] : x) axpy(out, c, op(k));
  return out;
}

// Caches a key-level operator; the cache is write-once per key.
template <class KOut, class KIn>
std::function<Vec<KOut>(const KIn&)> memoize(std::function<Vec<KOut>(const KIn&)> op) {
  auto cache = std::make_shared<std::map<KIn, Vec<KOut>>>();
  return [op = std::move(op), cache](const KIn& k) -> Vec<KOut> {
    if (auto it = cache->find(k); it != cache->end()) return it->second;
    return cache->emplace(k, op(k)).first->second;
  };
}

class FiltrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Deformation retract (sigma, tau, h) between a big complex (KB, D) and a small one (KS, d),
// with the convention tau sigma - id = h D + D h.
template <class KB, class KS>
struct Contraction {
  std::function<Vec<KS>(const KB&)> sigma;
  std::function<Vec<KB>(const KS&)> tau;
  KeyOp<KB> h;
  KeyOp<KB> D;
  KeyOp<KS> d;
  // Big-side identities are compared on terms whose filtration is at most N - slack,
  // slack being the number of differentials that can expose truncation loss.
  std::function<bool(const KB&, int)> comparable;
  // Extra slack owed by an input: brackets shift filtration additively, so an input of
  // negative filtration pulls truncation loss down by the same amount.
  std::function<int(const KB&)> bigSlack = [](const KB&) { return 0; };
  std::function<int(const KS&)> smallSlack = [](const KS&) { return 0; };
  std::string name;
};

struct IdentityCheck {
  IdentityCheck() = default;
  explicit IdentityCheck(std::string id) : identity(std::move(id)) {}
  std::string identity;
  long checked = 0;
  long failures = 0;
  std::string witness;
  bool pass() const { return failures == 0; }
};

template <class KB, class KS, class Show>
std::vector<IdentityCheck> verify_contraction(const Contraction<KB, KS>& c, const std::vector<KB>& bigBasis,
                                              const std::vector<KS>& smallBasis, Show&& show) {
  std::vector<IdentityCheck> out;
  auto proj = [&](const Vec<KB>& v, int slack) {
    return filtered(v, [&](const KB& k) { return c.comparable(k, slack); });
  };
  auto record = [&](IdentityCheck& chk, bool ok, const std::string& who) {
    ++chk.checked;
    if (!ok) {
      if (chk.failures == 0) chk.witness = who;
      ++chk.failures;
    }
  };
  IdentityCheck st{"sigma tau = id"}, ht{"h tau = 0"}, ct{"D tau = tau d"}, dd{"d d = 0"};
  for (const auto& s : smallBasis) {
    auto t = c.tau(s);
    const int e = 1 + c.smallSlack(s);
    record(st, apply_op(c.sigma, t) == single(s), show(s));
    record(ht, proj(apply_op(c.h, t), e).empty(), show(s));
    record(ct, proj(apply_op(c.D, t), e) == proj(apply_op(c.tau, c.d(s)), e), show(s));
    record(dd, apply_op(c.d, c.d(s)).empty(), show(s));
  }
  IdentityCheck hom{"tau sigma - id = h D + D h"}, sh{"sigma h = 0"}, hh{"h h = 0"}, cs{"sigma D = d sigma"},
      DD{"D D = 0"};
  for (const auto& b : bigBasis) {
    const int e = 1 + c.bigSlack(b);
    Vec<KB> lhs = apply_op(c.tau, c.sigma(b));
    add_term(lhs, b, Scalar(-1));
    Vec<KB> rhs = apply_op(c.h, c.D(b));
    axpy(rhs, Scalar(1), apply_op(c.D, c.h(b)));
    record(hom, proj(lhs, e) == proj(rhs, e), show(b));
    record(sh, apply_op(c.sigma, c.h(b)).empty(), show(b));
    record(hh, proj(apply_op(c.h, c.h(b)), e).empty(), show(b));
    record(cs, apply_op(c.sigma, c.D(b)) == apply_op(c.d, c.sigma(b)), show(b));
    record(DD, proj(apply_op(c.D, c.D(b)), e + 1).empty(), show(b));
  }
  for (auto* x : {&st, &hom, &ht, &sh, &hh, &cs, &ct, &DD, &dd}) out.push_back(*x);
  return out;
}

// Geometric series sum_k (h rho)^k applied to a start vector, with a hard step bound.
template <class KB>
Vec<KB> perturbation_series(const KeyOp<KB>& h, const KeyOp<KB>& rho, Vec<KB> start, int bound) {
  Vec<KB> total = start;
  Vec<KB> y = std::move(start);
  for (int step = 0; step < bound && !y.empty(); ++step) {
    y = apply_op(h, apply_op(rho, y));
    axpy(total, Scalar(1), y);
  }
  if (!y.empty()) throw FiltrationError("perturbation series did not terminate within the step bound");
  return total;
}

// Homological perturbation: h' = sum (h rho)^k h, tau' = sum (h rho)^k tau, sigma' = sigma,
// d' = d + sigma rho tau', D' = D + rho. Valid because sigma rho h = 0 in both instances;
// check_sigma_rho_h reports it.
template <class KB, class KS>
Contraction<KB, KS> perturb(const Contraction<KB, KS>& c, const KeyOp<KB>& rho, int bound) {
  Contraction<KB, KS> p = c;
  auto rhoM = memoize<KB, KB>(rho);
  auto h = c.h;
  p.h = memoize<KB, KB>([h, rhoM, bound](const KB& k) { return perturbation_series<KB>(h, rhoM, h(k), bound); });
  auto tau = c.tau;
  p.tau = memoize<KB, KS>([h, rhoM, tau, bound](const KS& s) { return perturbation_series<KB>(h, rhoM, tau(s), bound); });
  auto D = c.D;
  p.D = memoize<KB, KB>([D, rhoM](const KB& k) {
    auto v = D(k);
    axpy(v, Scalar(1), rhoM(k));
    return v;
  });
  auto d = c.d;
  auto sigma = c.sigma;
  auto tauP = p.tau;
  p.d = memoize<KS, KS>([d, sigma, rhoM, tauP](const KS& s) {
    auto v = d(s);
    axpy(v, Scalar(1), apply_op(sigma, apply_op(rhoM, tauP(s))));
    return v;
  });
  p.name = c.name + "/perturbed";
  return p;
}

template <class KB, class KS, class Show>
IdentityCheck check_sigma_rho_h(const Contraction<KB, KS>& c, const KeyOp<KB>& rho, const std::vector<KB>& bigBasis,
                                Show&& show) {
  IdentityCheck chk{"sigma rho h = 0"};
  for (const auto& b : bigBasis) {
    ++chk.checked;
    if (!apply_op(c.sigma, apply_op(rho, c.h(b))).empty()) {
      if (!chk.failures) chk.witness = show(b);
      ++chk.failures;
    }
  }
  return chk;
}

// The two instances of the paper's setting.
using TContraction = Contraction<PVKey, TSmallKey>;
using DContraction = Contraction<PDKey, DSmallKey>;

// Unperturbed: big differential -delta~, small differential 0 (T) or sigma~[m,-]tau~ (D).
TContraction instantiate_tpoly_base(const FedosovData& fd, bool scaledH = true);
DContraction instantiate_dpoly_base(const FedosovData& fd, const Pbw& pbw, bool scaledH = true);
KeyOp<PVKey> tpoly_rho(const FedosovData& fd);
KeyOp<PDKey> dpoly_rho(const FedosovData& fd);
TContraction instantiate_tpoly(const FedosovData& fd);
DContraction instantiate_dpoly(const FedosovData& fd, const Pbw& pbw);
int series_bound(const FedosovData& fd);
// Closed form of the transferred small differential on polydifferential operators:
// d_A^U + (-1)^{p+k} d_H on Lambda^p A^v (x) (U/UA)^{(x) k+1}.
Vec<DSmallKey> dpoly_small_differential(const LiePair& p, const Enveloping& env, const DSmallKey& x);

// Basis enumerations used by the exhaustive checks.
std::vector<TSmallKey> tsmall_basis(const Frame& f);
std::vector<DSmallKey> dsmall_basis(const Frame& f, int maxArity, int maxSlotOrder, int maxTotalOrder);
std::vector<PVKey> tbig_basis(const Frame& f, int maxWeight);
std::vector<PDKey> dbig_basis(const Frame& f, int maxWeight, int maxArity, int maxSlotOrder);
std::vector<Word> word_basis(const Frame& f, int maxWeight);

std::string show_key(const Frame& f, const PVKey& k);
std::string show_key(const Frame& f, const PDKey& k);
std::string show_key(const Frame& f, const TSmallKey& k);
std::string show_key(const Frame& f, const DSmallKey& k);

}  // namespace artifact
