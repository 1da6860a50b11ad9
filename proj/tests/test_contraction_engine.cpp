#include "artifact/contraction_engine.hpp"
#include "artifact/structural.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace artifact;
using testing::Setup;

namespace {

long total_failures(const std::vector<IdentityCheck>& cs) {
  long n = 0;
  for (const auto& c : cs) n += c.failures;
  return n;
}

long total_checked(const std::vector<IdentityCheck>& cs) {
  long n = 0;
  for (const auto& c : cs) n += c.checked;
  return n;
}

}  // namespace

TEST_SUITE("contraction_engine") {
  TEST_CASE("unperturbed contractions") {
    for (const std::string name : {"heisenberg_center", "sl2_borel"}) {
      auto s = Setup::make(name);
      const Frame& f = s->frame();
      auto sh = [&](const auto& k) { return show_key(f, k); };
      const auto tBig = tbig_basis(f, f.N - 1);
      const auto dBig = dbig_basis(f, f.N - 1, 1, 1);
      const auto tSmall = tsmall_basis(f);
      const auto dSmall = dsmall_basis(f, 2, 2, 3);
      const auto tc = verify_contraction(instantiate_tpoly_base(*s->fd), tBig, tSmall, sh);
      const auto dc = verify_contraction(instantiate_dpoly_base(*s->fd, *s->pbw), dBig, dSmall, sh);
      INFO(name);
      CHECK(total_checked(tc) > 0);
      CHECK(total_failures(tc) == 0);
      CHECK(total_checked(dc) > 0);
      CHECK(total_failures(dc) == 0);

      // The unperturbed small differential on the polydifferential side is a signed d_H.
      const auto dBase = instantiate_dpoly_base(*s->fd, *s->pbw);
      for (const auto& x : dSmall)
        CHECK(dBase.d(x) == scaled(hochschild_d(x), Scalar(parity_sign(popcount(x.aMask) + arity(x)))));
    }
  }

  TEST_CASE("corrupted homotopy is detected") {
    auto s = Setup::make("heisenberg_center");
    const Frame& f = s->frame();
    auto sh = [&](const auto& k) { return show_key(f, k); };
    CHECK(total_failures(verify_contraction(instantiate_tpoly_base(*s->fd, false), tbig_basis(f, f.N - 1),
                                            tsmall_basis(f), sh)) > 0);
    CHECK(total_failures(verify_contraction(instantiate_dpoly_base(*s->fd, *s->pbw, false),
                                            dbig_basis(f, f.N - 1, 1, 1), dsmall_basis(f, 2, 2, 3), sh)) > 0);
  }

  TEST_CASE("zero perturbation changes nothing") {
    auto s = Setup::make("sl2_borel");
    const Frame& f = s->frame();
    const auto base = instantiate_tpoly_base(*s->fd);
    KeyOp<PVKey> zero = [](const PVKey&) { return PolyVector{}; };
    const auto p = perturb(base, zero, series_bound(*s->fd));
    for (const auto& k : tbig_basis(f, 2)) {
      CHECK(p.h(k) == base.h(k));
      CHECK(p.D(k) == base.D(k));
    }
    for (const auto& x : tsmall_basis(f)) {
      CHECK(p.tau(x) == base.tau(x));
      CHECK(p.d(x) == base.d(x));
    }
  }

  TEST_CASE("perturbation series step bound") {
    KeyOp<Word> h = [](const Word& w) { return single(w); };
    KeyOp<Word> rho = [](const Word& w) { return single(w, Scalar(1, 2)); };
    CHECK_THROWS_AS(perturbation_series<Word>(h, rho, single(Word{}), 3), FiltrationError);
    KeyOp<Word> nil = [](const Word&) { return WeylElement{}; };
    CHECK(perturbation_series<Word>(h, nil, single(Word{}), 1) == single(Word{}));
  }

  TEST_CASE("perturbed contractions and transferred differentials") {
    for (const std::string name : {"heisenberg_center", "sl2_borel", "heisenberg_x"}) {
      auto s = Setup::make(name);
      const Frame& f = s->frame();
      const auto& p = *s->pair;
      auto sh = [&](const auto& k) { return show_key(f, k); };
      const auto tBig = tbig_basis(f, f.N - 1);
      const auto dBig = dbig_basis(f, f.N - 1, 1, 1);
      const auto tSmall = tsmall_basis(f);
      const auto dSmall = dsmall_basis(f, 2, 2, 3);
      INFO(name);
      CHECK(check_sigma_rho_h(instantiate_tpoly_base(*s->fd), tpoly_rho(*s->fd), tBig, sh).pass());
      CHECK(check_sigma_rho_h(instantiate_dpoly_base(*s->fd, *s->pbw), dpoly_rho(*s->fd), dBig, sh).pass());
      const auto tp = instantiate_tpoly(*s->fd);
      const auto dp = instantiate_dpoly(*s->fd, *s->pbw);
      CHECK(total_failures(verify_contraction(tp, tBig, tSmall, sh)) == 0);
      CHECK(total_failures(verify_contraction(dp, dBig, dSmall, sh)) == 0);
      for (const auto& x : tSmall) CHECK(tp.d(x) == d_A_bott(p, x));
      for (const auto& x : dSmall) CHECK(dp.d(x) == dpoly_small_differential(p, s->pbw->env(), x));
      const auto dLow = dbig_basis(f, 2, 1, 1);
      CHECK(check_rho_m(*s->fd, dLow).pass());
      CHECK(check_double_complex(*s->fd, dLow).pass());
    }
  }

  TEST_CASE("sl2 borel transferred polyvector differential") {
    // A = span{h, e}, B spanned by the class of f: h acts on it with weight -2, e by zero.
    auto s = Setup::make("sl2_borel");
    const auto tp = instantiate_tpoly(*s->fd);
    CHECK(tp.d(TSmallKey{0, 1}) == single(TSmallKey{1, 1}, Scalar(-2)));
    CHECK(tp.d(TSmallKey{0, 0}).empty());
  }
}
