#include "artifact/homotopy_transfer.hpp"
#include "artifact/matched.hpp"
#include "artifact/transition.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace artifact;
using testing::Setup;

namespace {

template <class KS>
std::function<bool(const std::vector<KS>&)> admit_all() {
  return [](const std::vector<KS>&) { return true; };
}

std::function<bool(const std::vector<DSmallKey>&)> admit_d(int N) {
  return [N](const std::vector<DSmallKey>& t) { return d_required_trunc(t) <= N; };
}

}  // namespace

TEST_SUITE("homotopy_transfer") {
  TEST_CASE("polyvector transfer") {
    for (const std::string name : {"sl2_borel", "heisenberg_center"}) {
      auto s = Setup::make(name);
      const Frame& f = s->frame();
      auto sh = [&](const TSmallKey& k) { return show_key(f, k); };
      const auto tp = instantiate_tpoly(*s->fd);
      auto tr = make_t_transfer(*s->fd, tp);
      const auto L = tr->linf();
      const auto basis = tsmall_basis(f);
      INFO(name);
      for (const auto& x : basis) CHECK(L({x}) == d_A_bott(*s->pair, x));
      for (int n = 1; n <= 3; ++n) {
        auto rep = check_jacobi(L, basis, n, admit_all<TSmallKey>(), sh);
        CHECK(rep.checked > 0);
        CHECK(rep.pass());
      }
    }
  }

  TEST_CASE("corrupted lambda_2 is detected") {
    auto s = Setup::make("sl2_borel");
    const Frame& f = s->frame();
    auto sh = [&](const TSmallKey& k) { return show_key(f, k); };
    const auto tp = instantiate_tpoly(*s->fd);
    auto tr = make_t_transfer(*s->fd, tp);
    const auto basis = tsmall_basis(f);
    auto bad = corrupt_l2(tr->linf(), basis);
    REQUIRE_FALSE(bad.target.empty());
    long failures = 0;
    for (int n = 2; n <= 3; ++n) failures += check_jacobi(bad.L, basis, n, admit_all<TSmallKey>(), sh).failures;
    CHECK(failures > 0);
  }

  TEST_CASE("polydifferential transfer") {
    auto s = Setup::make("heisenberg_x");
    const Frame& f = s->frame();
    auto sh = [&](const DSmallKey& k) { return show_key(f, k); };
    const auto dp = instantiate_dpoly(*s->fd, *s->pbw);
    auto tr = make_d_transfer(*s->fd, dp);
    const auto L = tr->linf();
    const auto basis = dsmall_basis(f, 1, 1, 1);
    for (const auto& x : basis)
      if (d_required_trunc({x}) <= f.N) CHECK(L({x}) == dpoly_small_differential(*s->pair, s->pbw->env(), x));
    for (int n = 1; n <= 3; ++n) {
      auto rep = check_jacobi(L, basis, n, admit_d(f.N), sh);
      CHECK(rep.checked > 0);
      CHECK(rep.pass());
    }
    // Tuples beyond the truncation budget are refused, not evaluated.
    const MultiIndex big(1, {f.N});
    CHECK_THROWS_AS(tr->lambda2(DSmallKey{0, {big}}, DSmallKey{0, {big}}), FiltrationError);
  }

  TEST_CASE("matched pairs") {
    CHECK(matched_detect(*Setup::make("sl2_borel")->pair));
    CHECK(matched_detect(*Setup::make("heisenberg_x")->pair));
    CHECK(matched_detect(*Setup::make("abelian")->pair));
    CHECK_FALSE(matched_detect(*Setup::make("heisenberg_center")->pair));
    CHECK_FALSE(matched_detect(*Setup::make("sl2_cartan")->pair));
    CHECK_THROWS_AS(matched_direct(*Setup::make("heisenberg_center")->pair), std::invalid_argument);
  }

  TEST_CASE("sl2 borel polyvector bracket is the direct Schouten bracket") {
    auto s = Setup::make("sl2_borel");
    const Frame& f = s->frame();
    const MatchedData md = matched_direct(*s->pair);
    const auto tp = instantiate_tpoly(*s->fd);
    auto tr = make_t_transfer(*s->fd, tp);
    const auto basis = tsmall_basis(f);
    long nonzero = 0;
    for (const auto& x : basis)
      for (const auto& y : basis) {
        const auto v = tr->lambda2(x, y);
        CHECK(v == direct_schouten(md, x, y));
        nonzero += !v.empty();
      }
    CHECK(nonzero > 0);
    const auto L = tr->linf();
    for (const auto& x : basis)
      for (const auto& y : basis)
        for (const auto& z : basis) CHECK(L({x, y, z}).empty());
  }

  TEST_CASE("heisenberg_x polydifferential bracket") {
    auto s = Setup::make("heisenberg_x");
    const Frame& f = s->frame();
    const MatchedData md = matched_direct(*s->pair);
    const auto dp = instantiate_dpoly(*s->fd, *s->pbw);
    auto tr = make_d_transfer(*s->fd, dp);
    const auto& env = s->pbw->env();
    const auto basis = dsmall_basis(f, 1, 1, 1);
    long literalBad = 0, checked = 0;
    for (const auto& x : basis)
      for (const auto& y : basis) {
        if (d_required_trunc({x, y}) > f.N) continue;
        ++checked;
        const auto v = tr->lambda2(x, y);
        CHECK(v == to_quotient_basis(md, env, direct_gerstenhaber(md, x, y, SignConvention::Koszul)));
        literalBad += v != to_quotient_basis(md, env, direct_gerstenhaber(md, x, y, SignConvention::Literal));
      }
    CHECK(checked > 0);
    // The arity-only sign convention disagrees once forms pass slots.
    CHECK(literalBad > 0);
    const auto L = tr->linf();
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = i; j < basis.size(); ++j)
        for (std::size_t k = j; k < basis.size(); ++k)
          if (d_required_trunc({basis[i], basis[j], basis[k]}) <= f.N)
            CHECK(L({basis[i], basis[j], basis[k]}).empty());
  }

  TEST_CASE("uniqueness across choices") {
    auto s1 = Setup::make("heisenberg_center");
    const Frame& f = s1->frame();
    const auto dp1 = instantiate_dpoly(*s1->fd, *s1->pbw);
    const auto tp1 = instantiate_tpoly(*s1->fd);
    const auto db = dsmall_basis(f, 1, 1, 2);
    const auto tb = tsmall_basis(f);
    for (int alt = 1; alt <= 2; ++alt) {
      auto s2 = Setup::make("heisenberg_center", 5, alt);
      const auto dp2 = instantiate_dpoly(*s2->fd, *s2->pbw);
      const auto tp2 = instantiate_tpoly(*s2->fd);
      const Transition t(*s1->pbw, *s2->pbw, s1->pbw->max_weight());
      INFO(alt);
      CHECK(check_linear_part(t, dp1, dp2, *s2->fd, db).pass());
      CHECK(check_linear_part(t, tp1, tp2, *s2->fd, tb).pass());
      CHECK(check_intertwining(t, *s1->fd, *s2->fd, dbig_basis(f, 2, 1, 1)).pass());
      CHECK(check_intertwining(t, *s1->fd, *s2->fd, tbig_basis(f, 2)).pass());
      Frame big = f;
      big.byExcess = true;
      CHECK(check_leading_term(t, big, dbig_basis(f, 2, 1, 2)).pass());
      const Transition bad = t.dilated(Scalar(2));
      CHECK_FALSE(check_intertwining(bad, *s1->fd, *s2->fd, tbig_basis(f, 2)).pass());
    }
  }
}
