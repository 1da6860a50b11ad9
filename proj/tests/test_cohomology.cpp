#include "artifact/cohomology.hpp"
#include "artifact/homotopy_transfer.hpp"
#include "artifact/poly_structures.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace artifact;
using testing::dense_rank;
using testing::Setup;

namespace {

const std::vector<std::string> kFixtures = {"heisenberg_center", "heisenberg_x", "sl2_borel", "sl2_cartan", "abelian"};

// Oracle: dim H^n = dim C^n - rank d_n - rank d_{n-1}, ranks by dense elimination.
template <class K>
int rank_of(const GradedComplex<K>& c, int n) {
  if (!c.cochains.count(n) || !c.cochains.count(n + 1)) return 0;
  const auto& src = c.cochains.at(n);
  const auto& dst = c.cochains.at(n + 1);
  std::map<K, int> idx;
  for (std::size_t i = 0; i < dst.size(); ++i) idx[dst[i]] = static_cast<int>(i);
  std::vector<std::vector<Scalar>> m(src.size(), std::vector<Scalar>(dst.size()));
  for (std::size_t i = 0; i < src.size(); ++i)
    for (const auto& [k, v] : c.d(src[i])) m[i][idx.at(k)] = v;
  return dense_rank(m);
}

template <class K>
void check_dims_against_ranks(const GradedComplex<K>& c, const Cohomology<K>& H) {
  for (int n : H.degrees()) {
    if (!H.complete(n)) continue;
    const int want = static_cast<int>(c.cochains.at(n).size()) - rank_of(c, n) - rank_of(c, n - 1);
    INFO("degree ", n);
    CHECK(H.dim(n) == want);
  }
}

int binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  int out = 1;
  for (int i = 0; i < k; ++i) out = out * (n - i) / (i + 1);
  return out;
}

bool all_pass(const std::vector<IdentityCheck>& cs) {
  for (const auto& c : cs)
    if (!c.pass()) return false;
  return true;
}

}  // namespace

TEST_SUITE("cohomology") {
  TEST_CASE("echelon and nullspace") {
    Echelon e(3);
    CHECK(e.add({1, 2, 0}));
    CHECK(e.add({0, 1, 1}));
    CHECK_FALSE(e.add({1, 3, 1}));
    CHECK(e.rank() == 2);
    ScalarVec coords;
    auto res = e.reduce({2, 5, 1}, &coords);
    for (const auto& x : res) CHECK(sgn(x) == 0);
    CHECK(coords == ScalarVec{2, 1});
    auto ns = nullspace(Matrix{{1, 1, 0}, {0, 1, 1}}, 3);
    REQUIRE(ns.size() == 1);
    CHECK(ns[0][0] - ns[0][1] + ns[0][2] == ns[0][0] * 3);
  }

  TEST_CASE("heisenberg center polyvector cohomology") {
    // A is central, so the Bott differential vanishes and H^n has dimension C(3, n + 1).
    auto s = Setup::make("heisenberg_center");
    const Cohomology<TSmallKey> H(t_complex(*s->pair));
    for (int n : H.degrees())
      if (H.complete(n)) CHECK(H.dim(n) == binom(3, n + 1));
    CHECK(H.dim(-1) == 1);
    CHECK(H.dim(0) == 3);
    CHECK(H.dim(1) == 3);
  }

  TEST_CASE("dimensions agree with a rank oracle") {
    for (const auto& name : kFixtures) {
      auto s = Setup::make(name);
      INFO(name);
      const auto tc = t_complex(*s->pair);
      check_dims_against_ranks(tc, Cohomology<TSmallKey>(tc));
      const auto dc = d_complex(*s->pair, s->pbw->env(), 2, 2);
      check_dims_against_ranks(dc, Cohomology<DSmallKey>(dc));
    }
  }

  TEST_CASE("sl2 borel degree zero") {
    // Degree 0 is spanned by 1 (x) f, lambda^h and lambda^e. Their differentials are
    // -2 lambda^h (x) f, 0 and -2 lambda^h lambda^e, so only lambda^h survives.
    auto s = Setup::make("sl2_borel");
    const Cohomology<TSmallKey> H(t_complex(*s->pair));
    CHECK(H.dim(-1) == 1);
    CHECK(H.dim_cochains(0) == 3);
    REQUIRE(H.dim(0) == 1);
    CHECK(H.representatives(0)[0] == single(TSmallKey{1, 0}));
  }

  TEST_CASE("classification and coboundaries") {
    auto s = Setup::make("sl2_cartan");
    const auto c = d_complex(*s->pair, s->pbw->env(), 2, 2);
    const Cohomology<DSmallKey> H(c);
    for (int n : H.degrees()) {
      if (!H.complete(n)) continue;
      for (const auto& b : H.coboundaries(n)) CHECK(H.is_coboundary(n, b));
      for (int i = 0; i < H.dim(n); ++i) {
        auto h = H.classify(n, H.representatives(n)[i]);
        REQUIRE(h);
        ScalarVec want(H.dim(n));
        want[i] = 1;
        CHECK(*h == want);
        CHECK_FALSE(H.is_coboundary(n, H.representatives(n)[i]));
      }
    }
  }

  TEST_CASE("induced structure on cohomology") {
    for (const std::string name : {"sl2_borel", "heisenberg_center", "heisenberg_x"}) {
      auto s = Setup::make(name);
      INFO(name);
      const auto tp = instantiate_tpoly(*s->fd);
      auto tt = make_t_transfer(*s->fd, tp);
      const Cohomology<TSmallKey> HT(t_complex(*s->pair));
      Bilinear<TSmallKey> tb = [&](const TSmallKey& x, const TSmallKey& y) { return tt->lambda2(x, y); };
      Bilinear<TSmallKey> tc = [](const TSmallKey& x, const TSmallKey& y) { return cup(x, y); };
      const auto IT = induced_structure(HT, tb, tc, 7);
      CHECK(all_pass(IT.checks));

      const auto dp = instantiate_dpoly(*s->fd, *s->pbw);
      auto dt = make_d_transfer(*s->fd, dp);
      const Cohomology<DSmallKey> HD(d_complex(*s->pair, s->pbw->env(), 2, 2));
      Bilinear<DSmallKey> db = [&](const DSmallKey& x, const DSmallKey& y) { return dt->lambda2(x, y); };
      Bilinear<DSmallKey> dc = [](const DSmallKey& x, const DSmallKey& y) { return cup(x, y); };
      const auto ID = induced_structure(HD, db, dc, 7);
      CHECK(all_pass(ID.checks));
    }
  }

  TEST_CASE("choice independence and transport control") {
    auto s1 = Setup::make("heisenberg_x");
    const Cohomology<DSmallKey> H(d_complex(*s1->pair, s1->pbw->env(), 2, 2));
    Bilinear<DSmallKey> dc = [](const DSmallKey& x, const DSmallKey& y) { return cup(x, y); };
    auto bracket_of = [&](Setup& s, const DContraction& dp) {
      auto dt = std::shared_ptr<DTransfer>(make_d_transfer(*s.fd, dp));
      return Bilinear<DSmallKey>([dt](const DSmallKey& x, const DSmallKey& y) { return dt->lambda2(x, y); });
    };
    const auto dp1 = instantiate_dpoly(*s1->fd, *s1->pbw);
    const auto base = induced_structure(H, bracket_of(*s1, dp1), dc, 3);
    auto s2 = Setup::make("heisenberg_x", 5, 1);
    const auto dp2 = instantiate_dpoly(*s2->fd, *s2->pbw);
    const auto other = induced_structure(H, bracket_of(*s2, dp2), dc, 3);
    const auto same = compare_tables("across choices", base.bracket, other.bracket);
    CHECK(same.checked > 0);
    CHECK(same.pass());

  }

  TEST_CASE("transport control") {
    // Induced brackets vanish on every fixture, so the control runs on the cup table.
    auto s = Setup::make("heisenberg_center");
    const auto tp = instantiate_tpoly(*s->fd);
    auto tt = make_t_transfer(*s->fd, tp);
    const Cohomology<TSmallKey> H(t_complex(*s->pair));
    Bilinear<TSmallKey> tb = [&](const TSmallKey& x, const TSmallKey& y) { return tt->lambda2(x, y); };
    Bilinear<TSmallKey> tc = [](const TSmallKey& x, const TSmallKey& y) { return cup(x, y); };
    const auto base = induced_structure(H, tb, tc, 3);
    std::map<int, Matrix> T, Tinv, I;
    std::map<int, int> dims;
    for (int n : H.degrees()) {
      if (!H.complete(n)) continue;
      const int d = H.dim(n);
      dims[n] = d;
      Matrix t(d, ScalarVec(d)), ti(d, ScalarVec(d)), id(d, ScalarVec(d));
      for (int k = 0; k < d; ++k) {
        t[k][k] = 2;
        ti[k][k] = Scalar(1, 2);
        id[k][k] = 1;
      }
      T[n] = t;
      Tinv[n] = ti;
      I[n] = id;
    }
    auto kept = transport(base.cup, I, I, dims);
    REQUIRE(kept);
    CHECK(compare_tables("identity transport", *kept, base.cup).pass());
    bool anyNonzero = false;
    for (const auto& [k, v] : base.cup.entries)
      for (const auto& x : v.second) anyNonzero = anyNonzero || sgn(x) != 0;
    REQUIRE(anyNonzero);
    auto moved = transport(base.cup, T, Tinv, dims);
    REQUIRE(moved);
    CHECK_FALSE(compare_tables("doubled transport", *moved, base.cup).pass());
  }
}
