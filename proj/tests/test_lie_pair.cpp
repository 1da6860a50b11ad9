#include "doctest.h"
#include "support.hpp"

using namespace artifact;

namespace {

LiePairSpec heisenberg(std::vector<int> aIdx) {
  LiePairSpec s;
  s.name = "heisenberg";
  s.dimL = 3;
  s.dimA = static_cast<int>(aIdx.size());
  s.basis = {"x", "y", "z"};
  s.aIndices = aIdx;
  s.bracket.assign(3, Matrix(3, ScalarVec(3)));
  s.bracket[0][1][2] = 1;
  s.bracket[1][0][2] = -1;
  return s;
}

LiePairSpec sl2(std::vector<int> aIdx) {
  LiePairSpec s;
  s.name = "sl2";
  s.dimL = 3;
  s.dimA = static_cast<int>(aIdx.size());
  s.basis = {"h", "e", "f"};
  s.aIndices = aIdx;
  s.bracket.assign(3, Matrix(3, ScalarVec(3)));
  auto set = [&](int i, int j, int k, int c) {
    s.bracket[i][j][k] = c;
    s.bracket[j][i][k] = -c;
  };
  set(0, 1, 1, 2);
  set(0, 2, 2, -2);
  set(1, 2, 0, 1);
  return s;
}

// Oracle: [x_i,[x_j,x_k]] + cyclic straight from the table.
bool table_jacobi(const Tensor3& c) {
  const int n = static_cast<int>(c.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int out = 0; out < n; ++out) {
          Scalar s = 0;
          for (int m = 0; m < n; ++m)
            s += c[j][k][m] * c[i][m][out] + c[k][i][m] * c[j][m][out] + c[i][j][m] * c[k][m][out];
          if (sgn(s) != 0) return false;
        }
  return true;
}

}  // namespace

TEST_SUITE("lie_pair") {
  TEST_CASE("Heisenberg with central A is valid and has zero Bott connection") {
    auto s = heisenberg({2});
    CHECK(table_jacobi(s.bracket));
    auto vr = validate_pair(s);
    REQUIRE(vr.ok());
    const LiePair& p = *vr.pair;
    for (int b = 0; b < p.r; ++b) CHECK(p.bott(0, b) == ScalarVec(p.r, Scalar(0)));
    CHECK_FALSE(p.matched());
  }

  TEST_CASE("sl2 with A = <h,e> is a valid matched pair, Bott(h, f) = -2 f") {
    auto vr = validate_pair(sl2({0, 1}));
    REQUIRE(vr.ok());
    const LiePair& p = *vr.pair;
    CHECK(p.bott(0, 0) == ScalarVec{Scalar(-2)});
    CHECK(p.bott(1, 0) == ScalarVec{Scalar(0)});
    CHECK(p.matched());
  }

  TEST_CASE("one-dimensional A is always a subalgebra; Heisenberg/<x> is matched") {
    auto vr = validate_pair(heisenberg({0}));
    REQUIRE(vr.ok());
    CHECK(vr.pair->matched());
  }

  TEST_CASE("validation rejects Jacobi failures with the violating triple") {
    auto pf = load_pair_file(testing::fixture_path("jacobi_violation"));
    CHECK_FALSE(table_jacobi(pf.spec.bracket));
    auto vr = validate_pair(pf.spec);
    CHECK_FALSE(vr.ok());
    bool found = false;
    for (const auto& is : vr.issues)
      if (is.kind == "jacobi") {
        found = true;
        CHECK(is.witness.size() == 3);
      }
    CHECK(found);
  }

  TEST_CASE("validation rejects a non-subalgebra A and a bad splitting") {
    auto vr = validate_pair(sl2({1, 2}));  // [e,f] = h leaves <e,f>
    CHECK_FALSE(vr.ok());
    CHECK(vr.issues[0].kind == "subalgebra");
    auto s = heisenberg({2});
    s.splitting = Matrix{{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(0)}, {Scalar(0), Scalar(1)}};
    CHECK_FALSE(validate_pair(s).ok());
  }

  TEST_CASE("default connection") {
    auto hz = *validate_pair(heisenberg({2})).pair;
    CHECK(is_zero(default_connection(hz).gamma));
    CHECK(is_zero(torsion(hz, default_connection(hz))));
    for (const auto& r : curvature(hz, default_connection(hz))) CHECK(is_zero(r));

    auto sb = *validate_pair(sl2({0, 1})).pair;
    const Connection c = default_connection(sb);
    // nabla_f f = 1/2 q[f,f] = 0 and nabla_h f = -2 f.
    CHECK(c.gamma[2][0][0] == 0);
    CHECK(c.gamma[0][0][0] == -2);
    auto ab = *validate_pair(load_pair_file(testing::fixture_path("abelian")).spec).pair;
    CHECK(is_zero(default_connection(ab).gamma));
    for (const auto& r : curvature(ab, default_connection(ab))) CHECK(is_zero(r));
  }

  TEST_CASE("default connection is torsion-free and extends Bott on every fixture") {
    for (auto name : {"heisenberg_center", "heisenberg_x", "sl2_borel", "sl2_cartan", "abelian"}) {
      auto pf = load_pair_file(testing::fixture_path(name));
      auto p = *validate_pair(pf.spec).pair;
      CHECK(check_connection(p, default_connection(p)).empty());
      for (const auto& alt : pf.alternatives) {
        auto spec = with_choice(pf.spec, alt);
        auto q = *validate_pair(spec).pair;
        Connection c = spec.connection ? Connection{*spec.connection} : default_connection(q);
        CHECK(check_connection(q, c).empty());
      }
    }
  }

  TEST_CASE("a connection with torsion is reported") {
    auto p = *validate_pair(heisenberg({2})).pair;
    Tensor3 g = adapted_gamma(p, default_connection(p));
    g[p.a][1][0] += 1;
    auto issues = check_connection(p, connection_from_adapted(p, g));
    REQUIRE_FALSE(issues.empty());
    CHECK(issues[0].kind == "torsion");
  }

  TEST_CASE("d_A^Bott") {
    auto hz = *validate_pair(heisenberg({2})).pair;
    for (const auto& k : tsmall_basis(hz.frame(3))) CHECK(d_A_bott(hz, k).empty());
    auto sb = *validate_pair(sl2({0, 1})).pair;
    // d(1 (x) f) = -2 alpha_h (x) f; Bott(e, f) = q(h) = 0.
    CHECK(d_A_bott(sb, TSmallKey{0, 1}) == single(TSmallKey{1, 1}, Scalar(-2)));
    CHECK(d_A_bott(sb, TSmallKey{0, 0}).empty());
    for (auto name : {"sl2_borel", "sl2_cartan", "heisenberg_x"}) {
      auto p = *validate_pair(load_pair_file(testing::fixture_path(name)).spec).pair;
      for (const auto& k : tsmall_basis(p.frame(3)))
        CHECK(apply_op<TSmallKey, TSmallKey>([&](const TSmallKey& x) { return d_A_bott(p, x); }, d_A_bott(p, k)).empty());
    }
  }

  TEST_CASE("d_A^U") {
    auto setup = testing::Setup::make("heisenberg_center", 3);
    const LiePair& hz = *setup->pair;
    const auto& env = setup->pbw->env();
    // z [x] = [x z] = 0 modulo U(g) z.
    CHECK(d_A_U(hz, env, DSmallKey{0, {MultiIndex::unit(2, 0)}}).empty());
    auto sb = testing::Setup::make("sl2_borel", 3);
    // h [f] = -2 [f] and e [f] = [h] = 0 in U/UA.
    CHECK(d_A_U(*sb->pair, sb->pbw->env(), DSmallKey{0, {MultiIndex::unit(1, 0)}}) ==
          single(DSmallKey{1, {MultiIndex::unit(1, 0)}}, Scalar(-2)));
    for (auto name : {"sl2_borel", "sl2_cartan", "heisenberg_x"}) {
      auto s = testing::Setup::make(name, 3);
      std::function<Vec<DSmallKey>(const DSmallKey&)> d = [&](const DSmallKey& x) {
        return d_A_U(*s->pair, s->pbw->env(), x);
      };
      for (const auto& k : dsmall_basis(s->frame(), 1, 2, 3)) CHECK(apply_op(d, d(k)).empty());
    }
  }
}
