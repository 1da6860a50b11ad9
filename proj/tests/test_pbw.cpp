#include <algorithm>

#include "artifact/transition.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace artifact;
using testing::Setup;

namespace {

const std::vector<std::string> kFixtures = {"heisenberg_center", "heisenberg_x", "sl2_borel", "sl2_cartan", "abelian"};

using Pair2 = std::pair<MultiIndex, MultiIndex>;

SymElem sym(const MultiIndex& J) { return single(J); }

// Oracle for a connection with vanishing adapted symbols: pbw is the symmetrization
// of the product of lifted generators, averaged over distinct orderings.
UElem symmetrized(const Setup& s, const MultiIndex& J) {
  std::vector<int> seq;
  for (int m = 0; m < s.pair->r; ++m)
    for (int t = 0; t < J[m]; ++t) seq.push_back(s.pair->cIdx[m]);
  std::sort(seq.begin(), seq.end());
  UElem acc;
  int count = 0;
  do {
    UElem u = s.pbw->env().one();
    for (auto it = seq.rbegin(); it != seq.rend(); ++it) u = s.pbw->env().left_mul_gen(*it, u);
    axpy(acc, Scalar(1), u);
    ++count;
  } while (std::next_permutation(seq.begin(), seq.end()));
  return scaled(acc, Scalar(1, count));
}

Vec<Pair2> u_delta(const UElem& u) {
  Vec<Pair2> out;
  for (const auto& [K, c] : u)
    for (const auto& [lr, d] : u_coproduct(K)) add_term(out, lr, c * d);
  return out;
}

Vec<Pair2> s_delta(const SymElem& s) {
  Vec<Pair2> out;
  for (const auto& [J, c] : s)
    for (const auto& t : sym_comul(J)) add_term(out, Pair2{t.left, t.right}, c * t.coeff);
  return out;
}

Vec<Pair2> tensor(const Vec<MultiIndex>& x, const Vec<MultiIndex>& y) {
  Vec<Pair2> out;
  for (const auto& [a, ca] : x)
    for (const auto& [b, cb] : y) add_term(out, Pair2{a, b}, ca * cb);
  return out;
}

}  // namespace

TEST_SUITE("pbw") {
  TEST_CASE("pbw of low-weight elements") {
    for (const auto& name : kFixtures) {
      auto s = Setup::make(name);
      const int r = s->pair->r;
      CHECK(s->pbw->pbw(MultiIndex(r)) == s->pbw->env().one());
      for (int k = 0; k < r; ++k) CHECK(s->pbw->pbw(MultiIndex::unit(r, k)) == single(MultiIndex::unit(r, k)));
    }
  }

  TEST_CASE("heisenberg pbw is the symmetrization") {
    auto s = Setup::make("heisenberg_center");
    CHECK(s->pbw->pbw(MultiIndex(2, {1, 1})) == single(MultiIndex(2, {1, 1})));
    for (const auto& J : indices_up_to(2, 4)) {
      INFO(J.str());
      CHECK(s->pbw->pbw(J) == symmetrized(*s, J));
    }
  }

  TEST_CASE("pbw inverse") {
    for (const auto& name : kFixtures) {
      auto s = Setup::make(name);
      for (const auto& J : indices_up_to(s->pair->r, s->pbw->max_weight())) {
        INFO(name, " ", J.str());
        CHECK(s->pbw->pbw_inv(s->pbw->pbw(J)) == sym(J));
      }
    }
  }

  TEST_CASE("pbw is a coalgebra map") {
    for (const auto& name : kFixtures) {
      auto s = Setup::make(name);
      for (const auto& J : indices_up_to(s->pair->r, 4)) {
        Vec<Pair2> rhs;
        for (const auto& t : sym_comul(J)) axpy(rhs, t.coeff, tensor(s->pbw->pbw(t.left), s->pbw->pbw(t.right)));
        INFO(name, " ", J.str());
        CHECK(u_delta(s->pbw->pbw(J)) == rhs);
      }
    }
  }

  TEST_CASE("flat connection examples") {
    auto s = Setup::make("heisenberg_center");
    const ScalarVec z = s->pair->basis_vector(2);
    CHECK(s->pbw->nabla_flash(z, sym(MultiIndex::unit(2, 0))).empty());
    for (const auto& name : kFixtures) {
      auto t = Setup::make(name);
      const auto& p = *t->pair;
      for (int ai : p.aIdx) {
        ScalarVec a = p.basis_vector(ai);
        CHECK(t->pbw->nabla_flash(a, sym(MultiIndex(p.r))).empty());
        // On generators the flat connection is the Bott connection.
        for (int m = 0; m < p.r; ++m) {
          ScalarVec jm(p.n);
          for (int i = 0; i < p.n; ++i) jm[i] = p.split[i][m];
          ScalarVec b = p.q(p.bracket(a, jm));
          SymElem want;
          for (int k = 0; k < p.r; ++k) add_term(want, MultiIndex::unit(p.r, k), b[k]);
          INFO(name, " ", ai, " ", m);
          CHECK(t->pbw->nabla_flash(a, sym(MultiIndex::unit(p.r, m))) == want);
        }
      }
    }
  }

  TEST_CASE("flatness and coderivation") {
    for (const auto& name : kFixtures) {
      auto s = Setup::make(name);
      const auto& p = *s->pair;
      for (int i = 0; i < p.n; ++i)
        for (int j = 0; j < p.n; ++j) {
          ScalarVec li = p.basis_vector(i), lj = p.basis_vector(j);
          ScalarVec br = p.bracket(li, lj);
          for (const auto& J : indices_up_to(p.r, 3)) {
            SymElem x = sym(J);
            SymElem lhs = s->pbw->nabla_flash(li, s->pbw->nabla_flash(lj, x));
            axpy(lhs, Scalar(-1), s->pbw->nabla_flash(lj, s->pbw->nabla_flash(li, x)));
            axpy(lhs, Scalar(-1), s->pbw->nabla_flash(br, x));
            INFO(name, " ", i, " ", j, " ", J.str());
            CHECK(lhs.empty());
          }
        }
      for (int i = 0; i < p.n; ++i) {
        ScalarVec l = p.basis_vector(i);
        for (const auto& J : indices_up_to(p.r, 3)) {
          Vec<Pair2> rhs;
          for (const auto& t : sym_comul(J)) {
            axpy(rhs, t.coeff, tensor(s->pbw->nabla_flash(l, sym(t.left)), sym(t.right)));
            axpy(rhs, t.coeff, tensor(sym(t.left), s->pbw->nabla_flash(l, sym(t.right))));
          }
          INFO(name, " ", i, " ", J.str());
          CHECK(s_delta(s->pbw->nabla_flash(l, sym(J))) == rhs);
        }
      }
    }
  }

  TEST_CASE("transition between choices") {
    auto s = Setup::make("heisenberg_center");
    Transition same(*s->pbw, *s->pbw, 5);
    for (const auto& J : indices_up_to(2, 5)) CHECK(same.psi(sym(J)) == sym(J));

    auto alt = Setup::make("heisenberg_center", 5, 1);
    Transition t(*s->pbw, *alt->pbw, 5);
    CHECK(t.psi(sym(MultiIndex(2))) == sym(MultiIndex(2)));
    for (int k = 0; k < 2; ++k) CHECK(t.psi(sym(MultiIndex::unit(2, k))) == sym(MultiIndex::unit(2, k)));
    bool nontrivial = false;
    for (const auto& J : indices_up_to(2, 5)) {
      SymElem corr = difference(t.psi(sym(J)), sym(J));
      for (const auto& [K, c] : corr) CHECK(K.weight() < J.weight());
      nontrivial = nontrivial || !corr.empty();
      CHECK(t.psi_inv(t.psi(sym(J))) == sym(J));
    }
    CHECK(nontrivial);
    CHECK(check_psi_duality(t, 3).pass());
  }
}
