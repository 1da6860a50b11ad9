#include "artifact/lie_pair.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace artifact {

Matrix identity_matrix(int n) {
  Matrix m(n, ScalarVec(n, Scalar(0)));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

std::optional<Matrix> inverse(const Matrix& m) {
  const int n = static_cast<int>(m.size());
  Matrix a = m, inv = identity_matrix(n);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (sgn(a[i][col]) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    Scalar s = a[col][col];
    for (int j = 0; j < n; ++j) {
      a[col][j] /= s;
      inv[col][j] /= s;
    }
    for (int i = 0; i < n; ++i) {
      if (i == col || sgn(a[i][col]) == 0) continue;
      Scalar f = a[i][col];
      for (int j = 0; j < n; ++j) {
        a[i][j] -= f * a[col][j];
        inv[i][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

bool is_zero(const Tensor3& t) {
  for (const auto& m : t)
    for (const auto& row : m)
      for (const auto& x : row)
        if (sgn(x) != 0) return false;
  return true;
}

ScalarVec LiePair::basis_vector(int i) const {
  ScalarVec v(n, Scalar(0));
  v[i] = 1;
  return v;
}

ScalarVec LiePair::bracket(const ScalarVec& x, const ScalarVec& y) const {
  ScalarVec out(n, Scalar(0));
  for (int i = 0; i < n; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (int j = 0; j < n; ++j) {
      if (sgn(y[j]) == 0) continue;
      Scalar c = x[i] * y[j];
      for (int k = 0; k < n; ++k) out[k] += c * spec.bracket[i][j][k];
    }
  }
  return out;
}

ScalarVec LiePair::to_adapted(const ScalarVec& v) const {
  ScalarVec out(n, Scalar(0));
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i) out[l] += Yinv[l][i] * v[i];
  return out;
}

ScalarVec LiePair::from_adapted(const ScalarVec& v) const {
  ScalarVec out(n, Scalar(0));
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l) out[i] += Y[i][l] * v[l];
  return out;
}

ScalarVec LiePair::q(const ScalarVec& v) const {
  ScalarVec out(r);
  for (int m = 0; m < r; ++m) out[m] = v[cIdx[m]];
  return out;
}

ScalarVec LiePair::bott(int i, int b) const {
  ScalarVec jb(n);
  for (int k = 0; k < n; ++k) jb[k] = split[k][b];
  return q(bracket(basis_vector(aIdx[i]), jb));
}

ScalarVec LiePair::bott_on_a(int b, int i) const {
  ScalarVec jb(n);
  for (int k = 0; k < n; ++k) jb[k] = split[k][b];
  ScalarVec ad = to_adapted(bracket(jb, basis_vector(aIdx[i])));
  return ScalarVec(ad.begin(), ad.begin() + a);
}

bool LiePair::matched() const {
  for (int m = 0; m < r; ++m)
    for (int k = 0; k < r; ++k)
      for (int i = 0; i < a; ++i)
        if (sgn(cad[a + m][a + k][i]) != 0) return false;
  return true;
}

static std::string vec_str(const ScalarVec& v) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << to_string(v[i]);
  os << "]";
  return os.str();
}

ValidationResult validate_pair(const LiePairSpec& s) {
  ValidationResult res;
  auto fail = [&](std::string kind, std::vector<int> w, std::string detail) {
    res.issues.push_back({std::move(kind), std::move(w), std::move(detail)});
  };
  const int n = s.dimL;
  if (n < 1 || s.dimA < 0 || s.dimA >= n) {
    fail("dimension", {n, s.dimA}, "need 0 <= dimA < dimL");
    return res;
  }
  if (n - s.dimA > MultiIndex::kMaxRank || n > 16) {
    fail("dimension", {n, s.dimA}, "rank of B exceeds the supported maximum");
    return res;
  }
  if (static_cast<int>(s.aIndices.size()) != s.dimA) {
    fail("dimension", {}, "aIndices size differs from dimA");
    return res;
  }
  if (static_cast<int>(s.bracket.size()) != n) {
    fail("dimension", {}, "bracket table size differs from dimL");
    return res;
  }
  std::vector<int> aIdx = s.aIndices;
  std::sort(aIdx.begin(), aIdx.end());
  if (!aIdx.empty() &&
      (std::adjacent_find(aIdx.begin(), aIdx.end()) != aIdx.end() || aIdx.front() < 0 || aIdx.back() >= n)) {
    fail("dimension", aIdx, "aIndices must be distinct and in range");
    return res;
  }
  for (const auto& m : s.bracket) {
    if (static_cast<int>(m.size()) != n) {
      fail("dimension", {}, "bracket table must be dimL x dimL x dimL");
      return res;
    }
    for (const auto& row : m)
      if (static_cast<int>(row.size()) != n) {
        fail("dimension", {}, "bracket table must be dimL x dimL x dimL");
        return res;
      }
  }
  const auto& c = s.bracket;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (c[i][j][k] + c[j][i][k] != 0) {
          fail("antisymmetry", {i, j}, "[x_i,x_j] != -[x_j,x_i]");
          return res;
        }
  LiePair p;
  p.spec = s;
  p.n = n;
  p.a = s.dimA;
  p.r = n - s.dimA;
  p.aIdx = aIdx;
  for (int i = 0; i < n; ++i)
    if (!std::binary_search(aIdx.begin(), aIdx.end(), i)) p.cIdx.push_back(i);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        auto x = p.basis_vector(i), y = p.basis_vector(j), z = p.basis_vector(k);
        ScalarVec t1 = p.bracket(x, p.bracket(y, z)), t2 = p.bracket(y, p.bracket(z, x)),
                  t3 = p.bracket(z, p.bracket(x, y));
        for (int m = 0; m < n; ++m)
          if (t1[m] + t2[m] + t3[m] != 0) {
            ScalarVec sum(n);
            for (int q = 0; q < n; ++q) sum[q] = t1[q] + t2[q] + t3[q];
            fail("jacobi", {i, j, k}, "Jacobiator = " + vec_str(sum));
            goto jacobi_done;
          }
      }
jacobi_done:
  for (int i : aIdx)
    for (int j : aIdx) {
      auto b = p.bracket(p.basis_vector(i), p.basis_vector(j));
      for (int m : p.cIdx)
        if (sgn(b[m]) != 0) fail("subalgebra", {i, j}, "[a_i,a_j] leaves A: " + vec_str(b));
    }
  if (s.splitting) {
    p.split = *s.splitting;
    if (static_cast<int>(p.split.size()) != n) {
      fail("splitting", {}, "splitting must have dimL rows");
      return res;
    }
  } else {
    p.split.assign(n, ScalarVec(p.r, Scalar(0)));
    for (int m = 0; m < p.r; ++m) p.split[p.cIdx[m]][m] = 1;
  }
  for (int m = 0; m < p.r; ++m) {
    if (static_cast<int>(p.split[0].size()) != p.r) {
      fail("splitting", {}, "splitting must have dimL-dimA columns");
      return res;
    }
    for (int k = 0; k < p.r; ++k)
      if (p.split[p.cIdx[k]][m] != (k == m ? 1 : 0)) fail("splitting", {k, m}, "q(j(d_m)) != d_m");
  }
  if (!res.issues.empty()) return res;
  p.Y.assign(n, ScalarVec(n, Scalar(0)));
  for (int l = 0; l < p.a; ++l) p.Y[aIdx[l]][l] = 1;
  for (int m = 0; m < p.r; ++m)
    for (int i = 0; i < n; ++i) p.Y[i][p.a + m] = p.split[i][m];
  auto inv = inverse(p.Y);
  if (!inv) {
    fail("splitting", {}, "adapted basis is singular");
    return res;
  }
  p.Yinv = *inv;
  // p(j b) = 0 in adapted coordinates: A-part of j(d_m) must vanish.
  for (int m = 0; m < p.r; ++m) {
    ScalarVec jb(n);
    for (int i = 0; i < n; ++i) jb[i] = p.split[i][m];
    auto ad = p.to_adapted(jb);
    for (int l = 0; l < p.a; ++l)
      if (sgn(ad[l]) != 0) fail("splitting", {m, l}, "p(j(d_m)) != 0");
  }
  if (!res.issues.empty()) return res;
  p.cad.assign(n, Matrix(n, ScalarVec(n, Scalar(0))));
  for (int l = 0; l < n; ++l)
    for (int m = 0; m < n; ++m) {
      ScalarVec yl(n), ym(n);
      for (int i = 0; i < n; ++i) {
        yl[i] = p.Y[i][l];
        ym[i] = p.Y[i][m];
      }
      p.cad[l][m] = p.to_adapted(p.bracket(yl, ym));
    }
  res.pair = std::move(p);
  return res;
}

Tensor3 adapted_gamma(const LiePair& p, const Connection& conn) {
  Tensor3 g(p.n, Matrix(p.r, ScalarVec(p.r, Scalar(0))));
  for (int l = 0; l < p.n; ++l)
    for (int i = 0; i < p.n; ++i) {
      if (sgn(p.Y[i][l]) == 0) continue;
      for (int b = 0; b < p.r; ++b)
        for (int k = 0; k < p.r; ++k) g[l][b][k] += p.Y[i][l] * conn.gamma[i][b][k];
    }
  return g;
}

Connection connection_from_adapted(const LiePair& p, const Tensor3& g) {
  Connection c;
  c.gamma.assign(p.n, Matrix(p.r, ScalarVec(p.r, Scalar(0))));
  for (int i = 0; i < p.n; ++i)
    for (int l = 0; l < p.n; ++l) {
      if (sgn(p.Yinv[l][i]) == 0) continue;
      for (int b = 0; b < p.r; ++b)
        for (int k = 0; k < p.r; ++k) c.gamma[i][b][k] += p.Yinv[l][i] * g[l][b][k];
    }
  return c;
}

Connection default_connection(const LiePair& p) {
  Tensor3 g(p.n, Matrix(p.r, ScalarVec(p.r, Scalar(0))));
  for (int l = 0; l < p.a; ++l)
    for (int b = 0; b < p.r; ++b)
      for (int k = 0; k < p.r; ++k) g[l][b][k] = p.cad[l][p.a + b][p.a + k];
  for (int m = 0; m < p.r; ++m)
    for (int b = 0; b < p.r; ++b)
      for (int k = 0; k < p.r; ++k) g[p.a + m][b][k] = p.cad[p.a + m][p.a + b][p.a + k] / 2;
  return connection_from_adapted(p, g);
}

static ScalarVec nabla(const LiePair& p, const Connection& c, const ScalarVec& l, const ScalarVec& b) {
  ScalarVec out(p.r, Scalar(0));
  for (int i = 0; i < p.n; ++i) {
    if (sgn(l[i]) == 0) continue;
    for (int m = 0; m < p.r; ++m) {
      if (sgn(b[m]) == 0) continue;
      for (int k = 0; k < p.r; ++k) out[k] += l[i] * b[m] * c.gamma[i][m][k];
    }
  }
  return out;
}

Tensor3 torsion(const LiePair& p, const Connection& c) {
  Tensor3 t(p.n, Matrix(p.n, ScalarVec(p.r, Scalar(0))));
  for (int i = 0; i < p.n; ++i)
    for (int j = 0; j < p.n; ++j) {
      auto xi = p.basis_vector(i), xj = p.basis_vector(j);
      auto v1 = nabla(p, c, xi, p.q(xj)), v2 = nabla(p, c, xj, p.q(xi)), v3 = p.q(p.bracket(xi, xj));
      for (int k = 0; k < p.r; ++k) t[i][j][k] = v1[k] - v2[k] - v3[k];
    }
  return t;
}

std::vector<Tensor3> curvature(const LiePair& p, const Connection& c) {
  std::vector<Tensor3> R(p.n, Tensor3(p.n, Matrix(p.r, ScalarVec(p.r, Scalar(0)))));
  for (int i = 0; i < p.n; ++i)
    for (int j = 0; j < p.n; ++j)
      for (int b = 0; b < p.r; ++b) {
        auto xi = p.basis_vector(i), xj = p.basis_vector(j);
        ScalarVec eb(p.r, Scalar(0));
        eb[b] = 1;
        auto v1 = nabla(p, c, xi, nabla(p, c, xj, eb));
        auto v2 = nabla(p, c, xj, nabla(p, c, xi, eb));
        auto v3 = nabla(p, c, p.bracket(xi, xj), eb);
        for (int k = 0; k < p.r; ++k) R[i][j][b][k] = v1[k] - v2[k] - v3[k];
      }
  return R;
}

std::vector<PairIssue> check_connection(const LiePair& p, const Connection& c) {
  std::vector<PairIssue> issues;
  if (static_cast<int>(c.gamma.size()) != p.n) return {{"connection", {}, "Gamma must have dimL entries"}};
  for (const auto& m : c.gamma) {
    if (static_cast<int>(m.size()) != p.r) return {{"connection", {}, "Gamma must be dimL x r x r"}};
    for (const auto& row : m)
      if (static_cast<int>(row.size()) != p.r) return {{"connection", {}, "Gamma must be dimL x r x r"}};
  }
  for (int i = 0; i < p.a; ++i)
    for (int b = 0; b < p.r; ++b) {
      ScalarVec eb(p.r, Scalar(0));
      eb[b] = 1;
      if (nabla(p, c, p.basis_vector(p.aIdx[i]), eb) != p.bott(i, b))
        issues.push_back({"bott-extension", {p.aIdx[i], b}, "nabla_a differs from the Bott connection"});
    }
  auto t = torsion(p, c);
  for (int i = 0; i < p.n; ++i)
    for (int j = 0; j < p.n; ++j)
      for (int k = 0; k < p.r; ++k)
        if (sgn(t[i][j][k]) != 0) {
          issues.push_back({"torsion", {i, j, k}, "T(x_i,x_j) has component " + to_string(t[i][j][k])});
          return issues;
        }
  return issues;
}

int degree(const TSmallKey& k) { return popcount(k.aMask) + popcount(k.coef) - 1; }

static Vec<Mask> ce_differential(const LiePair& p, Mask form, int limit) {
  Vec<Mask> out;
  for (Mask rest = form; rest; rest &= rest - 1) {
    int k = std::countr_zero(rest);
    Mask left = form & ((Mask(1) << k) - 1);
    Mask right = form & ~((Mask(2) << k) - 1);
    int pos = parity_sign(popcount(left));
    for (int i = 0; i < limit; ++i)
      for (int j = i + 1; j < limit; ++j) {
        const Scalar& cc = p.cad[i][j][k];
        if (sgn(cc) == 0) continue;
        Mask pair = (Mask(1) << i) | (Mask(1) << j);
        int s1 = merge_sign(left, pair);
        if (!s1) continue;
        int s2 = merge_sign(left | pair, right);
        if (!s2) continue;
        add_term(out, left | pair | right, Scalar(-pos * s1 * s2) * cc);
      }
  }
  return out;
}

Vec<Mask> d_A(const LiePair& p, Mask aMask) { return ce_differential(p, aMask, p.a); }
Vec<Mask> d_CE(const LiePair& p, Mask form) { return ce_differential(p, form, p.n); }

Vec<TSmallKey> d_A_bott(const LiePair& p, const TSmallKey& x) {
  Vec<TSmallKey> out;
  for (const auto& [m, c] : d_A(p, x.aMask)) add_term(out, TSmallKey{m, x.coef}, c);
  for (int j = 0; j < p.a; ++j) {
    int s0 = merge_sign(Mask(1) << j, x.aMask);
    if (!s0) continue;
    Mask form = x.aMask | (Mask(1) << j);
    for (Mask rest = x.coef; rest; rest &= rest - 1) {
      int b = std::countr_zero(rest);
      Mask others = x.coef & ~(Mask(1) << b);
      int sb = front_sign(x.coef, b);
      auto v = p.bott(j, b);
      for (int k = 0; k < p.r; ++k) {
        if (sgn(v[k]) == 0) continue;
        int sk = merge_sign(Mask(1) << k, others);
        if (!sk) continue;
        add_term(out, TSmallKey{form, others | (Mask(1) << k)}, Scalar(s0 * sb * sk) * v[k]);
      }
    }
  }
  return out;
}

}  // namespace artifact
