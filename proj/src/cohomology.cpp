#include "artifact/cohomology.hpp"

namespace artifact {

ScalarVec Echelon::reduce(ScalarVec v, ScalarVec* coords) const {
  if (coords) coords->assign(tags_.empty() ? 0 : tags_.back().size(), Scalar(0));
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Scalar& x = v[pivots_[i]];
    if (sgn(x) == 0) continue;
    const Scalar f = x / rows_[i][pivots_[i]];
    for (int j = 0; j < dim_; ++j)
      if (sgn(rows_[i][j]) != 0) v[j] -= f * rows_[i][j];
    if (coords)
      for (std::size_t g = 0; g < tags_[i].size(); ++g)
        if (sgn(tags_[i][g]) != 0) (*coords)[g] += f * tags_[i][g];
  }
  return v;
}

bool Echelon::add(const ScalarVec& v) {
  ScalarVec coords;
  ScalarVec res = reduce(v, &coords);
  int pivot = -1;
  for (int j = 0; j < dim_; ++j)
    if (sgn(res[j]) != 0) {
      pivot = j;
      break;
    }
  if (pivot < 0) return false;
  // res = v - sum coords_g gen_g, with v the new generator.
  for (auto& t : tags_) t.push_back(Scalar(0));
  ScalarVec tag(coords.size() + 1);
  for (std::size_t g = 0; g < coords.size(); ++g) tag[g] = -coords[g];
  tag.back() = 1;
  // Each row vanishes at all earlier pivots, so reducing in insertion order is exact.
  rows_.push_back(std::move(res));
  tags_.push_back(std::move(tag));
  pivots_.push_back(pivot);
  return true;
}

std::vector<ScalarVec> nullspace(const Matrix& m, int cols) {
  Matrix a = m;
  const int rows = static_cast<int>(a.size());
  std::vector<int> pivCol;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = r;
    while (p < rows && sgn(a[p][c]) == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    const Scalar inv = Scalar(1) / a[r][c];
    for (int j = c; j < cols; ++j) a[r][j] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || sgn(a[i][c]) == 0) continue;
      const Scalar f = a[i][c];
      for (int j = c; j < cols; ++j)
        if (sgn(a[r][j]) != 0) a[i][j] -= f * a[r][j];
    }
    pivCol.push_back(c);
    ++r;
  }
  std::vector<bool> isPivot(cols, false);
  for (int c : pivCol) isPivot[c] = true;
  std::vector<ScalarVec> out;
  for (int free = 0; free < cols; ++free) {
    if (isPivot[free]) continue;
    ScalarVec x(cols);
    x[free] = 1;
    for (std::size_t i = 0; i < pivCol.size(); ++i) x[pivCol[i]] = -a[i][free];
    out.push_back(std::move(x));
  }
  return out;
}

GradedComplex<TSmallKey> t_complex(const LiePair& p) {
  GradedComplex<TSmallKey> c;
  for (const auto& k : tsmall_basis(p.frame(0))) c.cochains[degree(k)].push_back(k);
  c.cochains[p.a + p.r];  // empty top so every nonempty degree is complete
  c.d = [&p](const TSmallKey& k) { return d_A_bott(p, k); };
  return c;
}

GradedComplex<DSmallKey> d_complex(const LiePair& p, const Enveloping& env, int maxOrder, int maxDegree) {
  GradedComplex<DSmallKey> c;
  for (const auto& k : dsmall_basis(p.frame(0), maxDegree + 1, maxOrder, maxOrder))
    if (degree(k) <= maxDegree + 1) c.cochains[degree(k)].push_back(k);
  c.d = [&p, &env](const DSmallKey& k) { return dpoly_small_differential(p, env, k); };
  c.level = [](const DSmallKey& k) { return order(k); };
  return c;
}

}  // namespace artifact
