#pragma once
#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "artifact/contraction_engine.hpp"
#include "artifact/lie_pair.hpp"

namespace artifact {

// Incremental exact row echelon form. Each stored row remembers its expression in the
// accepted generators, so reducing a vector also yields its coordinates.
class Echelon {
 public:
  explicit Echelon(int dim) : dim_(dim) {}
  // Residual of v after elimination; coords (sized to the generator count) receive the
  // coefficients of the eliminated part.
  ScalarVec reduce(ScalarVec v, ScalarVec* coords = nullptr) const;
  // Accepts v as a new generator unless it lies in the current span.
  bool add(const ScalarVec& v);
  int rank() const { return static_cast<int>(rows_.size()); }

 private:
  int dim_;
  std::vector<ScalarVec> rows_, tags_;
  std::vector<int> pivots_;
};

// Basis of {x : m x = 0}, m given by rows over `cols` unknowns.
std::vector<ScalarVec> nullspace(const Matrix& m, int cols);

// A finite graded complex: cochain bases per degree and a differential on basis keys.
// `level` filters the bases into an increasing chain; representatives are taken at the
// lowest level where a class appears.
template <class K>
struct GradedComplex {
  std::map<int, std::vector<K>> cochains;
  std::function<Vec<K>(const K&)> d;
  std::function<int(const K&)> level = [](const K&) { return 0; };
};

class CohomologyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

template <class K>
class Cohomology {
 public:
  // Throws CohomologyError when d leaves the tabulated cochains or d^2 != 0.
  explicit Cohomology(GradedComplex<K> c) : c_(std::move(c)) {
    for (const auto& [n, basis] : c_.cochains) {
      Degree& g = deg_[n];
      g.basis = basis;
      for (std::size_t i = 0; i < basis.size(); ++i) g.index[basis[i]] = static_cast<int>(i);
    }
    for (auto& [n, g] : deg_) {
      g.dmat.assign(g.basis.size(), {});
      for (std::size_t i = 0; i < g.basis.size(); ++i) g.dmat[i] = c_.d(g.basis[i]);
    }
    for (const auto& [n, g] : deg_) {
      if (!deg_.count(n + 1)) continue;
      const Degree& up = deg_.at(n + 1);
      for (const auto& col : g.dmat) {
        dense(n + 1, col);  // closure
        Vec<K> dd;
        for (const auto& [k, v] : col) axpy(dd, v, up.dmat[up.index.at(k)]);
        if (!dd.empty()) throw CohomologyError("d^2 != 0 on a basis element");
      }
    }
    for (auto& [n, g] : deg_) build(n, g);
  }

  std::vector<int> degrees() const {
    std::vector<int> out;
    for (const auto& [n, g] : deg_) out.push_back(n);
    return out;
  }
  // Only degrees whose successor is tabulated have a verified kernel.
  bool complete(int n) const { return deg_.count(n) && deg_.count(n + 1); }
  int dim(int n) const { return static_cast<int>(deg_.at(n).reps.size()); }
  int dim_cochains(int n) const { return static_cast<int>(deg_.at(n).basis.size()); }
  int dim_kernel(int n) const { return deg_.at(n).kerDim; }
  int dim_image(int n) const { return deg_.at(n).imDim; }
  const std::vector<Vec<K>>& representatives(int n) const { return deg_.at(n).reps; }

  // Degree of a homogeneous element, nullopt if it leaves the tabulated range or mixes degrees.
  std::optional<int> degree_of(const Vec<K>& z) const {
    std::optional<int> out;
    for (const auto& [k, v] : z) {
      std::optional<int> dk;
      for (const auto& [n, g] : deg_)
        if (g.index.count(k)) dk = n;
      if (!dk || (out && *out != *dk)) return std::nullopt;
      out = dk;
    }
    return out;
  }

  // Coordinates of the class of a cocycle z of degree n; nullopt if z is not a cocycle.
  std::optional<ScalarVec> classify(int n, const Vec<K>& z) const {
    const Degree& g = deg_.at(n);
    if (!complete(n)) return std::nullopt;
    Vec<K> dz;
    for (const auto& [k, v] : z) axpy(dz, v, g.dmat[g.index.at(k)]);
    if (!dz.empty()) return std::nullopt;
    ScalarVec coords;
    ScalarVec res = g.ech.reduce(dense(n, z), &coords);
    for (const auto& x : res)
      if (sgn(x) != 0) throw CohomologyError("cocycle outside the span of image and representatives");
    ScalarVec h(g.reps.size());
    for (std::size_t i = 0; i < h.size(); ++i) h[i] = coords[g.imDim + i];
    return h;
  }

  // Zero class test for a degree-n element; false when it is not even a cocycle.
  bool is_coboundary(int n, const Vec<K>& z) const {
    if (z.empty()) return true;
    auto h = classify(n, z);
    if (!h) return false;
    for (const auto& x : *h)
      if (sgn(x) != 0) return false;
    return true;
  }

  Vec<K> section(int n, const ScalarVec& coords) const {
    Vec<K> out;
    const auto& reps = deg_.at(n).reps;
    for (std::size_t i = 0; i < coords.size(); ++i) axpy(out, coords[i], reps[i]);
    return out;
  }

  // d of a random combination of degree n-1 cochains (zero when n-1 is not tabulated).
  Vec<K> random_coboundary(int n, std::mt19937_64& rng) const {
    Vec<K> out;
    auto it = deg_.find(n - 1);
    if (it == deg_.end()) return out;
    std::uniform_int_distribution<int> dist(-3, 3);
    for (const auto& col : it->second.dmat) axpy(out, Scalar(dist(rng)), col);
    return out;
  }

  // d of every degree n-1 basis cochain with nonzero image.
  std::vector<Vec<K>> coboundaries(int n) const {
    std::vector<Vec<K>> out;
    if (auto it = deg_.find(n - 1); it != deg_.end())
      for (const auto& col : it->second.dmat)
        if (!col.empty()) out.push_back(col);
    return out;
  }

  const std::function<Vec<K>(const K&)>& differential() const { return c_.d; }

 private:
  struct Degree {
    std::vector<K> basis;
    std::map<K, int> index;
    std::vector<Vec<K>> dmat;  // d of each basis element
    Echelon ech{0};
    std::vector<Vec<K>> reps;
    int kerDim = 0, imDim = 0;
  };

  ScalarVec dense(int n, const Vec<K>& z) const {
    auto it = deg_.find(n);
    if (it == deg_.end()) throw CohomologyError("element outside the tabulated degrees");
    ScalarVec v(it->second.basis.size());
    for (const auto& [k, x] : z) {
      auto jt = it->second.index.find(k);
      if (jt == it->second.index.end()) throw CohomologyError("d leaves the tabulated cochains");
      v[jt->second] = x;
    }
    return v;
  }

  void build(int n, Degree& g) {
    const int dim = static_cast<int>(g.basis.size());
    g.ech = Echelon(dim);
    if (auto prev = deg_.find(n - 1); prev != deg_.end())
      for (const auto& col : prev->second.dmat) g.ech.add(dense(n, col));
    g.imDim = g.ech.rank();
    if (!complete(n)) return;
    std::vector<int> levels;
    for (const auto& k : g.basis) levels.push_back(c_.level(k));
    std::vector<int> distinct = levels;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    const int rows = static_cast<int>(deg_.at(n + 1).basis.size());
    for (int lv : distinct) {
      std::vector<int> cols;
      for (int i = 0; i < dim; ++i)
        if (levels[i] <= lv) cols.push_back(i);
      Matrix m(rows, ScalarVec(cols.size()));
      for (std::size_t j = 0; j < cols.size(); ++j)
        for (const auto& [k, v] : g.dmat[cols[j]]) m[deg_.at(n + 1).index.at(k)][j] = v;
      for (const auto& x : nullspace(m, static_cast<int>(cols.size()))) {
        ScalarVec full(dim);
        for (std::size_t j = 0; j < cols.size(); ++j) full[cols[j]] = x[j];
        if (g.ech.add(full)) {
          Vec<K> rep;
          for (int i = 0; i < dim; ++i) add_term(rep, g.basis[i], full[i]);
          g.reps.push_back(std::move(rep));
        }
      }
    }
    g.kerDim = g.imDim + static_cast<int>(g.reps.size());
  }

  GradedComplex<K> c_;
  std::map<int, Degree> deg_;
};

template <class K>
using Bilinear = std::function<Vec<K>(const K&, const K&)>;

template <class K>
Vec<K> bilinear(const Bilinear<K>& b, const Vec<K>& x, const Vec<K>& y) {
  Vec<K> out;
  for (const auto& [kx, cx] : x)
    for (const auto& [ky, cy] : y) axpy(out, cx * cy, b(kx, ky));
  return out;
}

struct ClassRef {
  int degree = 0;
  int index = 0;
  friend auto operator<=>(const ClassRef&, const ClassRef&) = default;
};

// Products of basis classes: (x, y) -> class of the output in degree `degree`.
struct ClassTable {
  std::map<std::pair<ClassRef, ClassRef>, std::pair<int, ScalarVec>> entries;
};

struct InducedStructure {
  ClassTable bracket, cup;
  long outOfRange = 0;  // products leaving the tabulated cochains or the truncation budget
  std::vector<IdentityCheck> checks;
};

namespace detail {

inline void fail(IdentityCheck& c, const std::string& w) {
  if (!c.failures) c.witness = w;
  ++c.failures;
}

inline bool all_zero(const ScalarVec& v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

}  // namespace detail

// Status of a product as seen from cohomology.
enum class ClassStatus { Ok, OutOfRange, NotCocycle };

template <class K>
ClassStatus classify_product(const Cohomology<K>& H, const Vec<K>& z, int expectedDegree, ScalarVec& out) {
  if (z.empty()) {
    out.assign(H.complete(expectedDegree) ? H.dim(expectedDegree) : 0, Scalar(0));
    return ClassStatus::Ok;
  }
  auto n = H.degree_of(z);
  if (!n || !H.complete(*n)) return ClassStatus::OutOfRange;
  auto h = H.classify(*n, z);
  if (!h) return ClassStatus::NotCocycle;
  out = *h;
  return ClassStatus::Ok;
}

// Evaluates a bilinear operation that may refuse an input (budget) by throwing FiltrationError.
template <class K>
std::optional<Vec<K>> try_bilinear(const Bilinear<K>& b, const Vec<K>& x, const Vec<K>& y) {
  try {
    return bilinear(b, x, y);
  } catch (const FiltrationError&) {
    return std::nullopt;
  }
}

// Induced bracket (degree 0 in the small-space grading n) and cup (degree +1 in n, degree 0
// in G = n + 1) on cohomology, with the descent and Gerstenhaber identities checked on classes.
template <class K>
InducedStructure induced_structure(const Cohomology<K>& H, const Bilinear<K>& bracket, const Bilinear<K>& cupOp,
                                   std::uint64_t seed, int maxTriples = 4000) {
  InducedStructure out;
  IdentityCheck cocycle("products of cocycles are cocycles");
  IdentityCheck descent("products with a coboundary are coboundaries");
  IdentityCheck reps("bracket independent of representatives");
  IdentityCheck antisym("graded antisymmetry on H");
  IdentityCheck jacobi("graded Jacobi on H");
  IdentityCheck commut("cup graded commutative on H");
  IdentityCheck leibniz("bracket is a biderivation of cup on H");
  std::mt19937_64 rng(seed);
  std::vector<ClassRef> classes;
  for (int n : H.degrees())
    if (H.complete(n))
      for (int i = 0; i < H.dim(n); ++i) classes.push_back({n, i});
  auto rep = [&](const ClassRef& c) { return H.representatives(c.degree)[c.index]; };
  auto name = [](const ClassRef& c) { return "H" + std::to_string(c.degree) + "[" + std::to_string(c.index) + "]"; };
  auto zero_class = [&](const std::optional<Vec<K>>& z) -> std::optional<bool> {
    if (!z) return std::nullopt;
    ScalarVec h;
    auto st = classify_product(H, *z, 0, h);
    if (st == ClassStatus::OutOfRange) return std::nullopt;
    return st == ClassStatus::Ok && detail::all_zero(h);
  };
  // Tables and descent.
  for (const auto& x : classes)
    for (const auto& y : classes)
      for (int which = 0; which < 2; ++which) {
        const Bilinear<K>& op = which == 0 ? bracket : cupOp;
        const int outDeg = x.degree + y.degree + which;
        auto z = try_bilinear(op, rep(x), rep(y));
        ScalarVec h;
        if (!z || classify_product(H, *z, outDeg, h) == ClassStatus::OutOfRange) {
          ++out.outOfRange;
          continue;
        }
        ++cocycle.checked;
        if (classify_product(H, *z, outDeg, h) == ClassStatus::NotCocycle) {
          detail::fail(cocycle, name(x) + " , " + name(y));
          continue;
        }
        (which == 0 ? out.bracket : out.cup).entries[{x, y}] = {outDeg, h};
        if (which == 0) {
          ++reps.checked;
          Vec<K> x2 = rep(x), y2 = rep(y);
          axpy(x2, Scalar(1), H.random_coboundary(x.degree, rng));
          axpy(y2, Scalar(1), H.random_coboundary(y.degree, rng));
          auto z2 = try_bilinear(op, x2, y2);
          ScalarVec h2;
          if (z2 && classify_product(H, *z2, outDeg, h2) == ClassStatus::Ok && h2 != h)
            detail::fail(reps, name(x) + " , " + name(y));
        }
      }
  for (const auto& x : classes)
    for (int m : H.degrees()) {
      if (!H.complete(m)) continue;
      for (const Vec<K>& b : H.coboundaries(m))
        for (int which = 0; which < 2; ++which) {
          const Bilinear<K>& op = which == 0 ? bracket : cupOp;
          for (const auto& z : {try_bilinear(op, rep(x), b), try_bilinear(op, b, rep(x))}) {
            auto r = zero_class(z);
            if (!r) continue;
            ++descent.checked;
            if (!*r)
              detail::fail(descent, name(x) + (which ? " cup d(.)" : " bracket d(.)") + " in degree " + std::to_string(m));
          }
        }
    }
  // Identities on classes, through representatives.
  auto sgnf = [](int e) { return Scalar(parity_sign(e)); };
  for (const auto& x : classes)
    for (const auto& y : classes) {
      const int nx = x.degree, ny = y.degree, gx = nx + 1, gy = ny + 1;
      auto xy = try_bilinear(bracket, rep(x), rep(y)), yx = try_bilinear(bracket, rep(y), rep(x));
      if (xy && yx) {
        Vec<K> v = *xy;
        axpy(v, sgnf(nx * ny), *yx);
        if (auto r = zero_class(std::optional<Vec<K>>(v)); r) {
          ++antisym.checked;
          if (!*r) detail::fail(antisym, name(x) + " , " + name(y));
        }
      }
      auto cxy = try_bilinear(cupOp, rep(x), rep(y)), cyx = try_bilinear(cupOp, rep(y), rep(x));
      if (cxy && cyx) {
        Vec<K> v = *cxy;
        axpy(v, -sgnf(gx * gy), *cyx);
        if (auto r = zero_class(std::optional<Vec<K>>(v)); r) {
          ++commut.checked;
          if (!*r) detail::fail(commut, name(x) + " , " + name(y));
        }
      }
    }
  long triples = 0;
  for (const auto& x : classes)
    for (const auto& y : classes)
      for (const auto& z : classes) {
        if (++triples > maxTriples) break;
        const int nx = x.degree, ny = y.degree, gy = ny + 1;
        const Vec<K> X = rep(x), Y = rep(y), Z = rep(z);
        // [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]]
        auto yz = try_bilinear(bracket, Y, Z), xy = try_bilinear(bracket, X, Y), xz = try_bilinear(bracket, X, Z);
        if (yz && xy && xz) {
          auto a = try_bilinear(bracket, X, *yz), b = try_bilinear(bracket, *xy, Z), c = try_bilinear(bracket, Y, *xz);
          if (a && b && c) {
            Vec<K> v = *a;
            axpy(v, Scalar(-1), *b);
            axpy(v, -sgnf(nx * ny), *c);
            if (auto r = zero_class(std::optional<Vec<K>>(v)); r) {
              ++jacobi.checked;
              if (!*r) detail::fail(jacobi, name(x) + " , " + name(y) + " , " + name(z));
            }
          }
        }
        // [x, y cup z] = [x,y] cup z + (-1)^{n_x G_y} y cup [x,z]
        auto ycz = try_bilinear(cupOp, Y, Z);
        if (ycz && xy && xz) {
          auto a = try_bilinear(bracket, X, *ycz), b = try_bilinear(cupOp, *xy, Z), c = try_bilinear(cupOp, Y, *xz);
          if (a && b && c) {
            Vec<K> v = *a;
            axpy(v, Scalar(-1), *b);
            axpy(v, -sgnf(nx * gy), *c);
            if (auto r = zero_class(std::optional<Vec<K>>(v)); r) {
              ++leibniz.checked;
              if (!*r) detail::fail(leibniz, name(x) + " , " + name(y) + " , " + name(z));
            }
          }
        }
      }
  out.checks = {cocycle, descent, reps, antisym, jacobi, commut, leibniz};
  return out;
}

// Transport of a bracket table along per-degree automorphisms T of H:
// (T^{-1} . b)(x, y) = T^{-1} b(T x, T y). Missing entries count as unavailable.
inline std::optional<ClassTable> transport(const ClassTable& t, const std::map<int, Matrix>& T,
                                           const std::map<int, Matrix>& Tinv, const std::map<int, int>& dims) {
  ClassTable out;
  for (const auto& [key, val] : t.entries) {
    const auto& [x, y] = key;
    const int outDeg = val.first;
    ScalarVec acc(dims.count(outDeg) ? dims.at(outDeg) : 0);
    const Matrix& Tx = T.at(x.degree);
    const Matrix& Ty = T.at(y.degree);
    bool ok = true;
    for (int a = 0; a < dims.at(x.degree) && ok; ++a) {
      if (sgn(Tx[a][x.index]) == 0) continue;
      for (int b = 0; b < dims.at(y.degree); ++b) {
        if (sgn(Ty[b][y.index]) == 0) continue;
        auto it = t.entries.find({ClassRef{x.degree, a}, ClassRef{y.degree, b}});
        if (it == t.entries.end()) {
          ok = false;
          break;
        }
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += Tx[a][x.index] * Ty[b][y.index] * it->second.second[i];
      }
    }
    if (!ok) return std::nullopt;
    ScalarVec res(acc.size());
    if (!acc.empty()) {
      const Matrix& Ti = Tinv.at(outDeg);
      for (std::size_t i = 0; i < acc.size(); ++i)
        for (std::size_t j = 0; j < acc.size(); ++j) res[i] += Ti[i][j] * acc[j];
    }
    out.entries[key] = {outDeg, res};
  }
  return out;
}

// Entry-by-entry comparison over the common keys.
inline IdentityCheck compare_tables(const std::string& what, const ClassTable& a, const ClassTable& b) {
  IdentityCheck chk(what);
  for (const auto& [key, val] : a.entries) {
    auto it = b.entries.find(key);
    if (it == b.entries.end()) continue;
    ++chk.checked;
    if (it->second != val)
      detail::fail(chk, "H" + std::to_string(key.first.degree) + "[" + std::to_string(key.first.index) + "] , H" +
                            std::to_string(key.second.degree) + "[" + std::to_string(key.second.index) + "]");
  }
  return chk;
}

// Small complexes: Lambda A^v (x) Lambda^{k+1} B with d_A^Bott, and the order <= maxOrder part
// of Lambda A^v (x) (U/UA)^{(x) k+1} with d_A^U + (-1)^{p+k} d_H in degrees <= maxDegree + 1.
GradedComplex<TSmallKey> t_complex(const LiePair& p);
GradedComplex<DSmallKey> d_complex(const LiePair& p, const Enveloping& env, int maxOrder, int maxDegree);

}  // namespace artifact
