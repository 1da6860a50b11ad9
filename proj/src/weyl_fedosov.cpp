#include "artifact/weyl_fedosov.hpp"

#include <stdexcept>

#include "artifact/poly_structures.hpp"

namespace artifact {

WeylElement delta(const Frame& f, const WeylElement& x) { return delta_tilde(f, x); }
WeylElement h_homotopy(const Frame& f, const WeylElement& x) { return h_tilde(f, x); }

Vec<Mask> sigma_proj(const Frame& f, const WeylElement& x) {
  Vec<Mask> out;
  for (const auto& [w, c] : x)
    if (sigma_keeps(f, w)) add_term(out, w.form, c);
  return out;
}

WeylElement tau_incl(const Frame& f, const Vec<Mask>& alpha) {
  WeylElement out;
  for (const auto& [m, c] : alpha) add_term(out, Word{m, MultiIndex(f.r)}, c);
  return out;
}

WeylElement as_weyl(const PolyVector& x) {
  WeylElement out;
  for (const auto& [k, c] : x) {
    if (k.coef != 0) throw std::logic_error("as_weyl: polyvector of positive arity");
    add_term(out, k.w, c);
  }
  return out;
}

PolyVector from_weyl(const WeylElement& x) {
  PolyVector out;
  for (const auto& [w, c] : x) add_term(out, PVKey{w, 0}, c);
  return out;
}

PolyVector delta_field(const Frame& f) {
  PolyVector out;
  for (int m = 0; m < f.r; ++m) add_term(out, PVKey{Word{Mask(1) << f.b_bit(m), MultiIndex(f.r)}, Mask(1) << m}, Scalar(1));
  return out;
}

PolyVector nabla_field(const LiePair& p, const Tensor3& gam, const Frame& f) {
  PolyVector out;
  for (int l = 0; l < p.n; ++l)
    for (int c = 0; c < p.r; ++c)
      for (int k = 0; k < p.r; ++k)
        if (sgn(gam[l][c][k]) != 0)
          add_term(out, PVKey{Word{Mask(1) << l, MultiIndex::unit(f.r, c)}, Mask(1) << k}, -gam[l][c][k]);
  return out;
}

PolyVector FedosovData::rho() const {
  PolyVector out = nablaField;
  axpy(out, Scalar(1), X);
  return out;
}

PolyVector FedosovData::theta() const {
  PolyVector out = rho();
  axpy(out, Scalar(-1), deltaField);
  return out;
}

PolyVector curvature_field(const FedosovData& fd) {
  PolyVector R = ce_tilde(*fd.pair, fd.nablaField);
  axpy(R, Scalar(1, 2), schouten(fd.frame, fd.nablaField, fd.nablaField));
  return R;
}

FedosovData solve_fedosov(const LiePair& pair, const Connection& conn, int N) {
  FedosovData fd;
  fd.pair = &pair;
  fd.frame = pair.frame(N);
  fd.dframe = fd.frame;
  fd.dframe.byExcess = true;
  fd.conn = conn;
  fd.gam = adapted_gamma(pair, conn);
  fd.deltaField = delta_field(fd.frame);
  fd.nablaField = nabla_field(pair, fd.gam, fd.frame);
  const PolyVector R = curvature_field(fd);
  PolyVector X;
  // Each pass fixes one more symmetric weight; N+1 passes must reach a fixed point.
  for (int it = 1; it <= N + 1; ++it) {
    PolyVector src = R;
    axpy(src, Scalar(1), ce_tilde(pair, X));
    axpy(src, Scalar(1), schouten(fd.frame, fd.nablaField, X));
    axpy(src, Scalar(1, 2), schouten(fd.frame, X, X));
    PolyVector next = h_tilde(fd.frame, src);
    fd.iterations = it;
    if (next == X) {
      fd.X = std::move(X);
      return fd;
    }
    X = std::move(next);
  }
  throw std::runtime_error("solve_fedosov: iteration did not stabilize within N+1 passes");
}

WeylElement d_L_nabla(const FedosovData& fd, const WeylElement& x) {
  PolyVector px = from_weyl(x);
  PolyVector out = ce_tilde(*fd.pair, px);
  axpy(out, Scalar(1), schouten(fd.frame, fd.nablaField, px));
  return as_weyl(out);
}

WeylElement apply_Q(const FedosovData& fd, const WeylElement& x) { return as_weyl(lie_derivative_Q(fd, from_weyl(x))); }

PolyVector maurer_cartan_defect(const FedosovData& fd) {
  PolyVector th = fd.theta();
  PolyVector out = ce_tilde(*fd.pair, th);
  axpy(out, Scalar(1, 2), schouten(fd.frame, th, th));
  return out;
}

}  // namespace artifact
