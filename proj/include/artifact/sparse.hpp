#pragma once
#include <map>
#include <utility>

#include "artifact/scalar.hpp"

namespace artifact {

template <class K>
using Vec = std::map<K, Scalar>;

template <class K>
void add_term(Vec<K>& v, const K& key, const Scalar& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = v.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) v.erase(it);
  }
}

// y += a * x
template <class K>
void axpy(Vec<K>& y, const Scalar& a, const Vec<K>& x) {
  if (sgn(a) == 0) return;
  for (const auto& [k, c] : x) add_term(y, k, a * c);
}

template <class K>
Vec<K> scaled(const Vec<K>& x, const Scalar& a) {
  Vec<K> out;
  axpy(out, a, x);
  return out;
}

template <class K>
Vec<K> difference(const Vec<K>& x, const Vec<K>& y) {
  Vec<K> out = x;
  axpy(out, Scalar(-1), y);
  return out;
}

// Extends a key-level map linearly.
template <class K2, class K1, class F>
Vec<K2> apply_linear(const Vec<K1>& x, F&& f) {
  Vec<K2> out;
  for (const auto& [k, c] : x) axpy(out, c, f(k));
  return out;
}

template <class K, class Pred>
Vec<K> filtered(const Vec<K>& x, Pred&& keep) {
  Vec<K> out;
  for (const auto& [k, c] : x)
    if (keep(k)) out.emplace(k, c);
  return out;
}

template <class K>
Vec<K> single(const K& k, const Scalar& c = Scalar(1)) {
  Vec<K> v;
  add_term(v, k, c);
  return v;
}

}  // namespace artifact
