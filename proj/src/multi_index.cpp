#include "artifact/multi_index.hpp"

#include <stdexcept>

namespace artifact {

MultiIndex::MultiIndex(int rank, std::initializer_list<int> entries) : r(static_cast<std::uint8_t>(rank)) {
  if (static_cast<int>(entries.size()) != rank) throw std::invalid_argument("MultiIndex: entry count != rank");
  int i = 0;
  for (int v : entries) e[i++] = static_cast<std::uint8_t>(v);
}

MultiIndex MultiIndex::unit(int rank, int m) {
  MultiIndex J(rank);
  J.e[m] = 1;
  return J;
}

int MultiIndex::weight() const {
  int s = 0;
  for (int i = 0; i < r; ++i) s += e[i];
  return s;
}

bool MultiIndex::precedes(const MultiIndex& o) const {
  for (int i = 0; i < r; ++i)
    if (e[i] > o.e[i]) return false;
  return true;
}

static Scalar fact(int k) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k));
  return Scalar(f);
}

Scalar MultiIndex::factorial() const {
  Scalar p = 1;
  for (int i = 0; i < r; ++i) p *= fact(e[i]);
  return p;
}

std::string MultiIndex::str() const {
  std::string s = "(";
  for (int i = 0; i < r; ++i) {
    if (i) s += ",";
    s += std::to_string(e[i]);
  }
  return s + ")";
}

MultiIndex operator+(MultiIndex a, const MultiIndex& b) {
  for (int i = 0; i < a.r; ++i) a.e[i] = static_cast<std::uint8_t>(a.e[i] + b.e[i]);
  return a;
}

MultiIndex operator-(MultiIndex a, const MultiIndex& b) {
  for (int i = 0; i < a.r; ++i) {
    if (b.e[i] > a.e[i]) throw std::logic_error("MultiIndex subtraction underflow");
    a.e[i] = static_cast<std::uint8_t>(a.e[i] - b.e[i]);
  }
  return a;
}

static void fill(int rank, int pos, int left, MultiIndex& cur, std::vector<MultiIndex>& out) {
  if (pos == rank - 1) {
    cur.e[pos] = static_cast<std::uint8_t>(left);
    out.push_back(cur);
    return;
  }
  for (int v = left; v >= 0; --v) {
    cur.e[pos] = static_cast<std::uint8_t>(v);
    fill(rank, pos + 1, left - v, cur, out);
  }
}

std::vector<MultiIndex> indices_of_weight(int rank, int w) {
  std::vector<MultiIndex> out;
  if (w < 0) return out;
  MultiIndex cur(rank);
  if (rank == 0) {
    if (w == 0) out.push_back(cur);
    return out;
  }
  fill(rank, 0, w, cur, out);
  return out;
}

std::vector<MultiIndex> indices_up_to(int rank, int w) {
  std::vector<MultiIndex> out;
  for (int k = 0; k <= w; ++k) {
    auto part = indices_of_weight(rank, k);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

Scalar binomial(const MultiIndex& J, const MultiIndex& K) {
  if (!K.precedes(J)) return 0;
  return J.factorial() / (K.factorial() * (J - K).factorial());
}

Scalar falling(const MultiIndex& K, const MultiIndex& J) {
  if (!J.precedes(K)) return 0;
  return K.factorial() / (K - J).factorial();
}

static void compose(const MultiIndex& rest, int parts, std::vector<MultiIndex>& cur, std::vector<Composition>& out,
                    const Scalar& total) {
  if (parts == 1) {
    cur.push_back(rest);
    Scalar c = total;
    for (const auto& p : cur) c /= p.factorial();
    out.push_back({cur, c});
    cur.pop_back();
    return;
  }
  // enumerate all P preceding rest
  MultiIndex P(rest.r);
  while (true) {
    cur.push_back(P);
    compose(rest - P, parts - 1, cur, out, total);
    cur.pop_back();
    int i = 0;
    while (i < rest.r && P.e[i] == rest.e[i]) P.e[i++] = 0;
    if (i == rest.r) break;
    ++P.e[i];
  }
}

std::vector<Composition> compositions(const MultiIndex& J, int parts) {
  std::vector<Composition> out;
  if (parts <= 0) return out;
  std::vector<MultiIndex> cur;
  compose(J, parts, cur, out, J.factorial());
  return out;
}

}  // namespace artifact
