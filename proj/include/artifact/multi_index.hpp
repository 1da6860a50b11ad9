#pragma once
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "artifact/scalar.hpp"

namespace artifact {

// Exponent vector J in N^r. Ranks above kMaxRank are rejected at pair validation.
struct MultiIndex {
  static constexpr int kMaxRank = 4;
  std::array<std::uint8_t, kMaxRank> e{};
  std::uint8_t r = 0;

  MultiIndex() = default;
  explicit MultiIndex(int rank) : r(static_cast<std::uint8_t>(rank)) {}
  MultiIndex(int rank, std::initializer_list<int> entries);

  static MultiIndex unit(int rank, int m);

  int operator[](int i) const { return e[i]; }
  int weight() const;
  bool is_zero() const { return weight() == 0; }
  // Componentwise partial order.
  bool precedes(const MultiIndex& other) const;
  Scalar factorial() const;
  std::string str() const;

  friend MultiIndex operator+(MultiIndex a, const MultiIndex& b);
  friend MultiIndex operator-(MultiIndex a, const MultiIndex& b);
  friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.r == b.r && a.e == b.e; }
  friend bool operator<(const MultiIndex& a, const MultiIndex& b) {
    if (a.r != b.r) return a.r < b.r;
    return a.e < b.e;
  }
  friend bool operator!=(const MultiIndex& a, const MultiIndex& b) { return !(a == b); }
};

// All J with |J| = w, in lexicographic order.
std::vector<MultiIndex> indices_of_weight(int rank, int w);
// All J with |J| <= w, by weight then lexicographic.
std::vector<MultiIndex> indices_up_to(int rank, int w);

// J! / (K! (J-K)!) for K precedes J.
Scalar binomial(const MultiIndex& J, const MultiIndex& K);
// K! / (K-J)! if J precedes K, else 0: the coefficient of d^J chi^K.
Scalar falling(const MultiIndex& K, const MultiIndex& J);

// Ordered compositions J = P_0 + ... + P_{parts-1} with multinomial weight J!/(P_0!...).
struct Composition {
  std::vector<MultiIndex> parts;
  Scalar coeff;
};
std::vector<Composition> compositions(const MultiIndex& J, int parts);

}  // namespace artifact
