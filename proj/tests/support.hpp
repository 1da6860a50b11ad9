#pragma once
#include <memory>
#include <string>

#include "artifact/contraction_engine.hpp"
#include "artifact/pair_io.hpp"
#include "artifact/pbw.hpp"
#include "artifact/weyl_fedosov.hpp"

#ifndef FIXTURE_DIR
#error "FIXTURE_DIR must be defined"
#endif

namespace testing {

using namespace artifact;

inline std::string fixture_path(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name + ".json"; }

// A fixture pair with its Fedosov data and PBW tables. `alt` selects an alternative choice
// (0 = the file's own). Heap-allocated so the internal pointers stay valid.
struct Setup {
  PairFile file;
  LiePairSpec spec;
  std::unique_ptr<LiePair> pair;
  Connection conn;
  std::unique_ptr<FedosovData> fd;
  std::unique_ptr<Pbw> pbw;

  static std::unique_ptr<Setup> make(const std::string& name, int N = 5, int alt = 0, int pbwSlack = 4) {
    auto s = std::make_unique<Setup>();
    s->file = load_pair_file(fixture_path(name));
    s->spec = alt == 0 ? s->file.spec : with_choice(s->file.spec, s->file.alternatives.at(alt - 1));
    auto vr = validate_pair(s->spec);
    if (!vr.ok()) throw std::runtime_error("fixture does not validate: " + name);
    s->pair = std::make_unique<LiePair>(*vr.pair);
    s->conn = s->spec.connection ? Connection{*s->spec.connection} : default_connection(*s->pair);
    s->fd = std::make_unique<FedosovData>(solve_fedosov(*s->pair, s->conn, N));
    s->pbw = std::make_unique<Pbw>(*s->pair, s->conn, N + pbwSlack);
    return s;
  }
  const Frame& frame() const { return fd->frame; }
};

// Sign of the permutation that sorts `seq` (distinct entries), by counting inversions.
inline int inversion_sign(const std::vector<int>& seq) {
  int inv = 0;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j) inv += seq[i] > seq[j];
  return inv % 2 ? -1 : 1;
}

// Dense rank over the rationals by plain Gaussian elimination.
inline int dense_rank(std::vector<std::vector<Scalar>> m) {
  int rank = 0;
  const int rows = static_cast<int>(m.size());
  const int cols = rows ? static_cast<int>(m[0].size()) : 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if (sgn(m[r][c]) != 0) piv = r;
    if (piv < 0) continue;
    std::swap(m[piv], m[rank]);
    for (int r = 0; r < rows; ++r) {
      if (r == rank || sgn(m[r][c]) == 0) continue;
      Scalar t = m[r][c] / m[rank][c];
      for (int k = 0; k < cols; ++k) m[r][k] -= t * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace testing
