#pragma once
#include <optional>
#include <string>
#include <vector>

#include "artifact/graded_core.hpp"

namespace artifact {

using ScalarVec = std::vector<Scalar>;
using Matrix = std::vector<ScalarVec>;
// T[i][j][k]: three-index table, e.g. structure constants [x_i,x_j] = sum_k T[i][j][k] x_k.
using Tensor3 = std::vector<Matrix>;

struct LiePairSpec {
  std::string name;
  int dimL = 0;
  int dimA = 0;
  std::vector<std::string> basis;
  std::vector<int> aIndices;
  Tensor3 bracket;                    // dimL x dimL x dimL
  std::optional<Matrix> splitting;    // dimL x r, column m = j(d_m)
  std::optional<Tensor3> connection;  // Gamma[l][b][k], l over the L basis
};

// Semantics: nabla_{x_l} d_b = sum_k gamma[l][b][k] d_k, with l in the original L basis.
struct Connection {
  Tensor3 gamma;
};

struct PairIssue {
  std::string kind;
  std::vector<int> witness;
  std::string detail;
};

class LiePair {
 public:
  LiePairSpec spec;
  int n = 0, a = 0, r = 0;
  std::vector<int> aIdx;  // A basis inside the original basis
  std::vector<int> cIdx;  // complement coordinates, also the B basis d_m = class of x_{cIdx[m]}
  Matrix split;           // n x r
  Matrix Y, Yinv;         // adapted basis y_l as columns: y_l = x_{aIdx[l]} (l<a), y_{a+m} = j(d_m)
  Tensor3 cad;            // structure constants in the adapted basis

  Frame frame(int N) const { return Frame{a, r, N}; }
  ScalarVec to_adapted(const ScalarVec& v) const;
  ScalarVec from_adapted(const ScalarVec& v) const;
  ScalarVec q(const ScalarVec& v) const;  // B-coordinates
  ScalarVec bracket(const ScalarVec& x, const ScalarVec& y) const;  // original coordinates
  ScalarVec basis_vector(int i) const;
  // q[a_i, j(d_b)] for i in 0..a-1.
  ScalarVec bott(int i, int b) const;
  // nabla_b a = p[j b, a] in A-coordinates, defined for matched pairs.
  ScalarVec bott_on_a(int b, int i) const;
  bool matched() const;
};

struct ValidationResult {
  std::optional<LiePair> pair;
  std::vector<PairIssue> issues;
  bool ok() const { return pair.has_value(); }
};

ValidationResult validate_pair(const LiePairSpec& spec);

Connection default_connection(const LiePair& pair);
// Gamma[l][b][k] with l indexing the adapted basis.
Tensor3 adapted_gamma(const LiePair& pair, const Connection& conn);
Connection connection_from_adapted(const LiePair& pair, const Tensor3& g);
Tensor3 torsion(const LiePair& pair, const Connection& conn);  // [l1][l2][k]
std::vector<Tensor3> curvature(const LiePair& pair, const Connection& conn);  // [l1][l2][b][k]
// Checks Bott extension and torsion-freeness; empty on success.
std::vector<PairIssue> check_connection(const LiePair& pair, const Connection& conn);
bool is_zero(const Tensor3& t);

// Small-space keys. aMask lives on bits 0..a-1; coef is a subset of B indices.
struct TSmallKey {
  Mask aMask = 0;
  Mask coef = 0;
  friend auto operator<=>(const TSmallKey&, const TSmallKey&) = default;
};
int degree(const TSmallKey& k);

// Chevalley-Eilenberg differential of A on Lambda A^v.
Vec<Mask> d_A(const LiePair& pair, Mask aMask);
// Chevalley-Eilenberg differential of L on Lambda L^v in the adapted frame.
Vec<Mask> d_CE(const LiePair& pair, Mask form);
Vec<TSmallKey> d_A_bott(const LiePair& pair, const TSmallKey& x);

Matrix identity_matrix(int n);
std::optional<Matrix> inverse(const Matrix& m);

}  // namespace artifact
