#pragma once
#include <string>
#include <vector>

#include "artifact/lie_pair.hpp"
#include "json.hpp"

namespace artifact {

// A second (j, nabla) choice for the same Lie algebra and subalgebra.
struct AlternativeChoice {
  std::string label;
  std::optional<Matrix> splitting;
  std::optional<Tensor3> connection;
};

struct PairFile {
  LiePairSpec spec;
  std::vector<AlternativeChoice> alternatives;
};

// Schema: {name, dimL, dimA, basis, aIndices, brackets:[{i,j,coeffs:{k:"p/q"}}],
// splitting?, connection?, alternatives?}. Indices are 0-based. Throws std::invalid_argument.
PairFile parse_pair_json(const nlohmann::json& j);
PairFile load_pair_file(const std::string& path);
LiePairSpec with_choice(const LiePairSpec& base, const AlternativeChoice& alt);

}  // namespace artifact
