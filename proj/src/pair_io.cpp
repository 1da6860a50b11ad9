#include "artifact/pair_io.hpp"

#include <fstream>
#include <stdexcept>

namespace artifact {

namespace {

Scalar scalar_of(const nlohmann::json& v) {
  if (v.is_string()) return parse_scalar(v.get<std::string>());
  if (v.is_number_integer()) return Scalar(v.get<long>());
  throw std::invalid_argument("scalar must be a \"p/q\" string or an integer");
}

Matrix matrix_of(const nlohmann::json& v) {
  Matrix m;
  for (const auto& row : v) {
    ScalarVec r;
    for (const auto& x : row) r.push_back(scalar_of(x));
    m.push_back(std::move(r));
  }
  return m;
}

Tensor3 tensor_of(const nlohmann::json& v) {
  Tensor3 t;
  for (const auto& m : v) t.push_back(matrix_of(m));
  return t;
}

}  // namespace

PairFile parse_pair_json(const nlohmann::json& j) {
  PairFile pf;
  LiePairSpec& s = pf.spec;
  try {
    s.name = j.value("name", std::string("unnamed"));
    s.dimL = j.at("dimL").get<int>();
    s.dimA = j.at("dimA").get<int>();
    if (s.dimL < 1 || s.dimL > 16) throw std::invalid_argument("dimL out of range");
    if (j.contains("basis")) s.basis = j.at("basis").get<std::vector<std::string>>();
    while (static_cast<int>(s.basis.size()) < s.dimL) s.basis.push_back("x" + std::to_string(s.basis.size()));
    s.aIndices = j.at("aIndices").get<std::vector<int>>();
    const int n = s.dimL;
    s.bracket.assign(n, Matrix(n, ScalarVec(n, Scalar(0))));
    std::vector<std::vector<bool>> explicitly(n, std::vector<bool>(n, false));
    for (const auto& e : j.at("brackets")) {
      int a = e.at("i").get<int>(), b = e.at("j").get<int>();
      if (a < 0 || b < 0 || a >= n || b >= n) throw std::invalid_argument("bracket index out of range");
      ScalarVec v(n, Scalar(0));
      for (const auto& [k, val] : e.at("coeffs").items()) {
        int kk = std::stoi(k);
        if (kk < 0 || kk >= n) throw std::invalid_argument("bracket coefficient index out of range");
        v[kk] = scalar_of(val);
      }
      s.bracket[a][b] = v;
      explicitly[a][b] = true;
      if (!explicitly[b][a] && a != b)
        for (int k = 0; k < n; ++k) s.bracket[b][a][k] = -v[k];
    }
    if (j.contains("splitting") && !j.at("splitting").is_null()) s.splitting = matrix_of(j.at("splitting"));
    if (j.contains("connection") && !j.at("connection").is_null()) s.connection = tensor_of(j.at("connection"));
    if (j.contains("alternatives"))
      for (const auto& alt : j.at("alternatives")) {
        AlternativeChoice c;
        c.label = alt.value("label", std::string("alt") + std::to_string(pf.alternatives.size() + 1));
        if (alt.contains("splitting")) c.splitting = matrix_of(alt.at("splitting"));
        if (alt.contains("connection")) c.connection = tensor_of(alt.at("connection"));
        pf.alternatives.push_back(std::move(c));
      }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("pair JSON: ") + e.what());
  }
  return pf;
}

PairFile load_pair_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open pair file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("pair JSON parse error: ") + e.what());
  }
  return parse_pair_json(j);
}

LiePairSpec with_choice(const LiePairSpec& base, const AlternativeChoice& alt) {
  LiePairSpec s = base;
  s.splitting = alt.splitting;
  s.connection = alt.connection;
  return s;
}

}  // namespace artifact
