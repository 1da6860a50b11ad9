#include "artifact/scalar.hpp"

#include <stdexcept>

namespace artifact {

Scalar parse_scalar(const std::string& text) {
  Scalar x;
  if (text.empty() || x.set_str(text, 10) != 0) throw std::invalid_argument("bad scalar: '" + text + "'");
  if (x.get_den() == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
  x.canonicalize();
  return x;
}

std::string to_string(const Scalar& x) { return x.get_num().get_str() + "/" + x.get_den().get_str(); }

}  // namespace artifact
