#pragma once
#include <gmpxx.h>

#include <string>

namespace artifact {

using Scalar = mpq_class;

// Accepts "p/q", "p", or "-p/q"; result is canonicalized.
Scalar parse_scalar(const std::string& text);

// Always "p/q", with q > 0.
std::string to_string(const Scalar& x);

}  // namespace artifact
