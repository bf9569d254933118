#pragma once

#include <iosfwd>
#include <string>

#include "specloc/operators.hpp"

namespace specloc {

/// Text dump of an operator: header "d N ell hermitian chiral", then one line
/// "row col re im" per nonzero entry (dense indices, %.17g values).
void dump_operator(std::ostream& out, const LocalOperator& op);
LocalOperator read_operator(std::istream& in);

std::string format_double(double v);  // %.12g, locale-independent

}  // namespace specloc
