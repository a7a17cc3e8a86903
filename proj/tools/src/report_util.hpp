#pragma once

#include <string>
#include <vector>

#include "hlp/exponent.hpp"
#include "hlp/jordan.hpp"
#include "hlp/matcore.hpp"
#include "hlp_cli/app.hpp"

namespace hlp::cli {

/// A double rounded to 12 significant digits; non-finite values become the
/// strings "inf", "-inf" and "nan".
Report num(double v);
Report num_list(const std::vector<double>& values);
Report exponent(const Exponent& p);
Report matrix(const Matrix& m);
Report block_matrix(const BlockMatrix& x);
/// Tile list in the spec-file morphism format.
Report tiles(const JordanMorphismSpec& j);

}  // namespace hlp::cli
