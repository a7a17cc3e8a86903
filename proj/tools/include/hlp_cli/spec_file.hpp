#pragma once

// Parser for the JSON spec file shared by every command. Sections:
//
//   algebra1, algebra2   block sizes, e.g. [2, 1]
//   weight1, weight2     one Hermitian matrix per block; rows of [re, im] pairs
//   morphism             {"tiles": [{"src", "dst", "offset", "kind", "unitary"?}],
//                         "block_unitaries": [matrix | null, ...]?}
//   measure              {"space1": {"masses", "atoms"?}, "space2": {...},
//                         "map": [index | atom label | null, ...]}
//   exponents            {"p": "2", "q": "1.5"}   ("inf" or decimal strings)
//   superoperator        {"matrix": rows of [re, im]}  algebra1 -> algebra2
//   element              one matrix per block of algebra1
//
// Every section is optional at parse time; commands ask for what they need.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hlp/classical.hpp"
#include "hlp/exponent.hpp"
#include "hlp/jordan.hpp"
#include "hlp/matcore.hpp"
#include "hlp/vnops.hpp"

namespace hlp::cli {

/// Malformed or missing input. `field` is a dotted path such as
/// "morphism.tiles[0].offset", or "line 3, column 7" for syntax errors.
class InputError : public std::runtime_error {
 public:
  InputError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

struct MeasureSection {
  FiniteMeasureSpace space1;
  FiniteMeasureSpace space2;
  PointMap map;
};

struct SpecFile {
  std::optional<BlockProfile> algebra1;
  std::optional<BlockProfile> algebra2;
  std::optional<Weight> weight1;
  std::optional<Weight> weight2;
  std::optional<JordanMorphismSpec> morphism;
  std::optional<MeasureSection> measure;
  std::optional<Exponent> p;
  std::optional<Exponent> q;
  std::optional<Matrix> superoperator;
  std::optional<BlockMatrix> element;
  /// Unknown top-level sections, in file order.
  std::vector<std::string> unknown_sections;

  const BlockProfile& need_algebra1() const;
  const BlockProfile& need_algebra2() const;
  const Weight& need_weight1() const;
  const Weight& need_weight2() const;
  const JordanMorphismSpec& need_morphism() const;
  const MeasureSection& need_measure() const;
  const Matrix& need_superoperator() const;
  const BlockMatrix& need_element() const;
};

/// Throws InputError.
SpecFile parse_spec(const std::string& text);

/// Throws InputError when the file cannot be read.
std::string read_file(const std::string& path);

}  // namespace hlp::cli
