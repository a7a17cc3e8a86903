#include "hlp_cli/spec_file.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "hlp/error.hpp"
#include "json.hpp"

namespace hlp::cli {

namespace {

using Json = nlohmann::ordered_json;

const char* const kSections[] = {"algebra1", "algebra2",      "weight1", "weight2", "morphism",
                                 "measure",  "exponents",     "superoperator", "element"};

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }
std::string dot(const std::string& path, const char* key) { return path + "." + key; }

std::string line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

const Json& require_array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw InputError(path, "expected an array");
  return j;
}

long long require_index(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw InputError(path, "expected an integer");
  return j.get<long long>();
}

double require_number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw InputError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw InputError(path, "expected a finite number");
  return v;
}

BlockProfile parse_profile(const Json& j, const std::string& path) {
  require_array(j, path);
  if (j.empty()) throw InputError(path, "at least one block is required");
  std::vector<int> dims;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const long long n = require_index(j[i], at(path, i));
    if (n < 1 || n > 64) throw InputError(at(path, i), "block size must lie in [1, 64]");
    dims.push_back(static_cast<int>(n));
  }
  return BlockProfile(dims);
}

Complex parse_complex(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) throw InputError(path, "complex entries are [re, im] pairs");
  return {require_number(j[0], at(path, 0)), require_number(j[1], at(path, 1))};
}

Matrix parse_matrix(const Json& j, const std::string& path, long long rows, long long cols) {
  require_array(j, path);
  if (static_cast<long long>(j.size()) != rows) {
    throw InputError(path, "expected " + std::to_string(rows) + " rows, found " + std::to_string(j.size()));
  }
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string row_path = at(path, r);
    require_array(j[r], row_path);
    if (static_cast<long long>(j[r].size()) != cols) {
      throw InputError(row_path, "expected " + std::to_string(cols) + " entries, found " + std::to_string(j[r].size()));
    }
    for (std::size_t c = 0; c < j[r].size(); ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = parse_complex(j[r][c], at(row_path, c));
    }
  }
  return m;
}

BlockMatrix parse_block_matrix(const Json& j, const std::string& path, const BlockProfile& profile) {
  require_array(j, path);
  if (j.size() != profile.block_count()) {
    throw InputError(path, "expected one matrix per block (" + std::to_string(profile.block_count()) + ")");
  }
  std::vector<Matrix> blocks;
  for (std::size_t b = 0; b < j.size(); ++b) {
    blocks.push_back(parse_matrix(j[b], at(path, b), profile.dim(b), profile.dim(b)));
  }
  return BlockMatrix(profile, blocks);
}

const BlockProfile& algebra_for(const std::optional<BlockProfile>& algebra, const char* name, const char* user) {
  if (!algebra) throw InputError(name, std::string("section required by ") + user);
  return *algebra;
}

Weight parse_weight(const Json& j, const char* name, const BlockProfile& profile) {
  const BlockMatrix density = parse_block_matrix(j, name, profile);
  try {
    return Weight(density);
  } catch (const Error& e) {
    throw InputError(name, e.what());
  }
}

TileKind parse_kind(const Json& j, const std::string& path) {
  if (j == "H") return TileKind::H;
  if (j == "A") return TileKind::A;
  throw InputError(path, "kind must be \"H\" or \"A\"");
}

JordanMorphismSpec parse_morphism(const Json& j, const BlockProfile& src, const BlockProfile& dst) {
  const std::string path = "morphism";
  if (!j.is_object()) throw InputError(path, "expected an object");
  if (!j.contains("tiles")) throw InputError(dot(path, "tiles"), "missing");
  const std::string tiles_path = dot(path, "tiles");
  const Json& tiles = require_array(j["tiles"], tiles_path);
  std::vector<Tile> out;
  for (std::size_t i = 0; i < tiles.size(); ++i) {
    const std::string tp = at(tiles_path, i);
    const Json& t = tiles[i];
    if (!t.is_object()) throw InputError(tp, "expected an object");
    for (const char* key : {"src", "dst", "offset"}) {
      if (!t.contains(key)) throw InputError(dot(tp, key), "missing");
    }
    const long long s = require_index(t["src"], dot(tp, "src"));
    if (s < 0 || s >= static_cast<long long>(src.block_count())) throw InputError(dot(tp, "src"), "no such source block");
    const long long d = require_index(t["dst"], dot(tp, "dst"));
    if (d < 0 || d >= static_cast<long long>(dst.block_count())) throw InputError(dot(tp, "dst"), "no such target block");
    const long long off = require_index(t["offset"], dot(tp, "offset"));
    const int n = src.dim(static_cast<std::size_t>(s));
    const int m = dst.dim(static_cast<std::size_t>(d));
    if (off < 0 || off + n > m) {
      throw InputError(dot(tp, "offset"), "tile of size " + std::to_string(n) + " at offset " + std::to_string(off) +
                                              " overflows target block of size " + std::to_string(m));
    }
    Tile tile;
    tile.src_block = static_cast<std::size_t>(s);
    tile.dst_block = static_cast<std::size_t>(d);
    tile.offset = static_cast<int>(off);
    tile.kind = t.contains("kind") ? parse_kind(t["kind"], dot(tp, "kind")) : TileKind::H;
    if (t.contains("unitary") && !t["unitary"].is_null()) {
      tile.conj_unitary = parse_matrix(t["unitary"], dot(tp, "unitary"), n, n);
    }
    out.push_back(std::move(tile));
  }
  std::vector<std::optional<Matrix>> unitaries;
  if (j.contains("block_unitaries")) {
    const std::string up = dot(path, "block_unitaries");
    const Json& u = require_array(j["block_unitaries"], up);
    if (u.size() != dst.block_count()) throw InputError(up, "expected one entry (matrix or null) per target block");
    for (std::size_t b = 0; b < u.size(); ++b) {
      if (u[b].is_null()) {
        unitaries.emplace_back();
      } else {
        unitaries.emplace_back(parse_matrix(u[b], at(up, b), dst.dim(b), dst.dim(b)));
      }
    }
  }
  try {
    return JordanMorphismSpec(src, dst, std::move(out), std::move(unitaries));
  } catch (const Error& e) {
    throw InputError(path, e.what());
  }
}

FiniteMeasureSpace parse_space(const Json& j, const std::string& path) {
  if (!j.is_object()) throw InputError(path, "expected an object");
  if (!j.contains("masses")) throw InputError(dot(path, "masses"), "missing");
  const std::string mp = dot(path, "masses");
  const Json& masses = require_array(j["masses"], mp);
  if (masses.empty()) throw InputError(mp, "at least one atom is required");
  std::vector<double> m;
  for (std::size_t i = 0; i < masses.size(); ++i) {
    const double v = require_number(masses[i], at(mp, i));
    if (!(v > 0.0)) throw InputError(at(mp, i), "atom masses must be positive");
    m.push_back(v);
  }
  std::vector<std::string> labels;
  if (j.contains("atoms")) {
    const std::string ap = dot(path, "atoms");
    const Json& atoms = require_array(j["atoms"], ap);
    if (atoms.size() != m.size()) throw InputError(ap, "one label per mass is required");
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (!atoms[i].is_string()) throw InputError(at(ap, i), "expected a string");
      labels.push_back(atoms[i].get<std::string>());
    }
  }
  return FiniteMeasureSpace(std::move(m), std::move(labels));
}

MeasureSection parse_measure(const Json& j) {
  const std::string path = "measure";
  if (!j.is_object()) throw InputError(path, "expected an object");
  for (const char* key : {"space1", "space2", "map"}) {
    if (!j.contains(key)) throw InputError(dot(path, key), "missing");
  }
  FiniteMeasureSpace s1 = parse_space(j["space1"], dot(path, "space1"));
  FiniteMeasureSpace s2 = parse_space(j["space2"], dot(path, "space2"));
  const std::string mp = dot(path, "map");
  const Json& map = require_array(j["map"], mp);
  if (map.size() != s2.size()) throw InputError(mp, "expected one entry per atom of space2");
  std::vector<std::optional<std::size_t>> targets;
  for (std::size_t i = 0; i < map.size(); ++i) {
    const Json& e = map[i];
    if (e.is_null()) {
      targets.emplace_back();
    } else if (e.is_string()) {
      const auto& labels = s1.labels();
      const auto it = std::find(labels.begin(), labels.end(), e.get<std::string>());
      if (it == labels.end()) throw InputError(at(mp, i), "unknown atom of space1");
      targets.emplace_back(static_cast<std::size_t>(it - labels.begin()));
    } else {
      const long long t = require_index(e, at(mp, i));
      if (t < 0 || t >= static_cast<long long>(s1.size())) throw InputError(at(mp, i), "no such atom of space1");
      targets.emplace_back(static_cast<std::size_t>(t));
    }
  }
  PointMap t(s1.size(), std::move(targets));
  return {std::move(s1), std::move(s2), std::move(t)};
}

Exponent parse_exponent(const Json& j, const std::string& path) {
  if (!j.is_string()) throw InputError(path, "exponents are strings such as \"1.5\" or \"inf\"");
  try {
    return Exponent::parse(j.get<std::string>());
  } catch (const Error& e) {
    throw InputError(path, e.what());
  }
}

}  // namespace

SpecFile parse_spec(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(line_column(text, e.byte == 0 ? 0 : e.byte - 1), "syntax error");
  }
  if (!doc.is_object()) throw InputError("(document)", "expected a JSON object");

  SpecFile spec;
  for (const auto& [key, value] : doc.items()) {
    if (std::find(std::begin(kSections), std::end(kSections), key) == std::end(kSections)) {
      spec.unknown_sections.push_back(key);
    }
  }
  if (doc.contains("algebra1")) spec.algebra1 = parse_profile(doc["algebra1"], "algebra1");
  if (doc.contains("algebra2")) spec.algebra2 = parse_profile(doc["algebra2"], "algebra2");
  if (doc.contains("weight1")) {
    spec.weight1 = parse_weight(doc["weight1"], "weight1", algebra_for(spec.algebra1, "algebra1", "weight1"));
  }
  if (doc.contains("weight2")) {
    spec.weight2 = parse_weight(doc["weight2"], "weight2", algebra_for(spec.algebra2, "algebra2", "weight2"));
  }
  if (doc.contains("morphism")) {
    spec.morphism = parse_morphism(doc["morphism"], algebra_for(spec.algebra1, "algebra1", "morphism"),
                                   algebra_for(spec.algebra2, "algebra2", "morphism"));
  }
  if (doc.contains("measure")) spec.measure = parse_measure(doc["measure"]);
  if (doc.contains("exponents")) {
    const Json& e = doc["exponents"];
    if (!e.is_object()) throw InputError("exponents", "expected an object");
    if (e.contains("p")) spec.p = parse_exponent(e["p"], "exponents.p");
    if (e.contains("q")) spec.q = parse_exponent(e["q"], "exponents.q");
  }
  if (doc.contains("superoperator")) {
    const Json& s = doc["superoperator"];
    if (!s.is_object() || !s.contains("matrix")) throw InputError("superoperator.matrix", "missing");
    const BlockProfile& a1 = algebra_for(spec.algebra1, "algebra1", "superoperator");
    const BlockProfile& a2 = algebra_for(spec.algebra2, "algebra2", "superoperator");
    spec.superoperator = parse_matrix(s["matrix"], "superoperator.matrix", a2.carrier_dim(), a1.carrier_dim());
  }
  if (doc.contains("element")) {
    spec.element = parse_block_matrix(doc["element"], "element", algebra_for(spec.algebra1, "algebra1", "element"));
  }
  return spec;
}

namespace {

template <typename T>
const T& need(const std::optional<T>& value, const char* section) {
  if (!value) throw InputError(section, "section required by this command");
  return *value;
}

}  // namespace

const BlockProfile& SpecFile::need_algebra1() const { return need(algebra1, "algebra1"); }
const BlockProfile& SpecFile::need_algebra2() const { return need(algebra2, "algebra2"); }
const Weight& SpecFile::need_weight1() const { return need(weight1, "weight1"); }
const Weight& SpecFile::need_weight2() const { return need(weight2, "weight2"); }
const JordanMorphismSpec& SpecFile::need_morphism() const { return need(morphism, "morphism"); }
const MeasureSection& SpecFile::need_measure() const { return need(measure, "measure"); }
const Matrix& SpecFile::need_superoperator() const { return need(superoperator, "superoperator"); }
const BlockMatrix& SpecFile::need_element() const { return need(element, "element"); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path, "cannot open spec file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace hlp::cli
