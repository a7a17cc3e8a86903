#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "hlp_cli/app.hpp"
#include "report_util.hpp"

namespace hlp::cli {

Report num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  const double rounded = std::strtod(buf, nullptr);
  return rounded == 0.0 ? 0.0 : rounded;
}

Report num_list(const std::vector<double>& values) {
  Report out = Report::array();
  for (double v : values) out.push_back(num(v));
  return out;
}

Report exponent(const Exponent& p) { return p.to_string(); }

Report matrix(const Matrix& m) {
  Report rows = Report::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Report row = Report::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(Report::array({num(m(r, c).real()), num(m(r, c).imag())}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Report block_matrix(const BlockMatrix& x) {
  Report out = Report::array();
  for (const Matrix& b : x.blocks()) out.push_back(matrix(b));
  return out;
}

Report tiles(const JordanMorphismSpec& j) {
  Report list = Report::array();
  for (const Tile& t : j.tiles()) {
    Report tile{{"src", t.src_block}, {"dst", t.dst_block}, {"offset", t.offset}, {"kind", to_string(t.kind)}};
    if (t.conj_unitary) tile["unitary"] = matrix(*t.conj_unitary);
    list.push_back(std::move(tile));
  }
  Report out{{"tiles", std::move(list)}};
  Report unitaries = Report::array();
  bool any = false;
  for (const auto& u : j.block_unitaries()) {
    if (u) {
      unitaries.push_back(matrix(*u));
      any = true;
    } else {
      unitaries.push_back(nullptr);
    }
  }
  if (any) out["block_unitaries"] = std::move(unitaries);
  return out;
}

namespace {

bool is_scalar_array(const Report& j) {
  for (const auto& e : j) {
    if (e.is_structured()) return false;
  }
  return true;
}

void render_human(const Report& j, const std::string& indent, std::ostringstream& os) {
  for (const auto& [key, value] : j.items()) {
    os << indent << key << ':';
    if (value.is_object()) {
      os << '\n';
      render_human(value, indent + "  ", os);
    } else if (value.is_array() && !is_scalar_array(value) && !value.empty() && value.front().is_object()) {
      os << '\n';
      for (std::size_t i = 0; i < value.size(); ++i) {
        os << indent << "  [" << i << "]\n";
        render_human(value[i], indent + "    ", os);
      }
    } else if (value.is_string()) {
      os << ' ' << value.get<std::string>() << '\n';
    } else {
      os << ' ' << value.dump() << '\n';
    }
  }
}

}  // namespace

std::string render(const Report& report, Format format) {
  if (format == Format::Machine) return report.dump(2) + "\n";
  std::ostringstream os;
  render_human(report, "", os);
  return os.str();
}

Report without_wall_time(const Report& report) {
  Report copy = report;
  copy.erase("wall_time_s");
  return copy;
}

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace hlp::cli
