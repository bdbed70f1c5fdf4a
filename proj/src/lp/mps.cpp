// Fixed-format MPS reader/writer.
//
// Field layout (1-based columns): type 2-3, name 5-12, name 15-22,
// value 25-36, name 40-47, value 50-61. Names are limited to 8 characters
// and values to 12.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <unordered_map>

#include "ldes/lp.hpp"

namespace ldes::lp {

namespace {

constexpr std::size_t kValueWidth = 12;

void put_field(std::string& line, std::size_t column, std::string_view text) {
  // Fields are written left to right and never overlap.
  line.resize(column - 1, ' ');
  line.append(text);
}

std::string data_line(std::string_view type, std::string_view name1, std::string_view name2 = {},
                      std::string_view value = {}) {
  std::string line;
  if (!type.empty()) put_field(line, 2, type);
  put_field(line, 5, name1);
  if (!name2.empty()) put_field(line, 15, name2);
  if (!value.empty()) put_field(line, 25, value);
  return line;
}

void check_name(const std::string& kind, const std::string& name) {
  if (name.size() > kMpsNameLimit) {
    throw MpsFormatError(kind + " name '" + name + "' exceeds the " +
                         std::to_string(kMpsNameLimit) + "-character fixed MPS limit");
  }
  if (name.find_first_of(" \t") != std::string::npos) {
    throw MpsFormatError(kind + " name '" + name + "' contains whitespace");
  }
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

std::string_view field(std::string_view line, std::size_t column, std::size_t width) {
  const std::size_t start = column - 1;
  if (line.size() <= start) return {};
  return trim(line.substr(start, width));
}

enum class Section { none, name, objsense, rows, columns, rhs, bounds, done };

}  // namespace

std::string format_mps_number(double value) {
  if (value == 0.0) return "0";
  char buffer[64];
  for (int precision = static_cast<int>(kValueWidth); precision >= 1; --precision) {
    const int n = std::snprintf(buffer, sizeof buffer, "%.*g", precision, value);
    if (n > 0 && static_cast<std::size_t>(n) <= kValueWidth) return std::string(buffer, n);
  }
  throw MpsFormatError("value cannot be rendered in 12 characters");
}

MpsParseError::MpsParseError(std::size_t line, const std::string& message)
    : std::runtime_error("MPS line " + std::to_string(line) + ": " + message), line_(line) {}

std::string emit_standard_form(const LinearProgram& lp) {
  if (const auto issues = lp.validate(); !issues.empty()) {
    throw std::invalid_argument("cannot emit invalid LP: " + issues.front());
  }
  const auto& objective = lp.objective();
  check_name("objective", objective.name);
  for (const auto& v : lp.variables()) check_name("variable", v.name);
  for (const auto& c : lp.constraints()) check_name("constraint", c.name);

  std::ostringstream out;
  out << "NAME          " << lp.name() << '\n';
  if (objective.sense == Sense::maximize) out << "OBJSENSE\n    MAX\n";

  out << "ROWS\n" << data_line("N", objective.name) << '\n';
  for (const auto& c : lp.constraints()) {
    const char* type = c.relation == Relation::less_equal  ? "L"
                       : c.relation == Relation::equal     ? "E"
                                                           : "G";
    out << data_line(type, c.name) << '\n';
  }

  // Column-major view: objective entry first, then rows in row order.
  const auto n = static_cast<std::size_t>(lp.num_variables());
  std::vector<double> obj(n, 0.0);
  for (const auto& t : objective.coefficients) obj[static_cast<std::size_t>(t.var.index)] += t.coef;
  std::vector<std::vector<std::pair<std::size_t, double>>> columns(n);
  for (std::size_t i = 0; i < lp.constraints().size(); ++i) {
    for (const auto& t : lp.constraints()[i].row) {
      if (t.coef != 0.0) columns[static_cast<std::size_t>(t.var.index)].emplace_back(i, t.coef);
    }
  }

  out << "COLUMNS\n";
  for (std::size_t j = 0; j < n; ++j) {
    const auto& name = lp.variables()[j].name;
    if (obj[j] != 0.0 || columns[j].empty()) {
      out << data_line({}, name, objective.name, format_mps_number(obj[j])) << '\n';
    }
    for (const auto& [row, coef] : columns[j]) {
      out << data_line({}, name, lp.constraints()[row].name, format_mps_number(coef)) << '\n';
    }
  }

  out << "RHS\n";
  if (objective.constant != 0.0) {
    out << data_line({}, "RHS", objective.name, format_mps_number(-objective.constant)) << '\n';
  }
  for (const auto& c : lp.constraints()) {
    if (c.rhs != 0.0) out << data_line({}, "RHS", c.name, format_mps_number(c.rhs)) << '\n';
  }

  out << "BOUNDS\n";
  for (const auto& v : lp.variables()) {
    const double lo = v.lower;
    const double up = v.upper;
    if (lo == kInfinity || up == -kInfinity) {
      throw MpsFormatError("variable '" + v.name + "' has an empty infinite bound range");
    }
    auto bound = [&](const char* type, double value) {
      out << data_line(type, "BND", v.name, format_mps_number(value)) << '\n';
    };
    if (lo == up) {
      bound("FX", lo);
      continue;
    }
    if (lo == -kInfinity && up == kInfinity) {
      out << data_line("FR", "BND", v.name) << '\n';
      continue;
    }
    if (lo == -kInfinity) {
      out << data_line("MI", "BND", v.name) << '\n';
    } else if (lo != 0.0 || up < 0.0) {
      bound("LO", lo);
    }
    if (up != kInfinity) bound("UP", up);
  }
  out << "ENDATA\n";
  return out.str();
}

LinearProgram parse_standard_form(std::string_view text) {
  std::vector<std::string_view> lines;
  for (std::size_t pos = 0; pos < text.size();) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = end + 1;
  }

  LinearProgram lp;
  std::string objective_name;
  bool have_objective = false;
  struct RowDecl {
    std::string name;
    Relation relation;
    SparseRow row;
    double rhs = 0.0;
  };
  std::vector<RowDecl> rows;
  std::unordered_map<std::string, std::size_t> row_lookup;
  std::string current_column;
  VarId current_var;
  std::vector<Term> objective_terms;
  double objective_constant = 0.0;
  Sense sense = Sense::minimize;
  std::string rhs_set;
  std::string bound_set;

  Section section = Section::none;
  std::size_t line_no = 0;

  auto number = [&](std::string_view token) {
    double value = 0.0;
    const auto* first = token.data();
    const auto* last = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (token.empty() || ec != std::errc() || ptr != last) {
      throw MpsParseError(line_no, "malformed number '" + std::string(token) + "'");
    }
    return value;
  };

  // Applies a (row, value) pair from COLUMNS or RHS.
  auto apply_entry = [&](std::string_view row_name, std::string_view value_text, bool is_rhs) {
    if (row_name.empty()) return;
    const double value = number(value_text);
    if (have_objective && row_name == objective_name) {
      if (is_rhs) {
        objective_constant = -value;
      } else {
        objective_terms.push_back({current_var, value});
      }
      return;
    }
    const auto it = row_lookup.find(std::string(row_name));
    if (it == row_lookup.end()) {
      throw MpsParseError(line_no, "unknown row '" + std::string(row_name) + "'");
    }
    auto& decl = rows[it->second];
    if (is_rhs) {
      decl.rhs = value;
    } else {
      decl.row.push_back({current_var, value});
    }
  };

  for (const auto raw : lines) {
    ++line_no;
    if (raw.empty() || raw.front() == '*') continue;
    if (section == Section::done) {
      if (!trim(raw).empty()) throw MpsParseError(line_no, "content after ENDATA");
      continue;
    }

    if (raw.front() != ' ' && raw.front() != '\t') {
      const auto header = trim(raw.substr(0, raw.find_first_of(" \t")));
      if (header == "NAME") {
        lp.set_name(std::string(trim(raw.substr(4))));
        section = Section::name;
      } else if (header == "OBJSENSE") {
        section = Section::objsense;
        const auto inline_sense = trim(raw.substr(8));
        if (inline_sense == "MAX" || inline_sense == "MAXIMIZE") sense = Sense::maximize;
      } else if (header == "ROWS") {
        section = Section::rows;
      } else if (header == "COLUMNS") {
        if (!have_objective) throw MpsParseError(line_no, "ROWS section lacks an N row");
        section = Section::columns;
      } else if (header == "RHS") {
        section = Section::rhs;
      } else if (header == "RANGES") {
        throw MpsParseError(line_no, "ranged rows are not supported");
      } else if (header == "BOUNDS") {
        section = Section::bounds;
      } else if (header == "ENDATA") {
        section = Section::done;
      } else {
        throw MpsParseError(line_no, "unknown section '" + std::string(header) + "'");
      }
      continue;
    }

    switch (section) {
      case Section::none:
      case Section::name:
        throw MpsParseError(line_no, "data line outside of a section");
      case Section::objsense: {
        const auto token = trim(raw);
        if (token == "MAX" || token == "MAXIMIZE") {
          sense = Sense::maximize;
        } else if (token == "MIN" || token == "MINIMIZE") {
          sense = Sense::minimize;
        } else {
          throw MpsParseError(line_no, "unknown objective sense '" + std::string(token) + "'");
        }
        break;
      }
      case Section::rows: {
        const auto type = field(raw, 2, 2);
        const auto name = std::string(field(raw, 5, 8));
        if (name.empty()) throw MpsParseError(line_no, "row without a name");
        if (type == "N") {
          if (have_objective) throw MpsParseError(line_no, "multiple N rows are not supported");
          objective_name = name;
          have_objective = true;
          continue;
        }
        Relation relation;
        if (type == "L") {
          relation = Relation::less_equal;
        } else if (type == "E") {
          relation = Relation::equal;
        } else if (type == "G") {
          relation = Relation::greater_equal;
        } else {
          throw MpsParseError(line_no, "unknown row type '" + std::string(type) + "'");
        }
        if (name == objective_name || !row_lookup.emplace(name, rows.size()).second) {
          throw MpsParseError(line_no, "duplicate row '" + name + "'");
        }
        rows.push_back({name, relation, {}, 0.0});
        break;
      }
      case Section::columns: {
        const auto column = std::string(field(raw, 5, 8));
        if (column.empty()) throw MpsParseError(line_no, "column entry without a name");
        if (field(raw, 15, 8) == "'MARKER'") {
          throw MpsParseError(line_no, "integer markers are not supported");
        }
        if (column != current_column) {
          if (lp.find_variable(column)) {
            throw MpsParseError(line_no, "entries of column '" + column + "' are not contiguous");
          }
          current_var = lp.add_variable(column, 0.0, kInfinity);
          current_column = column;
        }
        apply_entry(field(raw, 15, 8), field(raw, 25, 12), false);
        apply_entry(field(raw, 40, 8), field(raw, 50, 12), false);
        break;
      }
      case Section::rhs: {
        const auto set = std::string(field(raw, 5, 8));
        if (rhs_set.empty()) rhs_set = set;
        if (set != rhs_set) break;  // only the first RHS vector is used
        apply_entry(field(raw, 15, 8), field(raw, 25, 12), true);
        apply_entry(field(raw, 40, 8), field(raw, 50, 12), true);
        break;
      }
      case Section::bounds: {
        const auto type = field(raw, 2, 2);
        const auto set = std::string(field(raw, 5, 8));
        if (bound_set.empty()) bound_set = set;
        if (set != bound_set) break;
        const auto column = field(raw, 15, 8);
        const auto var = lp.find_variable(column);
        if (!var) throw MpsParseError(line_no, "bound for unknown column '" + std::string(column) + "'");
        const auto& v = lp.variable(*var);
        double lo = v.lower;
        double up = v.upper;
        if (type == "UP") {
          up = number(field(raw, 25, 12));
        } else if (type == "LO") {
          lo = number(field(raw, 25, 12));
        } else if (type == "FX") {
          lo = up = number(field(raw, 25, 12));
        } else if (type == "FR") {
          lo = -kInfinity;
          up = kInfinity;
        } else if (type == "MI") {
          lo = -kInfinity;
        } else if (type == "PL") {
          up = kInfinity;
        } else {
          throw MpsParseError(line_no, "unsupported bound type '" + std::string(type) + "'");
        }
        lp.set_bounds(*var, lo, up);
        break;
      }
      case Section::done:
        break;
    }
  }

  if (section != Section::done) {
    throw MpsParseError(std::max<std::size_t>(line_no, 1), "missing ENDATA");
  }

  lp.set_objective_name(objective_name);
  lp.set_sense(sense);
  for (const auto& t : objective_terms) lp.add_objective_term(t.var, t.coef);
  lp.set_objective_constant(objective_constant);
  for (auto& decl : rows) {
    lp.add_constraint(std::move(decl.name), std::move(decl.row), decl.relation, decl.rhs);
  }
  return lp;
}

}  // namespace ldes::lp
