#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "liesym/errors.hpp"
#include "liesym_cli/cli.hpp"

namespace liesym::cli {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double to_double(const std::string& field, std::size_t line) {
  try {
    std::size_t used = 0;
    double v = std::stod(field, &used);
    if (used != field.size()) throw std::invalid_argument(field);
    return v;
  } catch (const std::exception&) {
    throw ParseError("csv line " + std::to_string(line) + ": bad number '" + field + "'", line);
  }
}

}  // namespace

void emit_csv(const ResidualField& field, std::ostream& sink) {
  sink << "x,y,in_domain,u,residual\n";
  for (const auto& n : field.nodes) {
    sink << fmt(n.x) << ',' << fmt(n.y) << ',';
    if (n.in_domain) {
      sink << "1," << fmt(n.u) << ',' << fmt(n.residual) << '\n';
    } else {
      sink << "0,,\n";
    }
  }
}

std::vector<ResidualNode> parse_csv(std::istream& source) {
  std::string line;
  if (!std::getline(source, line) || line != "x,y,in_domain,u,residual") {
    throw ParseError("csv: missing header", 0);
  }
  std::vector<ResidualNode> nodes;
  std::size_t lineno = 1;
  while (std::getline(source, line)) {
    ++lineno;
    if (line.empty()) break;  // a trailer may follow a blank line
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    if (cells.size() != 5) throw ParseError("csv line " + std::to_string(lineno) + ": expected 5 fields", lineno);
    ResidualNode n;
    n.x = to_double(cells[0], lineno);
    n.y = to_double(cells[1], lineno);
    if (cells[2] == "1") {
      n.in_domain = true;
      n.u = to_double(cells[3], lineno);
      n.residual = to_double(cells[4], lineno);
    } else if (cells[2] == "0") {
      if (!cells[3].empty() || !cells[4].empty()) {
        throw ParseError("csv line " + std::to_string(lineno) + ": masked node carries values", lineno);
      }
    } else {
      throw ParseError("csv line " + std::to_string(lineno) + ": in_domain must be 0 or 1", lineno);
    }
    nodes.push_back(n);
  }
  return nodes;
}

}  // namespace liesym::cli
