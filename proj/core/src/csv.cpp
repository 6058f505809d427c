#include "dirode/csv.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "dirode/errors.hpp"

namespace dirode {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw NumericalError("cannot open " + path + " for writing");
  return os;
}

}  // namespace

void write_csv(std::ostream& os, const Field1D& field) {
  os << "x,u\n";
  for (std::size_t i = 0; i < field.grid.nx; ++i)
    os << format_double(field.grid.x(i)) << ',' << format_double(field.u[i]) << '\n';
}

void write_csv(std::ostream& os, const Field2D& field) {
  const Grid2D& g = field.grid;
  os << "x,y,u\n";
  for (std::size_t j = 0; j < g.ny; ++j)
    for (std::size_t i = 0; i < g.nx; ++i)
      os << format_double(g.x(i)) << ',' << format_double(g.y(j)) << ','
         << format_double(field.at(i, j)) << '\n';
}

void write_csv(const std::string& path, const Field1D& field) {
  auto os = open_out(path);
  write_csv(os, field);
}

void write_csv(const std::string& path, const Field2D& field) {
  auto os = open_out(path);
  write_csv(os, field);
}

void write_table(std::ostream& os, const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& rows) {
  for (std::size_t c = 0; c < header.size(); ++c) os << (c ? "," : "") << header[c];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << format_double(row[c]);
    os << '\n';
  }
}

void write_table(const std::string& path, const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& rows) {
  auto os = open_out(path);
  write_table(os, header, rows);
}

}  // namespace dirode
