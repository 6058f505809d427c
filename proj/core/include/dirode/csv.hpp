#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dirode/grid.hpp"

namespace dirode {

// Shortest round-trip text is not needed; 17 significant digits always are.
std::string format_double(double v);

void write_csv(std::ostream& os, const Field1D& field);
void write_csv(std::ostream& os, const Field2D& field);
void write_csv(const std::string& path, const Field1D& field);
void write_csv(const std::string& path, const Field2D& field);

// Generic table writer: header line then rows, all numbers at 17 digits.
void write_table(std::ostream& os, const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& rows);
void write_table(const std::string& path, const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& rows);

}  // namespace dirode
