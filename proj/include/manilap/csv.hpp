#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace manilap {

// Shortest decimal representation that round-trips to the same double.
// Used for all CSV output so identical runs produce identical bytes.
std::string format_double(double v);

std::string csv_escape(const std::string& cell);
void write_csv_line(std::ostream& os, const std::vector<std::string>& cells);

}  // namespace manilap
