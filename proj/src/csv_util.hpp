#pragma once

#include <string>
#include <vector>

namespace cmrp {

/// Formats a double as %.12g — the repo-wide numeric format for CSV output.
std::string g12(double v);

std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace cmrp
