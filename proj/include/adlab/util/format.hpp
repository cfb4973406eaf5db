#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace adlab {

/// Fixed 12-significant-digit rendering used by every report.
std::string fmt_num(double v);

/// v rounded to 12 significant digits, for JSON numbers that print like fmt_num.
double round12(double v);

/// Quotes a CSV field when it contains a separator, quote or newline.
std::string csv_field(std::string_view s);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace adlab
