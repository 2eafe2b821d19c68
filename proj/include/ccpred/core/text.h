//
// Project ccpred - Copyright 2026 The ccpred Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CCPRED_CORE_TEXT_H_
#define CCPRED_CORE_TEXT_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ccpred {

// Shortest decimal text that parses back to the identical double.
std::string format_double(double value);

std::optional<double> parse_double(std::string_view text);
std::optional<long> parse_long(std::string_view text);

std::vector<std::string> split(std::string_view text, char delim);
std::string_view trim(std::string_view text);

}  // namespace ccpred

#endif  // CCPRED_CORE_TEXT_H_
