#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace rigidity::report {

inline constexpr const char* kToolVersion = "1.0.0";

// Shortest decimal representation that round-trips the double exactly.
std::string format_double(double v);

struct CheckResult {
    std::string name;
    std::string group;
    bool pass = false;
    double value = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
};

nlohmann::ordered_json check_to_json(const CheckResult& check);

nlohmann::ordered_json report_json(const nlohmann::ordered_json& params,
                                   const std::vector<CheckResult>& checks);

// CSV with '.' decimals, comma delimiter, Unix newlines, mandatory header.
void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace rigidity::report
