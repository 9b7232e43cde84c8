#include "rigidity/report.hpp"

#include <charconv>
#include <stdexcept>

namespace rigidity::report {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    if (res.ec != std::errc())
        throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, res.ptr);
}

nlohmann::ordered_json check_to_json(const CheckResult& check) {
    nlohmann::ordered_json j;
    j["name"] = check.name;
    j["pass"] = check.pass;
    j["value"] = check.value;
    j["expected"] = check.expected;
    j["tolerance"] = check.tolerance;
    return j;
}

nlohmann::ordered_json report_json(const nlohmann::ordered_json& params,
                                   const std::vector<CheckResult>& checks) {
    nlohmann::ordered_json j;
    j["tool_version"] = kToolVersion;
    j["params"] = params;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const CheckResult& c : checks) arr.push_back(check_to_json(c));
    j["checks"] = arr;
    return j;
}

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out << ',';
        out << header[i];
    }
    out << '\n';
    for (const auto& row : rows) {
        if (row.size() != header.size())
            throw std::invalid_argument("write_csv: row width does not match header");
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << format_double(row[i]);
        }
        out << '\n';
    }
}

}  // namespace rigidity::report
