#include "povkit/io.hpp"

#include "povkit/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <string_view>
#include <system_error>

namespace povkit::io {

namespace {

std::string_view trim(std::string_view text) {
    const auto is_space = [](char c) {
        return c == ' ' || c == '\t' || c == '\r' || c == '\n';
    };
    while (!text.empty() && is_space(text.front())) text.remove_prefix(1);
    while (!text.empty() && is_space(text.back())) text.remove_suffix(1);
    return text;
}

} // namespace

IncomeSample read_incomes_csv(const std::string& path, double y0) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open input file: " + path);

    std::vector<double> incomes;
    std::string line;
    std::size_t line_no = 0;
    bool first_content = true;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view token = trim(line);
        if (token.empty()) continue;
        if (first_content && token == "income") {
            first_content = false;
            continue;
        }
        first_content = false;
        double value = 0.0;
        const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
        if (res.ec != std::errc{} || res.ptr != token.data() + token.size())
            throw DataError("line " + std::to_string(line_no) + ": not a number: '" +
                             std::string(token) + "'");
        if (!std::isfinite(value))
            throw DataError("line " + std::to_string(line_no) + ": income must be finite");
        if (value < 0.0)
            throw DataError("line " + std::to_string(line_no) + ": negative income");
        if (value < y0)
            throw DataError("line " + std::to_string(line_no) +
                             ": income below the support endpoint y0");
        incomes.push_back(value);
    }
    if (incomes.empty()) throw DataError("empty file: no income rows in " + path);
    return make_sample(std::move(incomes), y0);
}

Format format_from_name(const std::string& name) {
    if (name == "json") return Format::json;
    if (name == "csv" || name == "csv-table") return Format::csv_table;
    throw ParseError("unknown format: " + name + " (expected json or csv-table)");
}

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

namespace {

std::string csv_value(const Report& v) {
    if (v.is_null()) return "";
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_float()) return format_double(v.get<double>());
    if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_string()) return v.get<std::string>();
    return v.dump(); // nested values fall back to their JSON form
}

} // namespace

void write_report(const Report& report, Format format, std::ostream& out) {
    switch (format) {
    case Format::json:
        out << report.dump(2) << '\n';
        return;
    case Format::csv_table:
        for (const auto& [key, value] : report.items())
            out << key << ',' << csv_value(value) << '\n';
        return;
    }
}

void write_report_file(const Report& report, Format format, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write output file: " + path);
    write_report(report, format, out);
}

} // namespace povkit::io
