#ifndef POVKIT_IO_HPP
#define POVKIT_IO_HPP

#include "povkit/sample.hpp"

#include <ostream>
#include <string>

#include <json.hpp>

namespace povkit::io {

/// One income per row, optional single "income" header, blank lines ignored.
/// Throws ParseError with the 1-based line number on bad entries.
IncomeSample read_incomes_csv(const std::string& path, double y0 = 0.0);

using Report = nlohmann::ordered_json;

enum class Format { json, csv_table };

Format format_from_name(const std::string& name);

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double value);

/// Writes a flat report as JSON or as key,value CSV rows. Output ends with
/// a newline and is byte-identical for identical reports.
void write_report(const Report& report, Format format, std::ostream& out);

/// Same, to a file. Throws ParseError when the path is unwritable.
void write_report_file(const Report& report, Format format, const std::string& path);

} // namespace povkit::io

#endif
