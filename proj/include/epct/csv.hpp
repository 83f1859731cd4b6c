#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace epct {

/// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double x);

/// Writes comma-separated rows. Numbers use format_double.
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& os) : os_(os) {}

    void comment(std::string_view text);
    void header(const std::vector<std::string>& columns);

    CsvWriter& cell(double x);
    CsvWriter& cell(std::string_view text);
    void end_row();

private:
    std::ostream& os_;
    bool first_ = true;
};

}  // namespace epct
