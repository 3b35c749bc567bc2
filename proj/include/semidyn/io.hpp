#pragma once

#include <string>
#include <vector>

namespace semidyn {

// Floats are emitted with max_digits10 so re-parsing is lossless and output
// bytes are stable for a fixed platform.
std::string format_double(double v);

class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);
    ~CsvWriter();
    void row(const std::vector<std::string>& cells);

private:
    struct Impl;
    Impl* impl_;
};

void write_text_file(const std::string& path, const std::string& content);

} // namespace semidyn
