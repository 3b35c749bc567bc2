#include "semidyn/io.hpp"

#include <cstdio>
#include <fstream>

#include "semidyn/error.hpp"

namespace semidyn {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct CsvWriter::Impl {
    std::ofstream out;
};

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : impl_(new Impl) {
    impl_->out.open(path);
    if (!impl_->out) fail("IoError", "cannot open '" + path + "' for writing");
    row(header);
}

CsvWriter::~CsvWriter() { delete impl_; }

void CsvWriter::row(const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) impl_->out << ',';
        impl_->out << cells[i];
    }
    impl_->out << '\n';
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) fail("IoError", "cannot open '" + path + "' for writing");
    out << content;
}

} // namespace semidyn
