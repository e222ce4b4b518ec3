// Copyright Contributors to the expsamp project
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace expsamp {

// 12 significant digits, dot decimal; the one formatting used for every
// numeric CSV cell so outputs are byte-stable.
inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

class CsvWriter {
  public:
    explicit CsvWriter(std::ostream& os) : os_(os) {}

    CsvWriter& field(const std::string& s) {
        if (!first_) os_ << ',';
        os_ << s;
        first_ = false;
        return *this;
    }
    CsvWriter& field(double v) { return field(format_number(v)); }
    CsvWriter& field(long long v) { return field(std::to_string(v)); }
    CsvWriter& field(int v) { return field(std::to_string(v)); }

    void end_row() {
        os_ << '\n';
        first_ = true;
    }

    void row(const std::vector<std::string>& cells) {
        for (const auto& c : cells) field(c);
        end_row();
    }

  private:
    std::ostream& os_;
    bool first_ = true;
};

} // namespace expsamp
