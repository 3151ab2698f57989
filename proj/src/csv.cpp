#include "ncsum/csv.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstdint>
#include <string>

#include "ncsum/errors.hpp"

namespace ncsum {

namespace {

struct Decimal {
    std::int64_t digits = 0;  // value = digits * 10^-scale
    int scale = 0;
};

Decimal parse_decimal(std::string_view text) {
    Decimal d;
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) negative = text[i++] == '-';
    bool any = false, dot = false;
    for (; i < text.size(); ++i) {
        const char ch = text[i];
        if (ch == '.' && !dot) {
            dot = true;
            continue;
        }
        if (ch < '0' || ch > '9') throw parameter_error("bad decimal '" + std::string(text) + "' in grid");
        if (d.digits > (INT64_MAX - 9) / 10) throw parameter_error("too many digits in grid value");
        d.digits = d.digits * 10 + (ch - '0');
        if (dot) ++d.scale;
        any = true;
    }
    if (!any) throw parameter_error("bad decimal '" + std::string(text) + "' in grid");
    if (negative) d.digits = -d.digits;
    return d;
}

std::int64_t rescale(const Decimal& d, int scale) {
    std::int64_t v = d.digits;
    for (int s = d.scale; s < scale; ++s) {
        if (__builtin_mul_overflow(v, 10, &v)) throw parameter_error("grid value out of range");
    }
    return v;
}

double decimal_to_double(std::int64_t digits, int scale) {
    std::string text = std::to_string(digits) + "e-" + std::to_string(scale);
    return std::strtod(text.c_str(), nullptr);
}

double parse_number(std::string_view text) {
    std::string s(text);
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v))
        throw parameter_error("bad number '" + s + "'");
    return v;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

} // namespace

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) return "0";  // also folds -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string csv_row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        const auto& f = fields[i];
        if (f.find_first_of(",\"\n\r") == std::string::npos) {
            out += f;
            continue;
        }
        out += '"';
        for (char ch : f) {
            if (ch == '"') out += '"';
            out += ch;
        }
        out += '"';
    }
    out += '\n';
    return out;
}

std::string csv_row(std::initializer_list<std::string_view> fields) {
    std::vector<std::string> v;
    for (auto f : fields) v.emplace_back(f);
    return csv_row(v);
}

std::vector<double> parse_grid(std::string_view text) {
    text = trim(text);
    if (text.empty()) throw parameter_error("empty grid");

    if (text.find(':') == std::string_view::npos) {
        std::vector<double> out;
        while (true) {
            const auto comma = text.find(',');
            out.push_back(parse_number(trim(text.substr(0, comma))));
            if (comma == std::string_view::npos) break;
            text.remove_prefix(comma + 1);
        }
        return out;
    }

    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string_view::npos || text.find(':', c2 + 1) != std::string_view::npos)
        throw parameter_error("grid range must be start:stop:step");
    const Decimal start = parse_decimal(trim(text.substr(0, c1)));
    const Decimal stop = parse_decimal(trim(text.substr(c1 + 1, c2 - c1 - 1)));
    const Decimal step = parse_decimal(trim(text.substr(c2 + 1)));
    const int scale = std::max({start.scale, stop.scale, step.scale});
    const std::int64_t a = rescale(start, scale);
    const std::int64_t b = rescale(stop, scale);
    const std::int64_t s = rescale(step, scale);
    if (s == 0) throw parameter_error("grid step must be nonzero");
    if ((b - a) != 0 && ((b - a) > 0) != (s > 0)) throw parameter_error("grid step points away from stop");
    const std::int64_t count = (b - a) / s + 1;
    if (count > 10'000'000) throw parameter_error("grid has too many points");

    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    for (std::int64_t i = 0; i < count; ++i) out.push_back(decimal_to_double(a + i * s, scale));
    return out;
}

} // namespace ncsum
