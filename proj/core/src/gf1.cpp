#include "vexlab/gf1.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>
#include <system_error>

#include "vexlab/errors.hpp"

namespace vexlab {

void write_gf1(std::ostream& out, const GridFunction& f) {
    const Domain& d = f.domain();
    nlohmann::json header = {{"format", "GF1"},
                             {"dim", d.dim()},
                             {"half_extent_log2", d.half_extent_log2()},
                             {"level", d.level()}};
    if (d.is_thirds()) header["subdivision"] = 3;
    out << header.dump() << '\n';
    char buf[64];
    for (double v : f.values()) {
        auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
        if (ec != std::errc()) throw FormatError("cannot format grid value");
        out.write(buf, end - buf);
        out.put('\n');
    }
}

GridFunction read_gf1(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw FormatError("GF1: missing header line");
    nlohmann::json header;
    try {
        header = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("GF1: malformed header: ") + e.what());
    }
    if (!header.is_object() || header.value("format", "") != "GF1") throw FormatError("GF1: bad format tag");
    Domain d;
    try {
        d = Domain::make(header.at("dim").get<int>(), header.at("half_extent_log2").get<int>(),
                         header.at("level").get<int>());
        const int sub = header.value("subdivision", 1);
        if (sub == 3) d = d.thirds();
        else if (sub != 1) throw FormatError("GF1: subdivision must be 1 or 3");
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("GF1: header field: ") + e.what());
    }
    std::vector<double> values;
    values.reserve(d.cell_count());
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        double v = 0.0;
        const char* first = line.data();
        const char* last = first + line.size();
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || ptr != last) throw FormatError("GF1: bad value '" + line + "'");
        values.push_back(v);
    }
    if (values.size() != d.cell_count())
        throw FormatError("GF1: expected " + std::to_string(d.cell_count()) + " values, got " +
                          std::to_string(values.size()));
    return GridFunction(d, std::move(values));
}

std::string to_gf1(const GridFunction& f) {
    std::ostringstream out;
    write_gf1(out, f);
    return out.str();
}

GridFunction from_gf1(const std::string& text) {
    std::istringstream in(text);
    return read_gf1(in);
}

void save_gf1(const std::string& path, const GridFunction& f) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    write_gf1(out, f);
    if (!out) throw IoError("write failed: " + path);
}

GridFunction load_gf1(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    return read_gf1(in);
}

}  // namespace vexlab
