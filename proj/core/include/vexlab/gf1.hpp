#pragma once

#include <iosfwd>
#include <string>

#include "vexlab/grid.hpp"

namespace vexlab {

/**
 * GF1 text format: one JSON header line
 *   {"dim":n,"format":"GF1","half_extent_log2":S,"level":J}
 * followed by one value per line in storage order. Values are written in the
 * shortest form that round-trips, so read(write(f)) is bit-exact. Thirds
 * domains add "subdivision":3 to the header.
 */
void write_gf1(std::ostream& out, const GridFunction& f);
GridFunction read_gf1(std::istream& in);

std::string to_gf1(const GridFunction& f);
GridFunction from_gf1(const std::string& text);

void save_gf1(const std::string& path, const GridFunction& f);
GridFunction load_gf1(const std::string& path);

}  // namespace vexlab
