#pragma once

#include <iosfwd>

#include <json.hpp>

#include "selberg/coeffs.hpp"
#include "selberg/density.hpp"

namespace selberg {

// {"family", "degree", "prime_limit", "series_order", "tail_bound", "params"?,
//  "entries": [{"k", "l", "n"?, "value", "imag"?, "bound"}]}. Doubles are
// written in shortest round-trip form, so a table re-imports bit for bit.
nlohmann::json to_json(const CoeffTable& table);
CoeffTable coeff_table_from_json(const nlohmann::json& j);

void write_table(const CoeffTable& table, std::ostream& out);
CoeffTable read_table(std::istream& in);

// Rectangle endpoints as numbers, with infinities spelled "inf" / "-inf".
nlohmann::json to_json(const Rectangle& rect);

// "a,b,c,d" with inf / -inf literals.
Rectangle parse_rectangle(const std::string& text);

}  // namespace selberg
