#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "cmj/tjoin.hpp"

namespace cmj {

// Graft file:
//   p graft <n> <m>
//   t <v...>          (exactly one, may be bare "t")
//   e <u> <v>         (m lines)
//   c <text>          (anywhere after line 1)
// LF line endings, single spaces, 0-based decimal ids.
struct ParsedGraft {
  Graft graft;
  std::size_t stripped_loops = 0;
};

// Throws parse errors of the form "line <k>: <reason>".
ParsedGraft parse_graft(std::string_view text);

std::string format_graft(const Graft& graft);

}  // namespace cmj
