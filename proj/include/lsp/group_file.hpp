#pragma once

// Text format for generator tuples.
//
//   # comment
//   scalar rational|field|real
//   field -2 0 1              (minimal polynomial, constant term first)
//   embedding 1.41421356 1e-6 (optional: chosen real root)
//   matrix 1 2 0 1            (four entries, row by row)
//   relation genus 2          (optional)
//   preset sanov              (alternative to everything above)
//
// Field entries are comma separated power-basis coordinates ("1,1" is
// 1 + theta); real entries are decimal strings.

#include <string>

#include "lsp/moebius.hpp"

namespace lsp {

// Throws ParseError with "line L, column C" in the message.
Group parse_group(const std::string& text);
Group load_group(const std::string& path);
std::string serialize_group(const Group& group);

}  // namespace lsp
