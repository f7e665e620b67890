#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "guessbound/bit_matrix.hpp"
#include "guessbound/bit_vector.hpp"

namespace guessbound {

// Key file:
//
//   bits=<len>
//   <hex key>
//   ...
//
// One key per line, ceil(len / 4) hex digits, MSB first; the unused low bits
// of the last digit must be zero. Blank lines are skipped.
//
// Matrix file:
//
//   <rows> <cols> <kind> <seed|->
//   <hex row>          (rows lines, same encoding as keys)
//
// A header without row lines stands for the generator output of that kind
// and seed.

struct KeyFile {
    std::size_t bits = 0;
    std::vector<BitVector> keys;
};

std::string to_hex(const BitVector& v);
/// Throws FormatError with column relative to the start of `hex` (line 1).
BitVector from_hex(std::string_view hex, std::size_t bits);

KeyFile read_key_file(std::istream& in);
void write_key_file(std::ostream& out, const KeyFile& file);

BitMatrix read_matrix(std::istream& in);
void write_matrix(std::ostream& out, const BitMatrix& m);

}  // namespace guessbound
