#pragma once

#include <iosfwd>
#include <string>

#include "listlab/hamming.hpp"

namespace listlab {

// Code file format: header line `#code q=<q> n=<n>`, optional `#weight w=<w>`,
// then one codeword per line, symbols written as the characters 0-9 then a-f
// (so q <= 16). The erasure symbol is written `?`.

std::string symbol_to_char(uint32_t q, int16_t sym);  // sym = -1 -> "?"
int16_t char_to_symbol(uint32_t q, char ch);

Code read_code(std::istream& in);
Code read_code_file(const std::string& path);
void write_code(std::ostream& out, const Code& code);

std::string word_to_string(const Word& w);
Word word_from_string(uint32_t q, const std::string& s);
std::string erased_word_to_string(const ErasedWord& a);
ErasedWord erased_word_from_string(uint32_t q, const std::string& s);

}  // namespace listlab
