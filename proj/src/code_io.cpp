#include "listlab/code_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace listlab {

std::string symbol_to_char(uint32_t q, int16_t sym) {
    if (sym < 0) return "?";
    if (q > 16) throw ShapeError("text format supports q <= 16");
    if (uint32_t(sym) >= q) throw ShapeError("symbol out of alphabet");
    return std::string(1, sym < 10 ? char('0' + sym) : char('a' + sym - 10));
}

int16_t char_to_symbol(uint32_t q, char ch) {
    if (ch == '?') return -1;
    int v;
    if (ch >= '0' && ch <= '9')
        v = ch - '0';
    else if (ch >= 'a' && ch <= 'f')
        v = ch - 'a' + 10;
    else
        throw ShapeError(std::string("bad symbol character '") + ch + "'");
    if (uint32_t(v) >= q) throw ShapeError(std::string("symbol '") + ch + "' out of alphabet");
    return int16_t(v);
}

std::string word_to_string(const Word& w) {
    std::string s;
    s.reserve(w.n());
    for (uint32_t i = 0; i < w.n(); ++i) s += symbol_to_char(w.q(), w.sym(i));
    return s;
}

Word word_from_string(uint32_t q, const std::string& s) {
    std::vector<uint8_t> syms;
    syms.reserve(s.size());
    for (char ch : s) {
        int16_t v = char_to_symbol(q, ch);
        if (v < 0) throw ShapeError("erasure symbol in a plain word");
        syms.push_back(uint8_t(v));
    }
    return Word::from_symbols(q, syms);
}

std::string erased_word_to_string(const ErasedWord& a) {
    std::string s;
    s.reserve(a.n());
    for (uint32_t i = 0; i < a.n(); ++i) s += symbol_to_char(a.q(), a.sym(i));
    return s;
}

ErasedWord erased_word_from_string(uint32_t q, const std::string& s) {
    ErasedWord a(uint32_t(s.size()), q);
    for (uint32_t i = 0; i < s.size(); ++i) {
        int16_t v = char_to_symbol(q, s[i]);
        if (v >= 0) a.set_sym(i, uint8_t(v));
    }
    return a;
}

Code read_code(std::istream& in) {
    std::string line;
    uint32_t q = 0, n = 0;
    std::optional<uint32_t> weight_tag;
    bool have_header = false;
    std::vector<Word> words;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ls(line);
            std::string tag;
            ls >> tag;
            auto parse_u32 = [&](const std::string& text) {
                try {
                    size_t used = 0;
                    unsigned long v = std::stoul(text, &used);
                    if (used != text.size() || v > 0xFFFFFFFFull)
                        throw std::invalid_argument("trailing");
                    return uint32_t(v);
                } catch (const std::exception&) {
                    throw ShapeError("bad number in header: " + text);
                }
            };
            if (tag == "#code") {
                std::string kv;
                while (ls >> kv) {
                    if (kv.rfind("q=", 0) == 0)
                        q = parse_u32(kv.substr(2));
                    else if (kv.rfind("n=", 0) == 0)
                        n = parse_u32(kv.substr(2));
                    else
                        throw ShapeError("unknown header field: " + kv);
                }
                if (q < 2 || n < 1) throw ShapeError("bad code header");
                have_header = true;
            } else if (tag == "#weight") {
                std::string kv;
                ls >> kv;
                if (kv.rfind("w=", 0) != 0) throw ShapeError("bad weight header");
                weight_tag = parse_u32(kv.substr(2));
            }
            // other comment lines are ignored
            continue;
        }
        if (!have_header) throw ShapeError("codeword before #code header");
        if (line.size() != n) throw ShapeError("codeword length differs from header n");
        words.push_back(word_from_string(q, line));
    }
    if (!have_header) throw ShapeError("missing #code header");
    return Code(n, q, std::move(words), weight_tag);
}

Code read_code_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open code file: " + path);
    return read_code(in);
}

void write_code(std::ostream& out, const Code& code) {
    out << "#code q=" << code.q() << " n=" << code.n() << "\n";
    if (code.weight_tag()) out << "#weight w=" << *code.weight_tag() << "\n";
    for (const auto& w : code) out << word_to_string(w) << "\n";
}

}  // namespace listlab
