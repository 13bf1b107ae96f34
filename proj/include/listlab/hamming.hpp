#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "listlab/error.hpp"

namespace listlab {

// Subset of coordinate positions {0, ..., n-1}, one bit per coordinate.
// Coordinates are 0-indexed internally; external formats are 1-indexed.
class IndexSet {
  public:
    IndexSet() : n_(0) {}
    explicit IndexSet(uint32_t n) : n_(n), bits_((n + 63) / 64, 0) {}
    static IndexSet full(uint32_t n);
    static IndexSet of(uint32_t n, const std::vector<uint32_t>& positions);

    uint32_t n() const { return n_; }
    bool test(uint32_t i) const { return (bits_[i >> 6] >> (i & 63)) & 1; }
    void set(uint32_t i) { bits_[i >> 6] |= uint64_t(1) << (i & 63); }
    void reset(uint32_t i) { bits_[i >> 6] &= ~(uint64_t(1) << (i & 63)); }
    uint32_t count() const;

    IndexSet complement() const;
    IndexSet intersect(const IndexSet& o) const;
    IndexSet unite(const IndexSet& o) const;

    std::vector<uint32_t> to_positions() const;

    friend bool operator==(const IndexSet& a, const IndexSet& b) {
        return a.n_ == b.n_ && a.bits_ == b.bits_;
    }

    const std::vector<uint64_t>& raw() const { return bits_; }

  private:
    uint32_t n_;
    std::vector<uint64_t> bits_;
};

// A length-n string over {0, ..., q-1}. Binary words pack one bit per
// symbol, q in [3,16] packs four bits, larger q packs a byte; distance is
// XOR + popcount on the packed limbs in all three layouts.
class Word {
  public:
    Word() : n_(0), q_(2), bits_(1) {}
    Word(uint32_t n, uint32_t q);  // zero word
    static Word from_symbols(uint32_t q, const std::vector<uint8_t>& symbols);

    uint32_t n() const { return n_; }
    uint32_t q() const { return q_; }
    uint32_t bits_per_symbol() const { return bits_; }

    uint8_t sym(uint32_t i) const {
        uint32_t per = 64 / bits_;
        uint64_t v = packed_[i / per] >> ((i % per) * bits_);
        return uint8_t(v & ((uint64_t(1) << bits_) - 1));
    }
    void set_sym(uint32_t i, uint8_t v);

    std::vector<uint8_t> symbols() const;

    uint32_t weight() const;
    IndexSet support() const;
    // weight restricted to the coordinates of S (|{i in S : x_i != 0}|)
    uint32_t weight_on(const IndexSet& S) const;

    bool same_shape(const Word& o) const { return n_ == o.n_ && q_ == o.q_; }

    friend bool operator==(const Word& a, const Word& b) {
        return a.n_ == b.n_ && a.q_ == b.q_ && a.packed_ == b.packed_;
    }
    friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }
    // total order for canonical containers (not symbol-lexicographic)
    friend bool operator<(const Word& a, const Word& b);

    size_t hash() const;

    const std::vector<uint64_t>& packed() const { return packed_; }

  private:
    friend uint32_t distance(const Word&, const Word&);
    friend Word subtract_mod_q(const Word&, const Word&);
    friend class WordEnumerator;
    uint32_t n_;
    uint32_t q_;
    uint32_t bits_;
    std::vector<uint64_t> packed_;
};

struct WordHash {
    size_t operator()(const Word& w) const { return w.hash(); }
};

// Hamming distance; throws ShapeError on mismatched (n, q).
uint32_t distance(const Word& x, const Word& y);

// (weight, support) pair
std::pair<uint32_t, IndexSet> weight_support(const Word& x);

// x restricted to S, preserving coordinate order; length |S|
Word restrict_word(const Word& x, const IndexSet& S);

// coordinatewise x - y mod q
Word subtract_mod_q(const Word& x, const Word& y);

// A length-n string over {0,...,q-1} plus an erasure symbol.
class ErasedWord {
  public:
    ErasedWord(uint32_t n, uint32_t q);  // fully erased
    // keep x on the coordinates of revealed, erase the rest
    static ErasedWord reveal(const Word& x, const IndexSet& revealed);

    uint32_t n() const { return n_; }
    uint32_t q() const { return q_; }
    bool erased(uint32_t i) const { return syms_[i] < 0; }
    int16_t sym(uint32_t i) const { return syms_[i]; }
    void set_sym(uint32_t i, uint8_t v);
    void set_erased(uint32_t i) { syms_[i] = -1; }

    IndexSet supp_star() const;  // set of non-erased positions

  private:
    uint32_t n_, q_;
    std::vector<int16_t> syms_;  // -1 = erased
};

// true iff a_i = c_i on every non-erased position of a
bool agrees(const ErasedWord& a, const Word& c);

// Ordered collection of distinct words of common (n, q), optionally tagged
// as constant-weight.
class Code {
  public:
    Code() : n_(0), q_(2) {}
    Code(uint32_t n, uint32_t q) : n_(n), q_(q) {}
    Code(uint32_t n, uint32_t q, std::vector<Word> words,
         std::optional<uint32_t> weight_tag = std::nullopt);

    uint32_t n() const { return n_; }
    uint32_t q() const { return q_; }
    size_t size() const { return words_.size(); }
    const Word& operator[](size_t i) const { return words_[i]; }
    const std::vector<Word>& words() const { return words_; }
    const std::optional<uint32_t>& weight_tag() const { return weight_tag_; }

    void add(const Word& w);  // rejects duplicates and shape mismatches
    bool contains(const Word& w) const;

    auto begin() const { return words_.begin(); }
    auto end() const { return words_.end(); }

  private:
    uint32_t n_, q_;
    std::vector<Word> words_;
    std::optional<uint32_t> weight_tag_;
};

// translate every codeword by -x coordinatewise (c -> c - x mod q);
// preserves pairwise distances, maps distance-from-x to weight
Code translate(const Code& c, const Word& x);

// Nonempty list of distinct words of common shape.
class ListTuple {
  public:
    explicit ListTuple(std::vector<Word> members);

    size_t size() const { return members_.size(); }
    const Word& operator[](size_t i) const { return members_[i]; }
    const std::vector<Word>& members() const { return members_; }

    auto begin() const { return members_.begin(); }
    auto end() const { return members_.end(); }

  private:
    std::vector<Word> members_;
};

// (max distance, exact distance sum) of the list from x
std::pair<uint32_t, uint64_t> dist_stats(const Word& x, const ListTuple& list);

// Coordinatewise plurality word, ties broken toward the smallest symbol.
// Minimizes the exact distance sum over all q^n centers.
Word centroid(const ListTuple& list);

// Visit all q^n words of shape (n, q) in odometer order (coordinate 0 is
// the fastest digit). Stops early if f returns false.
void for_each_word(uint32_t n, uint32_t q, const std::function<bool(const Word&)>& f);

// Incremental enumerator over [q]^n for partitioned loops.
class WordEnumerator {
  public:
    WordEnumerator(uint32_t n, uint32_t q) : word_(n, q) {}
    // number of words, or nullopt if q^n overflows uint64
    static std::optional<uint64_t> space_size(uint32_t n, uint32_t q);
    // word at a given rank (mixed-radix decode)
    static Word at(uint32_t n, uint32_t q, uint64_t rank);
    const Word& current() const { return word_; }
    bool advance();  // false after wrapping past the last word

  private:
    Word word_;
};

// Visit all k-subsets of {0..m-1} in lexicographic order; stops early on false.
void for_each_combination(uint32_t m, uint32_t k,
                          const std::function<bool(const std::vector<uint32_t>&)>& f);

}  // namespace listlab
