#include "listlab/hamming.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

namespace listlab {

IndexSet IndexSet::full(uint32_t n) {
    IndexSet s(n);
    for (uint32_t i = 0; i < n; ++i) s.set(i);
    return s;
}

IndexSet IndexSet::of(uint32_t n, const std::vector<uint32_t>& positions) {
    IndexSet s(n);
    for (uint32_t p : positions) {
        if (p >= n) throw ShapeError("index set position out of range");
        s.set(p);
    }
    return s;
}

uint32_t IndexSet::count() const {
    uint32_t c = 0;
    for (uint64_t lim : bits_) c += uint32_t(std::popcount(lim));
    return c;
}

IndexSet IndexSet::complement() const {
    IndexSet s(n_);
    for (size_t i = 0; i < bits_.size(); ++i) s.bits_[i] = ~bits_[i];
    if (n_ % 64) s.bits_.back() &= (uint64_t(1) << (n_ % 64)) - 1;
    return s;
}

IndexSet IndexSet::intersect(const IndexSet& o) const {
    if (n_ != o.n_) throw ShapeError("index set length mismatch");
    IndexSet s(n_);
    for (size_t i = 0; i < bits_.size(); ++i) s.bits_[i] = bits_[i] & o.bits_[i];
    return s;
}

IndexSet IndexSet::unite(const IndexSet& o) const {
    if (n_ != o.n_) throw ShapeError("index set length mismatch");
    IndexSet s(n_);
    for (size_t i = 0; i < bits_.size(); ++i) s.bits_[i] = bits_[i] | o.bits_[i];
    return s;
}

std::vector<uint32_t> IndexSet::to_positions() const {
    std::vector<uint32_t> p;
    for (uint32_t i = 0; i < n_; ++i)
        if (test(i)) p.push_back(i);
    return p;
}

static uint32_t bits_for_q(uint32_t q) {
    if (q < 2) throw ShapeError("alphabet size must be >= 2");
    if (q == 2) return 1;
    if (q <= 16) return 4;
    if (q <= 256) return 8;
    throw ShapeError("alphabet size above 256 not supported");
}

// n = 0 is allowed so that restrictions to the empty set are representable
Word::Word(uint32_t n, uint32_t q) : n_(n), q_(q), bits_(bits_for_q(q)) {
    packed_.assign((size_t(n) * bits_ + 63) / 64, 0);
}

Word Word::from_symbols(uint32_t q, const std::vector<uint8_t>& symbols) {
    Word w(uint32_t(symbols.size()), q);
    for (uint32_t i = 0; i < symbols.size(); ++i) w.set_sym(i, symbols[i]);
    return w;
}

void Word::set_sym(uint32_t i, uint8_t v) {
    if (v >= q_) throw ShapeError("symbol out of alphabet");
    uint32_t per = 64 / bits_;
    uint64_t mask = ((uint64_t(1) << bits_) - 1) << ((i % per) * bits_);
    packed_[i / per] = (packed_[i / per] & ~mask) | (uint64_t(v) << ((i % per) * bits_));
}

std::vector<uint8_t> Word::symbols() const {
    std::vector<uint8_t> s(n_);
    for (uint32_t i = 0; i < n_; ++i) s[i] = sym(i);
    return s;
}

// collapse each symbol lane of the xor to a single bit, then popcount
static uint32_t count_nonzero_lanes(const std::vector<uint64_t>& limbs, uint32_t bits) {
    uint32_t c = 0;
    if (bits == 1) {
        for (uint64_t v : limbs) c += uint32_t(std::popcount(v));
    } else if (bits == 4) {
        for (uint64_t v : limbs) {
            v |= v >> 1;
            v |= v >> 2;
            v &= 0x1111111111111111ULL;
            c += uint32_t(std::popcount(v));
        }
    } else {
        for (uint64_t v : limbs) {
            v |= v >> 1;
            v |= v >> 2;
            v |= v >> 4;
            v &= 0x0101010101010101ULL;
            c += uint32_t(std::popcount(v));
        }
    }
    return c;
}

uint32_t distance(const Word& x, const Word& y) {
    if (!x.same_shape(y)) throw ShapeError("distance between mismatched shapes");
    uint32_t c = 0;
    if (x.bits_ == 1) {
        for (size_t i = 0; i < x.packed_.size(); ++i)
            c += uint32_t(std::popcount(x.packed_[i] ^ y.packed_[i]));
        return c;
    }
    std::vector<uint64_t> t(x.packed_.size());
    for (size_t i = 0; i < t.size(); ++i) t[i] = x.packed_[i] ^ y.packed_[i];
    return count_nonzero_lanes(t, x.bits_);
}

uint32_t Word::weight() const { return count_nonzero_lanes(packed_, bits_); }

IndexSet Word::support() const {
    IndexSet s(n_);
    for (uint32_t i = 0; i < n_; ++i)
        if (sym(i) != 0) s.set(i);
    return s;
}

uint32_t Word::weight_on(const IndexSet& S) const {
    if (S.n() != n_) throw ShapeError("index set length mismatch");
    if (bits_ == 1) {
        uint32_t c = 0;
        for (size_t i = 0; i < packed_.size(); ++i)
            c += uint32_t(std::popcount(packed_[i] & S.raw()[i]));
        return c;
    }
    uint32_t c = 0;
    for (uint32_t i : S.to_positions())
        if (sym(i) != 0) ++c;
    return c;
}

std::pair<uint32_t, IndexSet> weight_support(const Word& x) {
    IndexSet s = x.support();
    return {s.count(), s};
}

Word restrict_word(const Word& x, const IndexSet& S) {
    if (S.n() != x.n()) throw ShapeError("restriction set length mismatch");
    Word w(S.count(), x.q());
    uint32_t j = 0;
    for (uint32_t i = 0; i < x.n(); ++i)
        if (S.test(i)) w.set_sym(j++, x.sym(i));
    return w;
}

Word subtract_mod_q(const Word& x, const Word& y) {
    if (!x.same_shape(y)) throw ShapeError("subtraction between mismatched shapes");
    Word r(x.n(), x.q());
    if (x.q() == 2) {
        for (size_t i = 0; i < r.packed_.size(); ++i) r.packed_[i] = x.packed_[i] ^ y.packed_[i];
        return r;
    }
    for (uint32_t i = 0; i < x.n(); ++i) {
        uint32_t v = x.sym(i) + x.q() - y.sym(i);
        r.set_sym(i, uint8_t(v % x.q()));
    }
    return r;
}

bool operator<(const Word& a, const Word& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    if (a.q_ != b.q_) return a.q_ < b.q_;
    for (size_t i = a.packed_.size(); i-- > 0;)
        if (a.packed_[i] != b.packed_[i]) return a.packed_[i] < b.packed_[i];
    return false;
}

size_t Word::hash() const {
    uint64_t h = 0x9E3779B97F4A7C15ULL ^ (uint64_t(n_) << 32 | q_);
    for (uint64_t v : packed_) {
        h ^= v + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    }
    return size_t(h);
}

ErasedWord::ErasedWord(uint32_t n, uint32_t q) : n_(n), q_(q), syms_(n, -1) {
    if (n < 1) throw ShapeError("word length must be >= 1");
    if (q < 2) throw ShapeError("alphabet size must be >= 2");
}

ErasedWord ErasedWord::reveal(const Word& x, const IndexSet& revealed) {
    if (revealed.n() != x.n()) throw ShapeError("reveal set length mismatch");
    ErasedWord a(x.n(), x.q());
    for (uint32_t i = 0; i < x.n(); ++i)
        if (revealed.test(i)) a.syms_[i] = x.sym(i);
    return a;
}

void ErasedWord::set_sym(uint32_t i, uint8_t v) {
    if (v >= q_) throw ShapeError("symbol out of alphabet");
    syms_[i] = v;
}

IndexSet ErasedWord::supp_star() const {
    IndexSet s(n_);
    for (uint32_t i = 0; i < n_; ++i)
        if (syms_[i] >= 0) s.set(i);
    return s;
}

bool agrees(const ErasedWord& a, const Word& c) {
    if (a.n() != c.n() || a.q() != c.q()) throw ShapeError("agreement between mismatched shapes");
    for (uint32_t i = 0; i < a.n(); ++i)
        if (!a.erased(i) && a.sym(i) != c.sym(i)) return false;
    return true;
}

Code::Code(uint32_t n, uint32_t q, std::vector<Word> words, std::optional<uint32_t> weight_tag)
    : n_(n), q_(q), weight_tag_(weight_tag) {
    if (weight_tag_ && *weight_tag_ > n_) throw ShapeError("weight tag exceeds length");
    std::unordered_set<Word, WordHash> seen;
    for (auto& w : words) {
        if (w.n() != n_ || w.q() != q_) throw ShapeError("codeword shape mismatch");
        if (!seen.insert(w).second) throw ShapeError("duplicate codeword");
        if (weight_tag_ && w.weight() != *weight_tag_)
            throw ShapeError("codeword violates constant-weight tag");
    }
    words_ = std::move(words);
}

void Code::add(const Word& w) {
    if (w.n() != n_ || w.q() != q_) throw ShapeError("codeword shape mismatch");
    if (contains(w)) throw ShapeError("duplicate codeword");
    if (weight_tag_ && w.weight() != *weight_tag_)
        throw ShapeError("codeword violates constant-weight tag");
    words_.push_back(w);
}

bool Code::contains(const Word& w) const {
    for (const auto& c : words_)
        if (c == w) return true;
    return false;
}

Code translate(const Code& c, const Word& x) {
    if (x.n() != c.n() || x.q() != c.q()) throw ShapeError("translation shape mismatch");
    std::vector<Word> out;
    out.reserve(c.size());
    for (const auto& w : c) out.push_back(subtract_mod_q(w, x));
    return Code(c.n(), c.q(), std::move(out));
}

ListTuple::ListTuple(std::vector<Word> members) : members_(std::move(members)) {
    if (members_.empty()) throw DomainError("empty list");
    std::unordered_set<Word, WordHash> seen;
    for (const auto& w : members_) {
        if (!w.same_shape(members_[0])) throw ShapeError("list member shape mismatch");
        if (!seen.insert(w).second) throw ShapeError("duplicate list member");
    }
}

std::pair<uint32_t, uint64_t> dist_stats(const Word& x, const ListTuple& list) {
    uint32_t maxd = 0;
    uint64_t sum = 0;
    for (const auto& c : list) {
        uint32_t d = distance(x, c);
        maxd = std::max(maxd, d);
        sum += d;
    }
    return {maxd, sum};
}

Word centroid(const ListTuple& list) {
    const Word& first = list[0];
    uint32_t n = first.n(), q = first.q();
    Word out(n, q);
    std::vector<uint32_t> counts(q);
    for (uint32_t i = 0; i < n; ++i) {
        std::fill(counts.begin(), counts.end(), 0);
        for (const auto& c : list) ++counts[c.sym(i)];
        uint32_t best = 0;
        for (uint32_t v = 1; v < q; ++v)
            if (counts[v] > counts[best]) best = v;  // ties go to the smaller symbol
        out.set_sym(i, uint8_t(best));
    }
    return out;
}

std::optional<uint64_t> WordEnumerator::space_size(uint32_t n, uint32_t q) {
    uint64_t total = 1;
    for (uint32_t i = 0; i < n; ++i) {
        if (total > ~uint64_t(0) / q) return std::nullopt;
        total *= q;
    }
    return total;
}

Word WordEnumerator::at(uint32_t n, uint32_t q, uint64_t rank) {
    Word w(n, q);
    for (uint32_t i = 0; i < n; ++i) {
        w.set_sym(i, uint8_t(rank % q));
        rank /= q;
    }
    return w;
}

bool WordEnumerator::advance() {
    uint32_t n = word_.n(), q = word_.q();
    for (uint32_t i = 0; i < n; ++i) {
        uint8_t v = word_.sym(i);
        if (v + 1u < q) {
            word_.set_sym(i, v + 1);
            return true;
        }
        word_.set_sym(i, 0);
    }
    return false;  // wrapped
}

void for_each_word(uint32_t n, uint32_t q, const std::function<bool(const Word&)>& f) {
    WordEnumerator en(n, q);
    do {
        if (!f(en.current())) return;
    } while (en.advance());
}

void for_each_combination(uint32_t m, uint32_t k,
                          const std::function<bool(const std::vector<uint32_t>&)>& f) {
    if (k > m) return;
    std::vector<uint32_t> idx(k);
    for (uint32_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        if (!f(idx)) return;
        // advance to the next combination
        uint32_t i = k;
        while (i-- > 0) {
            if (idx[i] + (k - i) < m) {
                ++idx[i];
                for (uint32_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
                break;
            }
            if (i == 0) return;
        }
        if (k == 0) return;
    }
}

}  // namespace listlab
