#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "listlab/code_io.hpp"
#include "listlab/error.hpp"
#include "listlab/hamming.hpp"
#include "listlab/rng.hpp"

using namespace listlab;

static Word W(uint32_t q, const std::string& s) { return word_from_string(q, s); }

static Word random_word(Rng& rng, uint32_t n, uint32_t q) {
    Word w(n, q);
    for (uint32_t i = 0; i < n; ++i) w.set_sym(i, uint8_t(rng.uniform_below(q)));
    return w;
}

TEST_CASE("distance basics") {
    CHECK(distance(W(2, "000"), W(2, "000")) == 0);
    CHECK(distance(W(2, "0011"), W(2, "0101")) == 2);
    CHECK(distance(W(3, "012"), W(3, "021")) == 2);
    CHECK_THROWS_AS(distance(W(2, "00"), W(2, "000")), ShapeError);
    CHECK_THROWS_AS(distance(W(2, "00"), W(3, "00")), ShapeError);
}

TEST_CASE("distance is a metric on random triples over several alphabets") {
    Rng rng(42);
    for (uint32_t q : {2u, 3u, 5u, 16u, 17u}) {
        for (int rep = 0; rep < 300; ++rep) {
            uint32_t n = 1 + uint32_t(rng.uniform_below(40));
            Word x = random_word(rng, n, q), y = random_word(rng, n, q),
                 z = random_word(rng, n, q);
            uint32_t dxy = distance(x, y);
            CHECK(dxy == distance(y, x));
            CHECK((dxy == 0) == (x == y));
            CHECK(dxy <= distance(x, z) + distance(z, y));
            CHECK(dxy <= n);
        }
    }
}

TEST_CASE("packed distance agrees with symbolwise comparison") {
    Rng rng(43);
    for (uint32_t q : {2u, 4u, 11u, 16u, 100u, 256u}) {
        for (int rep = 0; rep < 200; ++rep) {
            uint32_t n = 1 + uint32_t(rng.uniform_below(70));
            Word x = random_word(rng, n, q), y = random_word(rng, n, q);
            uint32_t slow = 0;
            for (uint32_t i = 0; i < n; ++i) slow += x.sym(i) != y.sym(i);
            CHECK(distance(x, y) == slow);
        }
    }
}

TEST_CASE("weight and support") {
    auto [w0, s0] = weight_support(W(2, "0000"));
    CHECK(w0 == 0);
    CHECK(s0.count() == 0);
    auto [w1, s1] = weight_support(W(2, "0110"));
    CHECK(w1 == 2);
    CHECK(s1.to_positions() == std::vector<uint32_t>{1, 2});  // 1-indexed: {2,3}
    auto [w2, s2] = weight_support(W(3, "102"));
    CHECK(w2 == 2);
    CHECK(s2.to_positions() == std::vector<uint32_t>{0, 2});
    CHECK(W(2, "0110").weight() == distance(W(2, "0000"), W(2, "0110")));
}

TEST_CASE("weight_on matches weight of restriction") {
    Rng rng(44);
    for (uint32_t q : {2u, 3u, 16u}) {
        for (int rep = 0; rep < 200; ++rep) {
            uint32_t n = 1 + uint32_t(rng.uniform_below(30));
            Word x = random_word(rng, n, q);
            uint32_t k = uint32_t(rng.uniform_below(n + 1));
            IndexSet S = IndexSet::of(n, rng.sample_subset(n, k));
            Word r = restrict_word(x, S);
            CHECK(r.n() == k);
            CHECK(x.weight_on(S) == r.weight());
        }
    }
}

TEST_CASE("restriction preserves order and handles edge sets") {
    Word x = W(2, "0110");
    Word r = restrict_word(x, IndexSet::of(4, {0, 1}));
    CHECK(word_to_string(r) == "01");
    CHECK(restrict_word(x, IndexSet::full(4)) == x);
    CHECK(restrict_word(x, IndexSet(4)).n() == 0);
    CHECK_THROWS_AS(restrict_word(x, IndexSet(3)), ShapeError);
}

TEST_CASE("translation") {
    std::vector<Word> ws = {W(2, "011"), W(2, "101")};
    Code c(3, 2, ws);
    Code t = translate(c, W(2, "001"));
    CHECK(t[0] == W(2, "010"));
    CHECK(t[1] == W(2, "100"));
    Code t0 = translate(c, W(2, "000"));
    CHECK(t0[0] == c[0]);
    CHECK(t0[1] == c[1]);
    CHECK_THROWS_AS(translate(c, W(2, "0011")), ShapeError);
}

TEST_CASE("translation preserves pairwise distances and recenters weights") {
    Rng rng(45);
    for (uint32_t q : {2u, 3u, 7u}) {
        for (int rep = 0; rep < 100; ++rep) {
            uint32_t n = 2 + uint32_t(rng.uniform_below(12));
            std::vector<Word> ws;
            Code c(n, q);
            for (int i = 0; i < 6; ++i) {
                Word w = random_word(rng, n, q);
                try {
                    c.add(w);
                } catch (const ShapeError&) {
                }
            }
            Word x = random_word(rng, n, q);
            Code t = translate(c, x);
            for (size_t i = 0; i < c.size(); ++i) {
                CHECK(t[i].weight() == distance(x, c[i]));
                for (size_t j = i + 1; j < c.size(); ++j)
                    CHECK(distance(t[i], t[j]) == distance(c[i], c[j]));
            }
        }
    }
}

TEST_CASE("dist_stats") {
    ListTuple l1({W(2, "000")});
    CHECK(dist_stats(W(2, "000"), l1) == std::pair<uint32_t, uint64_t>{0, 0});
    ListTuple l2({W(2, "000"), W(2, "011"), W(2, "101")});
    CHECK(dist_stats(W(2, "001"), l2) == std::pair<uint32_t, uint64_t>{1, 3});
    ListTuple l3({W(2, "000"), W(2, "111")});
    CHECK(dist_stats(W(2, "000"), l3) == std::pair<uint32_t, uint64_t>{3, 3});
    CHECK_THROWS_AS(ListTuple({}), DomainError);
}

TEST_CASE("max distance dominates the average: exact integer form") {
    Rng rng(46);
    for (int rep = 0; rep < 500; ++rep) {
        uint32_t q = 2 + uint32_t(rng.uniform_below(4));
        uint32_t n = 1 + uint32_t(rng.uniform_below(10));
        uint32_t L = 1 + uint32_t(rng.uniform_below(5));
        uint64_t space = *WordEnumerator::space_size(n, q);
        L = uint32_t(std::min<uint64_t>(L, space));
        std::vector<Word> members;
        while (members.size() < L) {
            Word w = random_word(rng, n, q);
            bool dup = false;
            for (const auto& m : members) dup = dup || m == w;
            if (!dup) members.push_back(w);
        }
        ListTuple list(members);
        Word x = random_word(rng, n, q);
        auto [maxd, sum] = dist_stats(x, list);
        CHECK(uint64_t(maxd) * list.size() >= sum);
    }
}

// exhaustive oracle for the centroid: scan all q^n centers
static uint64_t min_sum_by_enumeration(const ListTuple& list, uint32_t n, uint32_t q) {
    uint64_t best = ~uint64_t(0);
    for_each_word(n, q, [&](const Word& x) {
        best = std::min(best, dist_stats(x, list).second);
        return true;
    });
    return best;
}

TEST_CASE("centroid attains the exhaustive minimum distance sum") {
    ListTuple l2({W(2, "000"), W(2, "011"), W(2, "101")});
    Word c = centroid(l2);
    CHECK(c == W(2, "001"));
    CHECK(dist_stats(c, l2).second == 3);
    CHECK(min_sum_by_enumeration(l2, 3, 2) == 3);

    ListTuple single({W(3, "0121")});
    CHECK(centroid(single) == W(3, "0121"));

    ListTuple tie({W(2, "00"), W(2, "11")});
    CHECK(centroid(tie) == W(2, "00"));  // ties toward the smaller symbol
    CHECK(dist_stats(centroid(tie), tie).second == 2);
    CHECK(min_sum_by_enumeration(tie, 2, 2) == 2);

    Rng rng(47);
    for (int rep = 0; rep < 300; ++rep) {
        uint32_t q = 2 + uint32_t(rng.uniform_below(3));
        uint32_t n = 1 + uint32_t(rng.uniform_below(q == 2 ? 10 : 6));
        uint32_t L = 1 + uint32_t(rng.uniform_below(6));
        uint64_t space = *WordEnumerator::space_size(n, q);
        L = uint32_t(std::min<uint64_t>(L, space));
        std::vector<Word> members;
        while (members.size() < L) {
            Word w = random_word(rng, n, q);
            bool dup = false;
            for (const auto& m : members) dup = dup || m == w;
            if (!dup) members.push_back(w);
        }
        ListTuple list(members);
        CHECK(dist_stats(centroid(list), list).second == min_sum_by_enumeration(list, n, q));
    }
}

TEST_CASE("erased word agreement") {
    ErasedWord a = erased_word_from_string(2, "1?");
    CHECK(agrees(a, W(2, "10")));
    CHECK(agrees(a, W(2, "11")));
    CHECK_FALSE(agrees(a, W(2, "00")));
    ErasedWord blank(3, 2);
    CHECK(blank.supp_star().count() == 0);
    CHECK(agrees(blank, W(2, "101")));
    CHECK(agrees(blank, W(2, "010")));
    ErasedWord r = ErasedWord::reveal(W(2, "1010"), IndexSet::of(4, {0, 2}));
    CHECK(erased_word_to_string(r) == "1?1?");
    CHECK(r.supp_star().to_positions() == std::vector<uint32_t>{0, 2});
}

TEST_CASE("code invariants") {
    CHECK_THROWS_AS(Code(3, 2, {W(2, "010"), W(2, "010")}), ShapeError);
    CHECK_THROWS_AS(Code(3, 2, {W(2, "0100")}), ShapeError);
    CHECK_THROWS_AS(Code(3, 2, {W(2, "011")}, 1), ShapeError);
    Code cw(3, 2, {W(2, "011"), W(2, "110")}, 2);
    CHECK(cw.weight_tag() == 2);
}

TEST_CASE("word enumeration covers the space in odometer order") {
    int count = 0;
    Word last(2, 3);
    for_each_word(2, 3, [&](const Word& w) {
        last = w;
        ++count;
        return true;
    });
    CHECK(count == 9);
    CHECK(last == W(3, "22"));
    CHECK(WordEnumerator::space_size(2, 3) == 9);
    CHECK(WordEnumerator::space_size(64, 2) == std::nullopt);  // 2^64 overflows
    CHECK(WordEnumerator::at(3, 2, 5) == W(2, "101"));         // coordinate 0 fastest
}

TEST_CASE("combination enumeration") {
    std::vector<std::vector<uint32_t>> seen;
    for_each_combination(4, 2, [&](const std::vector<uint32_t>& c) {
        seen.push_back(c);
        return true;
    });
    CHECK(seen.size() == 6);
    CHECK(seen.front() == std::vector<uint32_t>{0, 1});
    CHECK(seen.back() == std::vector<uint32_t>{2, 3});
    int n5 = 0;
    for_each_combination(6, 3, [&](const std::vector<uint32_t>&) {
        ++n5;
        return true;
    });
    CHECK(n5 == 20);
}

TEST_CASE("code file round trip") {
    Code c(4, 3, {W(3, "0012"), W(3, "2100")}, std::nullopt);
    std::ostringstream os;
    write_code(os, c);
    std::istringstream is(os.str());
    Code back = read_code(is);
    CHECK(back.size() == 2);
    CHECK(back.n() == 4);
    CHECK(back.q() == 3);
    CHECK(back[0] == c[0]);
    CHECK(back[1] == c[1]);

    std::istringstream tagged("#code q=2 n=3\n#weight w=2\n011\n110\n");
    Code t = read_code(tagged);
    CHECK(t.weight_tag() == 2);

    std::istringstream bad("#code q=2 n=3\n012\n");
    CHECK_THROWS_AS(read_code(bad), ShapeError);
    std::istringstream nohdr("011\n");
    CHECK_THROWS_AS(read_code(nohdr), ShapeError);
}

TEST_CASE("word text round trip across alphabets") {
    Rng rng(48);
    for (uint32_t q : {2u, 3u, 10u, 16u}) {
        for (int rep = 0; rep < 50; ++rep) {
            uint32_t n = 1 + uint32_t(rng.uniform_below(20));
            Word w = random_word(rng, n, q);
            CHECK(word_from_string(q, word_to_string(w)) == w);
        }
    }
}
