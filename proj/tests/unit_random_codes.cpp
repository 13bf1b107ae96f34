#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "listlab/checkers.hpp"
#include "listlab/code_io.hpp"
#include "listlab/error.hpp"
#include "listlab/random_codes.hpp"

using namespace listlab;

static Word W2(const std::string& s) { return word_from_string(2, s); }

// transposed-loop oracle: enumerate ordered message tuples first, then
// centers containing every image; a second, independent path to W
static BigInt witness_count_by_tuples(const CodeTable& table, const Rational& p, long long L) {
    uint32_t e = uint32_t((p * Rational(table.n)).floor().to_int64());
    uint64_t M = table.messages();
    std::vector<std::vector<uint64_t>> tuples;
    std::vector<uint64_t> cur;
    std::function<void()> build = [&] {
        if ((long long)cur.size() == L) {
            tuples.push_back(cur);
            return;
        }
        for (uint64_t r = 0; r < M; ++r) {
            if (std::find(cur.begin(), cur.end(), r) != cur.end()) continue;
            cur.push_back(r);
            build();
            cur.pop_back();
        }
    };
    build();
    BigInt total(0);
    for (const auto& t : tuples) {
        for_each_word(table.n, table.q, [&](const Word& a) {
            bool all = true;
            for (uint64_t r : t) all = all && distance(a, table.images[r]) <= e;
            if (all) total += BigInt(1);
            return true;
        });
    }
    return total;
}

TEST_CASE("sampling is deterministic in (seed, trial); images are in range") {
    RandomCodeSpec spec{2, 3, 5, CodeKind::general, 42};
    CodeTable a = sample_general_code(spec, 7), b = sample_general_code(spec, 7);
    CHECK(a.images.size() == 8);
    for (size_t i = 0; i < a.images.size(); ++i) CHECK(a.images[i] == b.images[i]);
    CodeTable c = sample_general_code(spec, 8);
    bool same = true;
    for (size_t i = 0; i < a.images.size(); ++i) same = same && a.images[i] == c.images[i];
    CHECK_FALSE(same);
}

TEST_CASE("image value frequencies pass a coarse uniformity screen") {
    // q=2, n=4: each of the 16 values should appear with frequency ~ 1/16
    RandomCodeSpec spec{2, 1, 4, CodeKind::general, 99};
    std::map<std::string, uint64_t> freq;
    const uint64_t trials = 100000;
    for (uint64_t t = 0; t < trials; ++t) {
        CodeTable table = sample_general_code(spec, t);
        for (const auto& w : table.images) ++freq[word_to_string(w)];
    }
    uint64_t draws = trials * 2;
    double expect = double(draws) / 16.0;
    double sigma = std::sqrt(double(draws) * (1.0 / 16.0) * (15.0 / 16.0));
    CHECK(freq.size() == 16);
    for (const auto& [value, count] : freq)
        CHECK(std::abs(double(count) - expect) <= 5.0 * sigma);
}

TEST_CASE("linear sampling: zero maps to zero and additivity holds") {
    for (uint32_t q : {2u, 3u, 5u}) {
        RandomCodeSpec spec{q, 3, 6, CodeKind::linear, 1234};
        CodeTable t = sample_linear_code(spec, 0);
        CHECK(t.images[0].weight() == 0);
        Rng rng(5);
        for (int rep = 0; rep < 50; ++rep) {
            uint64_t x = rng.uniform_below(t.messages()), y = rng.uniform_below(t.messages());
            // rank of x + y: add digit vectors mod q
            auto dx = t.message_digits(x), dy = t.message_digits(y);
            uint64_t z = 0, place = 1;
            Word expected(t.n, q);
            for (uint32_t i = 0; i < t.k; ++i) {
                z += uint64_t((dx[i] + dy[i]) % q) * place;
                place *= q;
            }
            for (uint32_t i = 0; i < t.n; ++i)
                expected.set_sym(i, uint8_t((t.images[x].sym(i) + t.images[y].sym(i)) % q));
            CHECK(t.images[z] == expected);
        }
    }
    RandomCodeSpec bad{4, 2, 4, CodeKind::linear, 0};
    CHECK_THROWS_AS(sample_linear_code(bad, 0), DomainError);
}

TEST_CASE("binary k=2 linear images form a subgroup under xor") {
    RandomCodeSpec spec{2, 2, 6, CodeKind::linear, 77};
    for (uint64_t trial = 0; trial < 20; ++trial) {
        CodeTable t = sample_linear_code(spec, trial);
        for (uint64_t x = 0; x < 4; ++x)
            for (uint64_t y = 0; y < 4; ++y) {
                Word sum = subtract_mod_q(t.images[x], t.images[y]);
                bool member = false;
                for (uint64_t z = 0; z < 4; ++z) member = member || t.images[z] == sum;
                CHECK(member);
            }
    }
}

TEST_CASE("witness counts on the worked micro-examples") {
    CodeTable table{2, 1, 2, CodeKind::general, {W2("00"), W2("11")}};
    auto stats = count_witnesses(table, ChannelMode::error, Rational(1, 2), 2);
    CHECK(stats.W == BigInt(4));  // centers 01 and 10, two ordered pairs each
    CHECK(stats.e_or_s == 1);

    auto l1 = count_witnesses(table, ChannelMode::error, Rational(1, 2), 1);
    CHECK(l1.W == BigInt(6));  // each image owns a radius-1 ball of 3 centers

    CodeTable erasure_table{2, 1, 2, CodeKind::general, {W2("00"), W2("10")}};
    auto er = count_witnesses(erasure_table, ChannelMode::erasure, Rational(1, 2), 2);
    CHECK(er.W == BigInt(2));  // support {2}: both restrict to 0
    CHECK(er.e_or_s == 1);
}

TEST_CASE("witness counting agrees with the transposed-loop oracle") {
    Rng seeds(404);
    for (int rep = 0; rep < 30; ++rep) {
        RandomCodeSpec spec{2, 1 + uint32_t(seeds.uniform_below(2)),
                            2 + uint32_t(seeds.uniform_below(3)), CodeKind::general,
                            seeds.next_u64()};
        CodeTable table = sample_general_code(spec, rep);
        Rational p(1, 2);
        long long L = 2;
        auto fast = count_witnesses(table, ChannelMode::error, p, L);
        CHECK(fast.W == witness_count_by_tuples(table, p, L));
    }
}

TEST_CASE("witness count is zero exactly when the image code is decodable") {
    Rng seeds(405);
    int nontrivial = 0;
    for (int rep = 0; rep < 60; ++rep) {
        RandomCodeSpec spec{2, 2, 4 + uint32_t(seeds.uniform_below(3)), CodeKind::general,
                            seeds.next_u64()};
        CodeTable table = sample_general_code(spec, rep);
        Rational p(1, 4);
        long long L = 2;
        auto stats = count_witnesses(table, ChannelMode::error, p, L);
        Code image = table.image_code();
        bool decodable =
            check_list_decodable(DecodabilityQuery(image, p, L, CheckMode::max_radius))
                .decodable;
        // W = 0 always implies decodability of the image set
        if (stats.W.is_zero()) CHECK(decodable);
        // and the equivalence holds whenever images do not collide
        if (table.injective()) {
            CHECK(stats.W.is_zero() == decodable);
            nontrivial += !decodable;
        }
        // erasure side: same equivalence through the erasure checker
        auto estats = count_witnesses(table, ChannelMode::erasure, p, L);
        bool edecodable = check_erasure_list_decodable(
                              DecodabilityQuery(image, p, L, CheckMode::erasure))
                              .decodable;
        if (estats.W.is_zero()) CHECK(edecodable);
        if (table.injective()) CHECK(estats.W.is_zero() == edecodable);
    }
    CHECK(nontrivial > 0);
}

// transposed oracle for linear tables: enumerate ordered message tuples,
// test independence by elimination, then count centers containing all images
static BigInt independent_witnesses_by_tuples(const CodeTable& table, const Rational& p,
                                              long long L) {
    uint32_t e = uint32_t((p * Rational(table.n)).floor().to_int64());
    uint64_t M = table.messages();
    BigInt total(0);
    std::vector<uint64_t> cur;
    // rank of a message set via elimination over its digit vectors
    auto independent = [&](const std::vector<uint64_t>& ranks) {
        std::vector<std::vector<uint8_t>> mat;
        for (uint64_t r : ranks) mat.push_back(table.message_digits(r));
        uint32_t q = table.q, rank = 0;
        for (uint32_t col = 0; col < table.k && rank < mat.size(); ++col) {
            uint32_t pivot = rank;
            while (pivot < mat.size() && mat[pivot][col] == 0) ++pivot;
            if (pivot == mat.size()) continue;
            std::swap(mat[rank], mat[pivot]);
            uint32_t inv = 1;
            for (uint32_t c = 1; c < q; ++c)
                if (c * mat[rank][col] % q == 1) inv = c;
            for (auto& x : mat[rank]) x = uint8_t(x * inv % q);
            for (uint32_t r2 = 0; r2 < mat.size(); ++r2) {
                if (r2 == rank || mat[r2][col] == 0) continue;
                uint32_t c = mat[r2][col];
                for (uint32_t i = 0; i < table.k; ++i)
                    mat[r2][i] = uint8_t((mat[r2][i] + (q - c) * mat[rank][i]) % q);
            }
            ++rank;
        }
        return rank == mat.size();
    };
    std::function<void()> build = [&] {
        if ((long long)cur.size() == L) {
            if (!independent(cur)) return;
            for_each_word(table.n, table.q, [&](const Word& a) {
                bool all = true;
                for (uint64_t r : cur) all = all && distance(a, table.images[r]) <= e;
                if (all) total += BigInt(1);
                return true;
            });
            return;
        }
        for (uint64_t r = 0; r < M; ++r) {
            if (std::find(cur.begin(), cur.end(), r) != cur.end()) continue;
            cur.push_back(r);
            build();
            cur.pop_back();
        }
    };
    build();
    return total;
}

// transposed erasure oracle: for each ordered message tuple and each support,
// one received word exists exactly when all images share the restriction
static BigInt erasure_witnesses_by_tuples(const CodeTable& table, const Rational& p,
                                          long long L) {
    uint32_t s = uint32_t(((Rational(1) - p) * Rational(table.n)).ceil().to_int64());
    uint64_t M = table.messages();
    BigInt total(0);
    std::vector<uint64_t> cur;
    std::function<void()> build = [&] {
        if ((long long)cur.size() == L) {
            for_each_combination(table.n, s, [&](const std::vector<uint32_t>& positions) {
                IndexSet S = IndexSet::of(table.n, positions);
                Word first = restrict_word(table.images[cur[0]], S);
                bool all = true;
                for (uint64_t r : cur) all = all && restrict_word(table.images[r], S) == first;
                if (all) total += BigInt(1);
                return true;
            });
            return;
        }
        for (uint64_t r = 0; r < M; ++r) {
            if (std::find(cur.begin(), cur.end(), r) != cur.end()) continue;
            cur.push_back(r);
            build();
            cur.pop_back();
        }
    };
    build();
    return total;
}

TEST_CASE("erasure witness counting agrees with the transposed oracle") {
    Rng seeds(408);
    for (int rep = 0; rep < 25; ++rep) {
        RandomCodeSpec spec{2, 1 + uint32_t(seeds.uniform_below(2)),
                            3 + uint32_t(seeds.uniform_below(3)), CodeKind::general,
                            seeds.next_u64()};
        CodeTable table = sample_general_code(spec, rep);
        Rational p(1 + (long long)seeds.uniform_below(table.n - 1), (long long)table.n);
        auto fast = count_witnesses(table, ChannelMode::erasure, p, 2);
        CHECK(fast.W == erasure_witnesses_by_tuples(table, p, 2));
    }
}

TEST_CASE("linear witness counting agrees with the independence oracle") {
    Rng seeds(406);
    for (int rep = 0; rep < 20; ++rep) {
        uint32_t q = rep % 2 ? 3u : 2u;
        RandomCodeSpec spec{q, 2, 3 + uint32_t(seeds.uniform_below(2)), CodeKind::linear,
                            seeds.next_u64()};
        CodeTable table = sample_linear_code(spec, rep);
        Rational p(1, 2);
        auto fast = count_witnesses(table, ChannelMode::error, p, 2);
        CHECK(fast.independent_lists);
        CHECK(fast.W == independent_witnesses_by_tuples(table, p, 2));
    }
}

TEST_CASE("full-rank linear tables: decodable image implies zero witnesses") {
    Rng seeds(407);
    for (int rep = 0; rep < 40; ++rep) {
        RandomCodeSpec spec{2, 2, 5 + uint32_t(seeds.uniform_below(3)), CodeKind::linear,
                            seeds.next_u64()};
        CodeTable table = sample_linear_code(spec, rep);
        if (!table.injective()) continue;  // rank-deficient draw
        Rational p(1, 4);
        auto stats = count_witnesses(table, ChannelMode::error, p, 2);
        Code image = table.image_code();
        bool decodable =
            check_list_decodable(DecodabilityQuery(image, p, 2, CheckMode::max_radius))
                .decodable;
        if (decodable) CHECK(stats.W.is_zero());
        // dependent lists may violate even when independent ones cannot, so
        // the converse direction is not asserted
    }
}

TEST_CASE("empirical zero probability respects the second-moment bound") {
    // Pr[W=0] <= sampleVar/(exact EW)^2 + 3 * CI half-width, per configuration
    struct Config {
        uint32_t q, k, n;
        CodeKind kind;
        ChannelMode mode;
        Rational p;
    };
    std::vector<Config> configs = {
        {2, 2, 6, CodeKind::general, ChannelMode::error, Rational(1, 3)},
        {2, 2, 6, CodeKind::general, ChannelMode::erasure, Rational(1, 2)},
        {2, 2, 6, CodeKind::linear, ChannelMode::error, Rational(1, 3)},
        {3, 2, 5, CodeKind::linear, ChannelMode::erasure, Rational(2, 5)},
    };
    for (const auto& c : configs) {
        McConfig cfg;
        cfg.spec = {c.q, c.k, c.n, c.kind, 8088};
        cfg.mode = c.mode;
        cfg.p = c.p;
        cfg.L = 2;
        cfg.trials = 1000;
        McReport rep = mc_campaign(cfg);
        REQUIRE(rep.exact_EW > Rational(0));
        REQUIRE(rep.chebyshev_bound.has_value());
        double ci_half = (rep.pr_w0_hi - rep.pr_w0_lo) / 2.0;
        CHECK(rep.pr_w0 <= rep.chebyshev_bound->to_double() + 3.0 * ci_half);
    }
}

TEST_CASE("full table enumeration reproduces the exact expectation") {
    // every (n, k, L) pair small enough to enumerate all q^(n q^k) tables
    struct Case {
        uint32_t n, k;
        long long L;
    };
    for (Case cs : {Case{2, 1, 2}, Case{3, 1, 2}}) {
        RandomCodeSpec spec{2, cs.k, cs.n, CodeKind::general, 0};
        for (ChannelMode mode : {ChannelMode::error, ChannelMode::erasure}) {
            Rational p(1, 2);
            BigInt total(0);
            uint64_t tables = 0;
            for_each_code_table(2, cs.k, cs.n, [&](const CodeTable& t) {
                total += count_witnesses(t, mode, p, cs.L).W;
                ++tables;
            });
            CHECK(Rational(total, BigInt(tables)) == exact_expected_W(spec, mode, p, cs.L));
        }
    }
}

TEST_CASE("exact expectation closed forms") {
    RandomCodeSpec g{2, 1, 2, CodeKind::general, 0};
    CHECK(exact_expected_W(g, ChannelMode::error, Rational(1, 2), 2) == Rational(9, 2));
    RandomCodeSpec lin{2, 2, 4, CodeKind::linear, 0};
    // N_X = (4-1)(4-2) = 6
    Rational mu = ball_fraction(2, 4, 2);
    CHECK(exact_expected_W(lin, ChannelMode::error, Rational(1, 2), 2) ==
          Rational(6) * Rational(16) * mu * mu);
    // L = 1: q^k * q^n * mu
    CHECK(exact_expected_W(g, ChannelMode::error, Rational(1, 2), 1) ==
          Rational(2) * Rational(4) * ball_fraction(2, 2, 1));
    // L larger than the message space: no tuples at all
    CHECK(exact_expected_W(g, ChannelMode::error, Rational(1, 2), 5) == Rational(0));
}

TEST_CASE("campaign mean approaches the exact expectation and reports are sane") {
    McConfig cfg;
    cfg.spec = {2, 2, 6, CodeKind::general, 2024};
    cfg.mode = ChannelMode::error;
    cfg.p = Rational(1, 3);
    cfg.L = 2;
    cfg.trials = 4000;
    McReport rep = mc_campaign(cfg);
    CHECK(rep.exact_EW > Rational(0));
    // mean within 4 standard errors of the exact expectation
    double se = std::sqrt(rep.var_W.to_double() / double(rep.trials));
    CHECK(std::abs(rep.mean_W.to_double() - rep.exact_EW.to_double()) <= 4.0 * se + 1e-12);
    CHECK(rep.pr_w0_lo <= rep.pr_w0);
    CHECK(rep.pr_w0 <= rep.pr_w0_hi);
    if (rep.chebyshev_bound) CHECK(*rep.chebyshev_bound <= Rational(1));

    McConfig empty = cfg;
    empty.trials = 0;
    McReport er = mc_campaign(empty);  // no division by zero
    CHECK(er.trials == 0);
    CHECK(er.mean_W == Rational(0));
}

TEST_CASE("campaigns are reproducible and worker-count independent") {
    McConfig cfg;
    cfg.spec = {2, 2, 5, CodeKind::linear, 555};
    cfg.mode = ChannelMode::erasure;
    cfg.p = Rational(2, 5);
    cfg.L = 2;
    cfg.trials = 200;
    cfg.workers = 1;
    McReport a = mc_campaign(cfg);
    cfg.workers = 4;
    McReport b = mc_campaign(cfg);
    CHECK(a.mean_W == b.mean_W);
    CHECK(a.var_W == b.var_W);
    CHECK(a.zero_trials == b.zero_trials);
}

TEST_CASE("dimension from rate gap") {
    auto [k_err, g_err] = dimension_for_gap(2, 16, Rational(1, 4), Rational(1, 100),
                                            ChannelMode::error);
    CHECK(k_err >= 1);
    CHECK(k_err <= 16);
    // erasures: exact arithmetic, k = ceil((1 - 1/2 - 1/8) 16) = 6
    auto [k_era, g_era] = dimension_for_gap(2, 16, Rational(1, 2), Rational(1, 8),
                                            ChannelMode::erasure);
    CHECK(k_era == 6);
    CHECK(g_era == doctest::Approx(0.5 - 6.0 / 16.0).epsilon(1e-12));
}

TEST_CASE("list size sweep tracks the persistence threshold") {
    McConfig cfg;
    cfg.spec = {2, 0, 8, CodeKind::general, 31337};
    cfg.mode = ChannelMode::error;
    cfg.p = Rational(1, 4);
    cfg.gamma = Rational(1, 10);
    cfg.trials = 150;
    auto sweep = sweep_list_size(cfg, 4);
    CHECK(sweep.violating_fraction.size() == 4);
    // fractions are non-increasing in L up to sampling noise; L=1 violates a lot
    CHECK(sweep.violating_fraction[0].second > 0.5);
    CHECK(sweep.max_persistent_L >= 1);
}

TEST_CASE("affine closure on the worked examples") {
    // q=3, a=(1,?), c1=(1,0), c2=(1,1): all three affine combinations agree
    ErasedWord a = erased_word_from_string(3, "1?");
    Word c1 = word_from_string(3, "10"), c2 = word_from_string(3, "11");
    CHECK(affine_closure({c1, c2}, a, true) == 3);

    // L=1: the single combination is the word itself
    CHECK(affine_closure({c1}, a, true) == 1);

    // q=2: exactly the two inputs
    ErasedWord a2 = erased_word_from_string(2, "1??");
    CHECK(affine_closure({word_from_string(2, "100"), word_from_string(2, "110")}, a2, true) ==
          2);

    CHECK_THROWS_AS(affine_closure({word_from_string(2, "000")}, a2, false), DomainError);
}

TEST_CASE("affine closure of dependent words can collapse") {
    // identical rows are dependent; closure stays a single point
    ErasedWord a = erased_word_from_string(3, "??");
    Word c = word_from_string(3, "12");
    CHECK_THROWS_AS(affine_closure({c, c}, a, true), DomainError);
    CHECK(affine_closure({c, c}, a, false) == 1);
}

TEST_CASE("ball sum membership: exact toy value and basic behavior") {
    // q=2, n=2, p=1/2, m=2: exact probability 7/9
    auto est = ball_sum_estimate(2, Rational(1, 2), 2, 2, 100000, 99);
    CHECK(est.lo <= 7.0 / 9.0);
    CHECK(7.0 / 9.0 <= est.hi);

    // m=1: a single sample always stays inside
    auto one = ball_sum_estimate(2, Rational(1, 2), 8, 1, 500, 1);
    CHECK(one.p_hat == 1.0);
    CHECK(one.slope == 0.0);

    CHECK_THROWS_AS(ball_sum_estimate(2, Rational(1, 2), 4, 0, 10, 1), DomainError);
}

TEST_CASE("ball sum decay slope is positive and settles from above") {
    // exact slopes for m=2, q=2, p=1/4 (by full convolution over the ball):
    //   n=8: 0.144895, n=16: 0.127554, n=24: 0.117754, n=32: 0.111398
    // positive throughout and decreasing toward the limiting constant; the
    // finite-n excess is the polynomial prefactor of the decay bound
    const double exact_slope[] = {0.144895, 0.127554, 0.117754, 0.111398};
    const uint32_t ns[] = {8, 16, 24, 32};
    double prev = 1e9;
    for (int i = 0; i < 4; ++i) {
        auto est = ball_sum_estimate(2, Rational(1, 4), ns[i], 2, 40000, 7);
        CHECK(est.slope > 0.0);
        CHECK(est.slope == doctest::Approx(exact_slope[i]).epsilon(0.05));
        CHECK(est.slope <= prev + 0.005);  // CI-aware monotone decrease
        prev = est.slope;
    }
}
