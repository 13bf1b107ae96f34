#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "listlab/hamming.hpp"
#include "listlab/numerics.hpp"
#include "listlab/rng.hpp"

namespace listlab {

enum class CodeKind { general, linear };
enum class ChannelMode { error, erasure };

const char* to_string(CodeKind kind);
const char* to_string(ChannelMode mode);

struct RandomCodeSpec {
    uint32_t q = 2;
    uint32_t k = 1;  // message length
    uint32_t n = 1;  // blocklength
    CodeKind kind = CodeKind::general;
    uint64_t master_seed = 0;
};

// A sampled encoding map [q]^k -> [q]^n. Images are indexed by message
// rank (mixed radix, digit 0 fastest) and may collide; witness counting
// works over the map, not the image set.
struct CodeTable {
    uint32_t q = 2, k = 1, n = 1;
    CodeKind kind = CodeKind::general;
    std::vector<Word> images;  // size q^k

    uint64_t messages() const { return images.size(); }
    std::vector<uint8_t> message_digits(uint64_t rank) const;
    // distinct images as a Code (collisions merged)
    Code image_code() const;
    bool injective() const;
};

struct WitnessBudgets {
    uint64_t message_space = uint64_t(1) << 20;  // cap on q^k when sampling
    double error_work = double(uint64_t(1) << 26);   // q^n * C(q^k, L) * L!
    double erasure_work = double(uint64_t(1) << 26);  // C(n, s) * q^k
};

// Images i.i.d. uniform over [q]^n; deterministic in (master_seed, trial).
CodeTable sample_general_code(const RandomCodeSpec& spec, uint64_t trial_index,
                              const WitnessBudgets& budgets = {});
// Basis images i.i.d. uniform, extended linearly; q must be prime.
CodeTable sample_linear_code(const RandomCodeSpec& spec, uint64_t trial_index,
                             const WitnessBudgets& budgets = {});
CodeTable sample_code(const RandomCodeSpec& spec, uint64_t trial_index,
                      const WitnessBudgets& budgets = {});

// Exact violation count for one sampled table.
//   error mode:   pairs (center a, ordered message L-tuple X) with every
//                 image within floor(p n) of a; linear tables restrict X to
//                 linearly independent tuples.
//   erasure mode: pairs (a with ceil((1-p)n) revealed coordinates, X) with
//                 every image agreeing with a; counted by bucketing
//                 restrictions, no center enumeration.
struct WitnessStats {
    BigInt W;
    ChannelMode mode = ChannelMode::error;
    long long L = 1;
    uint32_t e_or_s = 0;           // radius (error) or support size (erasure)
    bool independent_lists = false;  // linear tables count independent tuples
};
WitnessStats count_witnesses(const CodeTable& table, ChannelMode mode, const Rational& p,
                             long long L, const WitnessBudgets& budgets = {});

// Exact E W over the code distribution:
//   general/error    N_X q^n mu^L        N_X = q^k (q^k - 1) ... (q^k - L + 1)
//   linear/error     N_X q^n mu^L        N_X = (q^k - 1)(q^k - q) ... (q^k - q^(L-1))
//   general/erasure  N_X C(n,s) q^s q^(-sL),   and likewise for linear
Rational exact_expected_W(const RandomCodeSpec& spec, ChannelMode mode, const Rational& p,
                          long long L);

// Visit every possible code table of the given shape (there are q^(n q^k));
// the exhaustive oracle behind the expectation formulas.
void for_each_code_table(uint32_t q, uint32_t k, uint32_t n,
                         const std::function<void(const CodeTable&)>& fn);

// Monte Carlo campaign over seeded trials.
struct McConfig {
    RandomCodeSpec spec;
    ChannelMode mode = ChannelMode::error;
    Rational p;
    long long L = 2;
    uint64_t trials = 0;
    std::optional<Rational> gamma;  // when set, k is derived from the rate gap
    WitnessBudgets budgets;
    uint32_t workers = 0;
    double confidence_z = 2.5758293035489004;  // 99% two-sided
};

struct McReport {
    RandomCodeSpec spec;  // with the realized k
    ChannelMode mode = ChannelMode::error;
    Rational p;
    long long L = 2;
    uint64_t trials = 0;
    uint32_t e_or_s = 0;
    std::optional<Rational> gamma_requested;
    double gamma_realized = 0.0;
    Rational mean_W, var_W;  // exact sample statistics
    Rational exact_EW;
    uint64_t zero_trials = 0;
    double pr_w0 = 0.0, pr_w0_lo = 0.0, pr_w0_hi = 0.0;  // Wilson interval
    std::optional<Rational> chebyshev_bound;  // sample var / (exact E W)^2
};
McReport mc_campaign(const McConfig& config);

// k = ceil((1 - h_q(p) - gamma) n) for errors, ceil((1 - p - gamma) n) for
// erasures, clamped to >= 1; second value is the realized gap.
std::pair<uint32_t, double> dimension_for_gap(uint32_t q, uint32_t n, const Rational& p,
                                              const Rational& gamma, ChannelMode mode);

// Largest L (up to L_max) for which more than half the trials still carry a
// violation, plus the per-L violating fractions.
struct ListSizeSweep {
    long long max_persistent_L = 0;
    std::vector<std::pair<long long, double>> violating_fraction;  // (L, fraction)
    std::vector<McReport> reports;
};
ListSizeSweep sweep_list_size(const McConfig& base, long long L_max);

// Distinct affine combinations (coefficients summing to 1) of the given
// agreeing words that also agree with a; q^(L-1) exactly when the words are
// linearly independent members of a linear code (checked when requested).
uint64_t affine_closure(const std::vector<Word>& words, const ErasedWord& a,
                        bool check_independent);

// Membership probability of a sum of m uniform ball points staying in the
// ball, with a Wilson interval, and the per-coordinate decay slope.
struct BallSumEstimate {
    uint64_t hits = 0, trials = 0;
    double p_hat = 0.0, lo = 0.0, hi = 0.0;
    double slope = 0.0;  // -(1/n) log_q p_hat; 0 when p_hat is 0
};
BallSumEstimate ball_sum_estimate(uint32_t q, const Rational& p, uint32_t n, uint32_t m,
                                  uint64_t trials, uint64_t seed,
                                  double confidence_z = 2.5758293035489004);

bool is_prime(uint32_t v);

}  // namespace listlab
