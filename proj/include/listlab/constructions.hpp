#pragma once

#include <optional>
#include <vector>

#include "listlab/attack_params.hpp"
#include "listlab/hamming.hpp"
#include "listlab/rational.hpp"
#include "listlab/rng.hpp"

namespace listlab {

// Output of an adversarial-center construction: the center, the list it
// gathers, the closed-form distance caps, and the exactly recomputed
// achieved statistics. Every constructor re-verifies its caps and throws
// logic_error if they fail, independent of probabilistic success.
struct AttackResult {
    Word center;
    std::vector<Word> list;
    long long per_word_bound = 0;  // cap on every listed word's distance
    long long avg_bound = 0;       // cap on the distance sum over the list
    uint32_t achieved_max = 0;
    uint64_t achieved_sum = 0;
    bool success = true;     // probabilistic constructions: list reached size L
    long long shortfall = 0;  // L - |list| when unsuccessful
    std::vector<long long> member_bounds;  // per-member caps when they differ
};

// Fixed-weight indicator center: S of size alpha*n with
// alpha = (lambda-p)/(1-2p); the list collects codewords with restricted
// weight at least (1-p) alpha n, each then within p*n of the center.
// Requires a binary constant-weight code and integral alpha*n.
AttackResult lemma13_center(const Code& code, const Rational& p, Rng& rng);

// Indicator of a random subset of a designated codeword's support, of size
// beta*n with beta = (lambda-p)/(1-2p+2p/L). On success the returned list
// is the designated codeword plus L-1 members and its distance sum is at
// most p*n*L exactly.
AttackResult thm11_attack(const Code& code, const Rational& p, long long L, Rng& rng);

// Indicator of the common support of a random L-subset; every member sits
// at distance exactly weight - |common support|.
AttackResult thm15_center(const Code& code, long long L, Rng& rng);

// Exact expectation of the common-support size |S| of a uniform L-subset,
// and the convexity lower bound n*C(lambda M, L)/C(M, L). The bound is a
// valid lower bound whenever lambda*M >= L-1 (jensen_valid).
struct CommonSupportExpectation {
    Rational exact;
    Rational lower_bound;
    bool jensen_valid = false;
};
CommonSupportExpectation expected_common_support(const Code& code, long long L);

// Search for L sets whose intersection has size >= ceil(n lambda^L / 2):
// exhaustive within budget, greedy beyond it.
struct IntersectionFamily {
    std::vector<uint32_t> chosen;  // indices into the input family
    IndexSet intersection;
    long long threshold = 0;
};
struct ErdosSearchResult {
    std::optional<IntersectionFamily> found;
    bool heuristic_only = false;  // exhaustive budget exceeded, greedy used
};
ErdosSearchResult erdos_search(const std::vector<IndexSet>& sets, long long L,
                               const Rational& lambda,
                               uint64_t budget = uint64_t(1) << 24);

// q-ary center agreeing with word j on partition part S_j of the common
// support and zero elsewhere; d(x, c_j) <= wt(c_j) - |S_j| per member.
AttackResult thm16_center(const std::vector<Word>& words,
                          const std::vector<IndexSet>& partition);

// Split S into L nonempty parts as evenly as possible (|S| >= L required).
std::vector<IndexSet> even_partition(const IndexSet& S, long long L);

// Extract the largest fixed-distance shell around a center and translate it
// to a constant-weight code. Exhaustive over centers within budget, else
// best of `trials` random centers.
struct SubcodeExtraction {
    Word center;
    Code subcode;              // weight-tagged translate of the shell
    Rational size_guarantee;   // |C| C(n,w) (q-1)^w / q^n, exhaustive mode
    bool exhaustive = false;
};
SubcodeExtraction lemma12_subcode(const Code& code, const Rational& lambda, Rng& rng,
                                  uint64_t center_budget = uint64_t(1) << 24,
                                  uint64_t trials = 4096);

// Biased random code plus pigeonhole expurgation to one weight class.
struct BiasedSampleReport {
    Code code;                   // the expurgated constant-weight subcode
    uint64_t sampled = 0;        // words drawn
    uint64_t class_size = 0;     // multiplicity of the chosen weight class
    uint32_t weight = 0;         // w0
    double lambda_prime = 0.0;   // bias p + 4 e^(-bL)
    double eps = 0.0;            // e^(-bL)
    double rate = 0.0;           // min(eps^2, eps/(6L))
    double weight_cap = 0.0;     // (p + 5 eps) n
    bool weight_within_cap = false;
    bool threshold_relaxed = false;  // L below log2(32/b)/(2b)
    bool side_condition_ok = false;  // 1/2 - lambda' >= (1/2 - p)/2
};
BiasedSampleReport thm18_sample(const Rational& p, long long L, uint32_t n, Rng& rng);

// Restriction of the heavy-on-S subcode to S. Any decodability violation of
// the restriction extends to the original code through a zero-padded center
// because wt(c|S-bar) <= p(1-alpha2)n for every kept codeword (verified).
struct RestrictionResult {
    IndexSet S;
    Code restriction;                      // distinct restricted words
    std::vector<uint32_t> multiplicities;  // aligned with restriction
    uint64_t kept = 0;                     // |C'| before merging duplicates
    bool tail_bound_verified = false;
};
RestrictionResult lemma19_restrict(const Code& code, const Rational& p, Rng& rng);

// Lengths n in [n_lo, n_hi] making every parameter the construction needs
// integral (lambda n always; alpha n, alpha2 n and alpha2 n/2, or beta n
// as applicable).
std::vector<uint32_t> admissible_lengths(const std::string& construction_id,
                                         const Rational& p, const Rational& lambda,
                                         long long L, uint32_t n_lo, uint32_t n_hi);

}  // namespace listlab
