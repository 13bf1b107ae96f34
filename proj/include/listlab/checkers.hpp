#pragma once

#include <optional>
#include <string>
#include <variant>

#include "listlab/hamming.hpp"
#include "listlab/rational.hpp"

namespace listlab {

enum class CheckMode { max_radius, avg_radius, erasure };

const char* to_string(CheckMode mode);

// One decodability question about one code. p is exact; the error radius
// e = floor(p n) and the erasure support size s = ceil((1-p) n) are the
// only derived integers.
struct DecodabilityQuery {
    Code code;
    Rational p;
    long long L = 2;
    CheckMode mode = CheckMode::max_radius;

    DecodabilityQuery(Code c, Rational p_, long long L_, CheckMode m);
    uint32_t radius() const;        // floor(p n)
    uint32_t support_size() const;  // ceil((1-p) n)
};

// A verified violation: a center together with L codewords and the
// statistic that breaks the mode's threshold. Re-verification recomputes
// the statistic from scratch.
struct Witness {
    std::variant<Word, ErasedWord> center;
    std::vector<Word> list;
    CheckMode mode = CheckMode::max_radius;
    uint64_t stat = 0;  // max distance | distance sum | agreeing-codeword count

    bool reverify(const DecodabilityQuery& query) const;
};

struct CheckResult {
    bool decodable = false;
    std::optional<Witness> witness;  // present iff not decodable
    std::string strategy;
};

struct CheckBudgets {
    uint64_t center_enum = uint64_t(1) << 24;   // cap on q^n
    uint64_t subset_enum = uint64_t(1) << 24;   // cap on C(|C|, L)
    uint64_t erasure_enum = uint64_t(1) << 26;  // cap on C(n, s) * |C|
    uint64_t center_search = uint64_t(1) << 24; // node cap per optimal-center call
    uint32_t workers = 0;
};

// Center minimizing the maximum distance to the list, found by exact
// branch-and-bound over the per-coordinate symbols appearing in the list
// (switching any coordinate to an appearing symbol weakly decreases every
// distance, so the restricted search is exact).
std::pair<Word, uint32_t> optimal_max_center(const ListTuple& list,
                                             uint64_t node_budget = uint64_t(1) << 24);

// Centroid and its exact distance sum (the global minimum).
std::pair<Word, uint64_t> optimal_avg_center(const ListTuple& list);

// Exact verdicts by each enumeration strategy.
CheckResult check_by_centers(const DecodabilityQuery& q, const CheckBudgets& budgets = {});
CheckResult check_by_subsets(const DecodabilityQuery& q, const CheckBudgets& budgets = {});

// Exact verdict; runs both strategies when both fit their budgets and
// cross-checks them, otherwise whichever fits. ResourceError when neither
// does. Modes: max_radius, avg_radius.
CheckResult check_list_decodable(const DecodabilityQuery& q, const CheckBudgets& budgets = {});

// Exact erasure verdict: every support of size s has all agreement classes
// smaller than L.
CheckResult check_erasure_list_decodable(const DecodabilityQuery& q,
                                         const CheckBudgets& budgets = {});

// Randomized witness search for instances beyond exact budgets. A returned
// witness always re-verifies; absence of one certifies nothing.
std::optional<Witness> find_violation(const DecodabilityQuery& q, uint64_t seed,
                                      uint64_t trials);

// Witness text form: center line, one codeword line per member, stat line.
std::string witness_to_string(const Witness& w);

}  // namespace listlab
