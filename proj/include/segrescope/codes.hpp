#pragma once

#include <cstdint>
#include <string>

#include "segrescope/secant.hpp"
#include "segrescope/states.hpp"

namespace segrescope {

// Parameter families for which the (k−1)-secant of the t-fold Segre variety
// of ℙ^{q−1} is predicted to fill its ambient space.
//   MultiQubit: q = 2, t = 2^l − 1
//   General:    t = (q^l − 1)/(q − 1)
// Both families share k = q^{t−l}.
enum class CodeFamily { MultiQubit, General };

struct CodeParams {
    std::int64_t q = 2;
    std::int64_t l = 1;
    std::int64_t t = 1;
    std::int64_t k = 1;
    CodeFamily family = CodeFamily::General;
    std::string warning; // nonempty for the degenerate l = 1 case
};

// True iff n = p^e for a prime p and e ≥ 1 (trial factorization).
bool is_prime_power(std::int64_t n);

// Exact integer arithmetic throughout; overflow raises ResourceError, a
// non-prime-power q raises DomainError. l = 1 is accepted with a warning
// (the family degenerates to a single factor).
CodeParams perfect_code_params(std::int64_t q, std::int64_t l, CodeFamily family);

// Runs secant_dimension on the t-fold shape (q,…,q) at secant index k−1;
// a filled report with expected_dim = ambient_dim confirms the prediction.
// Guarded to q^t ≤ 4096; the error names the largest feasible t.
SecantReport verify_fill(const CodeParams& params, int trials = 3,
                         std::uint64_t seed = 0, double rank_tol = 1e-8);

} // namespace segrescope
