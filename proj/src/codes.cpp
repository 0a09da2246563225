#include "segrescope/codes.hpp"

namespace segrescope {

namespace {

// q^e with overflow detection.
std::int64_t checked_pow(std::int64_t base, std::int64_t exp, const char* what) {
    std::int64_t out = 1;
    for (std::int64_t i = 0; i < exp; ++i) {
        if (__builtin_mul_overflow(out, base, &out)) {
            throw ResourceError(std::string(what) + " overflows 64-bit integers");
        }
    }
    return out;
}

} // namespace

bool is_prime_power(std::int64_t n) {
    if (n < 2) return false;
    std::int64_t p = 0;
    for (std::int64_t c = 2; c * c <= n; ++c) {
        if (n % c == 0) {
            p = c;
            break;
        }
    }
    if (p == 0) return true; // n itself is prime
    while (n % p == 0) n /= p;
    return n == 1;
}

CodeParams perfect_code_params(std::int64_t q, std::int64_t l, CodeFamily family) {
    if (l < 1) throw DomainError("l must be at least 1");
    if (!is_prime_power(q)) {
        throw DomainError(std::to_string(q) + " is not a prime power");
    }
    if (family == CodeFamily::MultiQubit && q != 2) {
        throw DomainError("the multi-qubit family requires q = 2");
    }

    CodeParams params;
    params.q = q;
    params.l = l;
    params.family = family;
    if (family == CodeFamily::MultiQubit) {
        params.t = checked_pow(2, l, "t = 2^l - 1") - 1;
    } else {
        params.t = (checked_pow(q, l, "q^l") - 1) / (q - 1);
    }
    if (params.t < l) throw DomainError("t is smaller than l");
    params.k = checked_pow(q, params.t - l, "k = q^(t-l)");
    if (l == 1) {
        params.warning = "l = 1 is degenerate (t = 1, a single factor)";
    }
    return params;
}

SecantReport verify_fill(const CodeParams& params, int trials, std::uint64_t seed,
                         double rank_tol) {
    constexpr std::int64_t guard = 4096;
    // q^t with early exit so huge t never overflows here.
    std::int64_t total = 1;
    std::int64_t feasible_t = 0;
    for (std::int64_t i = 0; i < params.t; ++i) {
        total *= params.q;
        if (total > guard) {
            while (checked_pow(params.q, feasible_t + 1, "guard probe") <= guard) {
                ++feasible_t;
            }
            throw ResourceError("ambient size q^t = " + std::to_string(params.q) +
                                "^" + std::to_string(params.t) +
                                " exceeds the guard of " + std::to_string(guard) +
                                "; feasible maximum is t = " +
                                std::to_string(feasible_t));
        }
    }
    std::vector<int> dims(static_cast<std::size_t>(params.t),
                          static_cast<int>(params.q));
    const SystemShape shape = make_shape(std::move(dims));
    return secant_dimension(shape, static_cast<int>(params.k) - 1, trials, seed,
                            rank_tol);
}

} // namespace segrescope
