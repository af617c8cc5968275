#pragma once

#include <cstdint>

namespace folio {

// Counter-based 64-bit generator (splitmix64 finalizer over key + counter).
// Streams derived from (seed, stream) are independent of evaluation order,
// so parallel consumers reproduce the serial results bit-exactly.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next_u64();
    // Uniform in [0, n); n > 0. Modulo reduction (bias < 2^-32 for n < 2^32).
    std::uint64_t next_below(std::uint64_t n);
    // Uniform in [0, 1).
    double next_double();
    // Standard normal (Box-Muller).
    double next_normal();

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace folio
