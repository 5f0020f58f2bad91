#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace charp {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// exactfield
struct resource_exceeded : error { using error::error; };
struct unsupported_base : error { using error::error; };
struct zero_divide : error { using error::error; };

// valuation
struct not_prime : error { using error::error; };
struct not_regular : error { using error::error; };
struct not_codim_one : error { using error::error; };
struct value_cap_exceeded : error { using error::error; };

// smoothness
struct not_trivially_valued : error { using error::error; };
struct not_prime_upstairs : error { using error::error; };

// logic
struct syntax_error : error {
    size_t pos;
    syntax_error(const std::string& what, size_t at)
        : error(what + " (at position " + std::to_string(at) + ")"), pos(at) {}
};
struct unknown_constant : error { using error::error; };
struct not_existential : error { using error::error; };
struct not_nnf : error { using error::error; };
struct budget_exceeded : error { using error::error; };

// series
struct not_formally_smooth : error { using error::error; };
struct residue_embedding_invalid : error { using error::error; };
struct precision_too_low : error { using error::error; };
struct unsupported_presentation : error { using error::error; };

// Step budget shared by the symbolic loops.  One unit is roughly one
// reduction step or one ring multiplication; callers may install a local
// budget, and CHARP_BUDGET overrides the default ceiling.
class Budget {
public:
    explicit Budget(uint64_t limit) : limit_(limit) {}
    Budget();  // default limit, or CHARP_BUDGET from the environment

    void tick(uint64_t n = 1) {
        used_ += n;
        if (used_ > limit_) throw resource_exceeded("step budget exhausted");
    }
    uint64_t used() const { return used_; }
    uint64_t limit() const { return limit_; }

private:
    uint64_t used_ = 0;
    uint64_t limit_;
};

// Process-wide budget used when no local one is threaded through.
Budget& global_budget();
void reset_global_budget();

}  // namespace charp
