#include "specbm/params.hpp"

#include <string>

#include "specbm/errors.hpp"

namespace specbm {

namespace {

void validate_rates(std::int64_t n_ref, double a, double b) {
    if (n_ref < 1) throw ConfigError("block model: vertex count must be positive");
    if (!(a > b) || !(b > 0.0))
        throw ConfigError("block model: rates must satisfy a > b > 0 (got a=" + std::to_string(a) +
                          ", b=" + std::to_string(b) + ")");
    if (a > static_cast<double>(n_ref))
        throw ConfigError("block model: a/n exceeds 1 (a=" + std::to_string(a) +
                          ", n=" + std::to_string(n_ref) + ")");
}

}  // namespace

SbmParams SbmParams::two_block(std::int64_t n, double a, double b) {
    validate_rates(n, a, b);
    SbmParams p;
    p.n_ref = n;
    p.k = 2;
    p.block_size = n;
    p.a = a;
    p.b = b;
    return p;
}

SbmParams SbmParams::k_block(std::int64_t n, int k, double a, double b) {
    validate_rates(n, a, b);
    if (k < 2) throw ConfigError("block model: k must be at least 2");
    if (n % k != 0)
        throw ConfigError("block model: k must divide the vertex count (n=" + std::to_string(n) +
                          ", k=" + std::to_string(k) + ")");
    SbmParams p;
    p.n_ref = n;
    p.k = k;
    p.block_size = n / k;
    p.a = a;
    p.b = b;
    return p;
}

}  // namespace specbm
