#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "qss/field.hpp"

namespace qss {

using Digest = std::array<std::uint8_t, 32>;

Digest sha256(const std::string& data);
std::string to_hex(const Digest& digest);

// Commitments are SHA-256 over "QSS-H1:<value>:<d>" (shared value) and
// "QSS-H2:<value>:<d>" (secret), decimal ASCII. The domain tags keep the two
// roles from colliding; including d makes digests portable across scenarios.
Digest commit_shared_value(Fp value);
Digest commit_secret(Fp value);

/// H1 commits the shared classical value S_i, H2 the secret s.
struct HashCommitment {
    Digest h1, h2;
};

}  // namespace qss
