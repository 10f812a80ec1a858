#include "qss/hash.hpp"

#include <openssl/evp.h>

#include <stdexcept>

namespace qss {

Digest sha256(const std::string& data) {
    Digest out{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 ||
        len != out.size())
        throw std::runtime_error("SHA-256 computation failed");
    return out;
}

std::string to_hex(const Digest& digest) {
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(64);
    for (std::uint8_t b : digest) {
        out.push_back(hex[b >> 4]);
        out.push_back(hex[b & 0xf]);
    }
    return out;
}

static Digest commit(const char* tag, Fp value) {
    return sha256(std::string(tag) + ":" + std::to_string(value.value()) + ":" +
                  std::to_string(value.modulus().d()));
}

Digest commit_shared_value(Fp value) { return commit("QSS-H1", value); }
Digest commit_secret(Fp value) { return commit("QSS-H2", value); }

}  // namespace qss
