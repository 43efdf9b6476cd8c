#pragma once

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <string>
#include <string_view>

#include "gct/error.hpp"
#include "gct/polynomial.hpp"

namespace gct {

// Lowercase hex SHA-256 of a byte string.
inline std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 failed");
  }
  std::string hex;
  hex.reserve(2 * len);
  char buf[3];
  for (unsigned i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

// Canonical one-line text of a polynomial; equal polynomials give equal text.
inline std::string canonical_text(const Polynomial& p) {
  std::string s = std::to_string(p.num_vars());
  for (const auto& t : p.terms()) {
    s += ';';
    s += to_string(t.coeff);
    for (auto e : t.monomial.exponents()) {
      s += ',';
      s += std::to_string(e);
    }
  }
  return s;
}

inline std::string digest_of(const Polynomial& p) { return sha256_hex(canonical_text(p)); }

}  // namespace gct
