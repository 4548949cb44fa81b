#pragma once

#include <string>
#include <string_view>

#include <openssl/evp.h>

namespace biofact {

// Incremental SHA-256. Fields are length-prefixed by add_field so that
// ("ab","c") and ("a","bc") hash differently.
class Sha256 {
 public:
  Sha256();
  ~Sha256();
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;

  Sha256& update(std::string_view bytes);
  Sha256& add_field(std::string_view bytes);
  std::string hex_digest();

 private:
  EVP_MD_CTX* ctx_;
  bool finished_ = false;
};

std::string sha256_hex(std::string_view bytes);

}  // namespace biofact
