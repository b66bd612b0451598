#include "sbi/csv.hpp"

#include <openssl/evp.h>

#include <array>
#include <cmath>
#include <cstdio>

namespace sbi::csv {

std::string format(double v) {
  if (v == 0.0) v = 0.0; // fold -0 into +0
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.11e", v);
  return buf.data();
}

std::string format(const std::optional<double>& v) { return v ? format(*v) : std::string(); }

std::string config_digest(std::string_view canonical_config) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_Digest(canonical_config.data(), canonical_config.size(), md.data(), &len, EVP_sha256(), nullptr);
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 0xf]);
  }
  return out;
}

void write_preamble(std::ostream& out, std::string_view digest, std::initializer_list<std::string_view> columns) {
  out << "# config_digest=" << digest << '\n';
  bool first = true;
  for (auto c : columns) {
    if (!first) out << ',';
    out << c;
    first = false;
  }
  out << '\n';
}

void write_row(std::ostream& out, std::initializer_list<std::string> cells) {
  bool first = true;
  for (const auto& c : cells) {
    if (!first) out << ',';
    out << c;
    first = false;
  }
  out << '\n';
}

} // namespace sbi::csv
