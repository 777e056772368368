#include "ilcount/common.hpp"

namespace ilc {

void encode_u32(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>((v >> 24) & 0xff));
  out.push_back(static_cast<char>((v >> 16) & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
  out.push_back(static_cast<char>(v & 0xff));
}

void encode_int(std::string& out, const BigInt& v) {
  const int s = sgn(v);
  out.push_back(static_cast<char>(s < 0 ? 0 : (s == 0 ? 1 : 2)));
  if (s == 0) {
    encode_u32(out, 0);
    return;
  }
  std::string mag((mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8, '\0');
  std::size_t count = 0;
  mpz_export(mag.data(), &count, 1, 1, 1, 0, v.get_mpz_t());
  mag.resize(count);
  encode_u32(out, static_cast<std::uint32_t>(count));
  out += mag;
}

}  // namespace ilc
