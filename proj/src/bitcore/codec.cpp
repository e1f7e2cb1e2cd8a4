#include "ait/codec.hpp"

namespace ait {

BitString dbl_encode(const BitString& x) {
  BitString out;
  out.reserve(2 * x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    out.push_back(x[i]);
    out.push_back(x[i]);
  }
  return out;
}

BitString bin(std::uint64_t n) {
  if (n == 0) return BitString{0};
  BitString out;
  int top = 63;
  while (((n >> top) & 1) == 0) --top;
  for (int i = top; i >= 0; --i) out.push_back(((n >> i) & 1) != 0);
  return out;
}

BitString selfdelim_number(std::uint64_t n) {
  return dbl_encode(bin(n)) + BitString{0, 1};
}

BitString pair_encode(const BitString& x, const BitString& y) {
  BitString out = selfdelim_number(x.size());
  out.reserve(out.size() + x.size() + y.size());
  out.append(x);
  out.append(y);
  return out;
}

std::pair<BitString, BitString> pair_decode(const BitString& d) {
  std::size_t pos = 0;
  BitString length_bits;
  for (;;) {
    if (pos + 2 > d.size()) throw MalformedPair("no delimiter");
    bool a = d[pos];
    bool b = d[pos + 1];
    pos += 2;
    if (a == b) {
      length_bits.push_back(a);
      continue;
    }
    if (!a && b) break;
    throw MalformedPair("unequal bit pair in length field");
  }
  if (length_bits.empty()) throw MalformedPair("empty length field");
  if (length_bits.size() > 1 && !length_bits[0]) throw MalformedPair("length field has leading zeros");
  if (length_bits.size() > 63) throw MalformedPair("length field too large");
  std::uint64_t n = 0;
  for (std::size_t i = 0; i < length_bits.size(); ++i) n = (n << 1) | (length_bits[i] ? 1 : 0);
  if (n > d.size() - pos) throw MalformedPair("length field exceeds remaining bits");
  return {d.substr(pos, n), d.substr(pos + n)};
}

}  // namespace ait
