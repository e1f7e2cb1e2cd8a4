#include "ait/kraft.hpp"

#include <algorithm>
#include <string>

namespace ait::kraft {

AllocatorState::AllocatorState() : free_{BitString{}} {}

Overflow::Overflow(std::size_t index)
    : std::runtime_error("kraft overflow at request " + std::to_string(index)), index_(index) {}

BitString AllocatorState::allocate(std::uint32_t n) {
  // Best fit: the smallest free segment that still holds 2^-n.
  auto it = free_.end();
  for (auto f = free_.begin(); f != free_.end(); ++f) {
    if (f->size() <= n && (it == free_.end() || f->size() > it->size())) it = f;
  }
  if (it == free_.end()) throw Overflow(0);
  BitString u = std::move(*it);
  free_.erase(it);
  const std::size_t extra = n - u.size();
  for (std::size_t k = extra; k-- > 0;) {
    BitString piece = u + BitString::repeat(false, k);
    piece.push_back(true);
    free_.push_back(std::move(piece));
  }
  u.append(BitString::repeat(false, extra));
  std::sort(free_.begin(), free_.end(), canonical_less);
  allocated_.push_back(u);
  return u;
}

DyadicRational AllocatorState::free_measure() const {
  DyadicRational total;
  for (const auto& f : free_) total += DyadicRational::pow2_neg(f.size());
  return total;
}

DyadicRational AllocatorState::allocated_measure() const {
  DyadicRational total;
  for (const auto& a : allocated_) total += DyadicRational::pow2_neg(a.size());
  return total;
}

KraftResult kraft_code(const std::vector<std::uint32_t>& requests) {
  KraftResult result;
  AllocatorState state;
  for (std::size_t i = 0; i < requests.size(); ++i) {
    try {
      result.codewords.push_back(state.allocate(requests[i]));
    } catch (const Overflow&) {
      result.overflow = i;
      break;
    }
  }
  return result;
}

}  // namespace ait::kraft
