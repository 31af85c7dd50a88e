#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

#include "grasec/field.hpp"

namespace grasec {

/// splitmix64 finalizer.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30U)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27U)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31U);
}

/// Order-sensitive hash of a sequence of words; used to derive per-trial
/// sub-seeds so results do not depend on scheduling.
inline std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = 0x6a09e667f3bcc909ULL;
  for (std::uint64_t p : parts) h = mix64(h ^ mix64(p));
  return h;
}

/// Uniform sampler of field elements. mt19937_64 output is fixed by the
/// standard; reduction is done here rather than through a distribution so
/// the stream is identical across standard libraries.
class FieldSampler {
 public:
  FieldSampler(const PrimeField& field, std::uint64_t seed) : field_(field), engine_(seed) {}

  const PrimeField& field() const { return field_; }

  FieldElement uniform() { return field_.from_bits(engine_()); }

  FieldElement nonzero() {
    for (;;) {
      const FieldElement x = uniform();
      if (!x.is_zero()) return x;
    }
  }

  std::vector<FieldElement> vector(std::size_t n) {
    std::vector<FieldElement> v(n);
    for (auto& x : v) x = uniform();
    return v;
  }

  std::uint64_t bits() { return engine_(); }

 private:
  PrimeField field_;
  std::mt19937_64 engine_;
};

}  // namespace grasec
