#ifndef SHUTTLE_RNG_HPP
#define SHUTTLE_RNG_HPP

#include <array>
#include <cstdint>

namespace shuttle::rng {

/// Philox4x32-10 keyed block function (the counter-based generator of
/// Salmon et al.; same constants as the Random123 reference).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Deterministic random stream addressed by (seed, stream). Streams with
/// distinct ids are statistically independent, so ensemble members can be
/// evaluated in any order or in parallel with bit-identical results.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream)
      : seed_(seed), stream_(stream) {}

  std::uint64_t next_u64();
  double uniform01();    // [0, 1)
  double uniform_pos();  // (0, 1], safe under log()
  double normal();       // standard normal, Box-Muller
  double erlang3();      // sum of three unit exponentials

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_index_ = 0;
  std::array<std::uint64_t, 2> cache_{};
  int cached_ = 0;
  bool have_normal_ = false;
  double spare_normal_ = 0.0;
};

}  // namespace shuttle::rng

#endif
